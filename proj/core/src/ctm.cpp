#include "softspace/ctm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "softspace/errors.hpp"
#include "softspace/output.hpp"

namespace softspace {

CtmBuilder::CtmBuilder(const MachineSpace& space, uint64_t budget)
    : table_{space, budget, {}, 0, 0} {}

void CtmBuilder::feed(const RunRecord& record) {
    ++table_.total_machines;
    if (!record.halted) {
        return;
    }
    ++table_.halting_total;
    ++table_.counts[record.output.key()];
}

CtmTable CtmBuilder::take() {
    return std::move(table_);
}

CtmTable build_table(const MachineSpace& space, uint64_t budget,
                     const std::vector<RunRecord>& records) {
    CtmBuilder builder(space, budget);
    for (const RunRecord& rec : records) {
        if (rec.halted && rec.output.dim != space.dimension()) {
            throw ConsistencyError("record output dimension does not match the table space");
        }
        builder.feed(rec);
    }
    return builder.take();
}

TableRunResult run_space_table(const MachineSpace& space, IndexRange range, uint64_t budget,
                               const RunOptions& options) {
    CtmBuilder builder(space, budget);
    SpaceRunSummary summary = run_space(space, range, budget, options,
                                        [&](const RunRecord& rec) { builder.feed(rec); });
    return TableRunResult{builder.take(), std::move(summary)};
}

CtmTable merge_tables(const CtmTable& a, const CtmTable& b) {
    if (!(a.space == b.space) || a.budget != b.budget) {
        throw ConsistencyError("cannot merge tables with different spaces or budgets");
    }
    CtmTable out = a;
    out.halting_total += b.halting_total;
    out.total_machines += b.total_machines;
    for (const auto& [key, count] : b.counts) {
        out.counts[key] += count;
    }
    return out;
}

double ap_estimate(const std::string& key, const CtmTable& table) {
    auto it = table.counts.find(key);
    if (it == table.counts.end()) {
        throw NotInSupportError("'" + key + "' is not in the table support at this space/budget");
    }
    return static_cast<double>(it->second) / static_cast<double>(table.halting_total);
}

double ctm_value(const std::string& key, const CtmTable& table) {
    return -std::log2(ap_estimate(key, table));
}

std::vector<std::pair<std::string, uint64_t>> sorted_counts(const CtmTable& table) {
    std::vector<std::pair<std::string, uint64_t>> rows(table.counts.begin(), table.counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return a.second > b.second;
        }
        return a.first < b.first;
    });
    return rows;
}

void save_table(const CtmTable& table, std::ostream& out) {
    out << "#ctm v1 dim=" << (table.space.dimension() == Dimension::OneD ? 1 : 2)
        << " states=" << table.space.states() << " symbols=" << table.space.symbols()
        << " budget=" << table.budget << " total=" << table.total_machines
        << " halting=" << table.halting_total << "\n";
    for (const auto& [key, count] : sorted_counts(table)) {
        out << key << "," << count << "\n";
    }
}

void save_table(const CtmTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    save_table(table, out);
    out.flush();
    if (!out) {
        throw IoError("failed writing table to '" + path.string() + "'");
    }
}

namespace {

uint64_t parse_header_field(const std::string& header, const std::string& name,
                            size_t line_number) {
    const std::string tag = " " + name + "=";
    const size_t pos = header.find(tag);
    if (pos == std::string::npos) {
        throw ParseError("missing '" + name + "' in table header", line_number);
    }
    const size_t begin = pos + tag.size();
    size_t end = header.find(' ', begin);
    if (end == std::string::npos) {
        end = header.size();
    }
    try {
        return std::stoull(header.substr(begin, end - begin));
    } catch (const std::exception&) {
        throw ParseError("bad '" + name + "' value in table header", line_number);
    }
}

} // namespace

CtmTable load_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty table file", 1);
    }
    if (line.rfind("#ctm v1 ", 0) != 0) {
        throw ParseError("table header must start with '#ctm v1'", 1);
    }
    const uint64_t dim = parse_header_field(line, "dim", 1);
    if (dim != 1 && dim != 2) {
        throw ParseError("dim must be 1 or 2", 1);
    }
    const uint64_t states = parse_header_field(line, "states", 1);
    const uint64_t symbols = parse_header_field(line, "symbols", 1);
    CtmTable table{
        MachineSpace(static_cast<uint32_t>(states), static_cast<uint32_t>(symbols),
                     dim == 1 ? Dimension::OneD : Dimension::TwoD),
        parse_header_field(line, "budget", 1),
        {},
        parse_header_field(line, "halting", 1),
        parse_header_field(line, "total", 1),
    };

    uint64_t sum = 0;
    size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) {
            continue;
        }
        const size_t comma = line.rfind(',');
        if (comma == std::string::npos || comma == 0 || comma + 1 == line.size()) {
            throw ParseError("expected '<output>,<count>'", line_number);
        }
        const std::string key = line.substr(0, comma);
        uint64_t count = 0;
        try {
            count = std::stoull(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw ParseError("bad count", line_number);
        }
        if (count == 0) {
            throw ParseError("counts must be positive", line_number);
        }
        try {
            parse_output_key(key, table.space.dimension(), table.space.symbols());
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), line_number);
        }
        if (!table.counts.emplace(key, count).second) {
            throw ParseError("duplicate key '" + key + "'", line_number);
        }
        sum += count;
    }
    if (sum != table.halting_total) {
        throw ParseError("counts sum to " + std::to_string(sum) + " but header says halting=" +
                             std::to_string(table.halting_total),
                         line_number);
    }
    if (table.halting_total > table.total_machines) {
        throw ParseError("halting exceeds total in header", 1);
    }
    return table;
}

CtmTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open table file '" + path.string() + "'");
    }
    return load_table(in);
}

} // namespace softspace
