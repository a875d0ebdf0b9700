#include "softspace/bdm.hpp"

#include <algorithm>
#include <cmath>

#include "softspace/errors.hpp"

namespace softspace {

namespace {

std::string block_key_2d(uint32_t d, const std::string& cells) {
    return std::to_string(d) + "x" + std::to_string(d) + ":" + cells;
}

// Accumulates (block, multiplicity) pairs in first-seen order.
class PairCollector {
public:
    void add(const std::string& key) {
        auto [it, inserted] = index_.emplace(key, pairs_.size());
        if (inserted) {
            pairs_.emplace_back(key, 1);
        } else {
            ++pairs_[it->second].second;
        }
    }

    std::vector<std::pair<std::string, uint64_t>> take() { return std::move(pairs_); }

private:
    std::unordered_map<std::string, size_t> index_;
    std::vector<std::pair<std::string, uint64_t>> pairs_;
};

} // namespace

BaseTable::BaseTable(Dimension dim, std::unordered_map<std::string, double> values)
    : dim_(dim), values_(std::move(values)) {}

BaseTable BaseTable::from_ctm(const CtmTable& table) {
    std::unordered_map<std::string, double> values;
    values.reserve(table.counts.size());
    for (const auto& [key, count] : table.counts) {
        values.emplace(key, ctm_value(key, table));
    }
    return BaseTable(table.space.dimension(), std::move(values));
}

BaseTable BaseTable::from_file(const std::filesystem::path& path) {
    return from_ctm(load_table(path));
}

std::optional<double> BaseTable::lookup(const std::string& block_key) const {
    auto it = values_.find(block_key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

uint64_t BlockDecomposition::block_cells_total() const {
    uint64_t cells_per_block = block_size;
    // 2D keys carry the "dxd:" prefix; detect via the pair key form.
    if (!pairs.empty() && pairs.front().first.find(':') != std::string::npos) {
        cells_per_block = static_cast<uint64_t>(block_size) * block_size;
    }
    uint64_t total = 0;
    for (const auto& [key, mult] : pairs) {
        total += cells_per_block * mult;
    }
    return total;
}

BlockDecomposition decompose_string(const std::string& input, uint32_t d, Boundary boundary,
                                    uint8_t pad_symbol) {
    if (d < 1) {
        throw RangeError("block size must be at least 1");
    }
    if (input.empty()) {
        throw RangeError("input must be nonempty");
    }
    BlockDecomposition out;
    out.block_size = d;
    out.boundary = boundary;
    out.pad_symbol = pad_symbol;

    std::string padded;
    const std::string* source = &input;
    size_t usable = input.size();
    if (input.size() % d != 0) {
        const size_t remainder = input.size() % d;
        switch (boundary) {
            case Boundary::Exact:
                throw DimensionError("input length " + std::to_string(input.size()) +
                                     " is not divisible by block size " + std::to_string(d) +
                                     " (remainder " + std::to_string(remainder) + ")");
            case Boundary::Ignore:
                usable = input.size() - remainder;
                out.leftover_cells = remainder;
                break;
            case Boundary::Pad:
                padded = input;
                padded.append(d - remainder, static_cast<char>('0' + pad_symbol));
                source = &padded;
                usable = padded.size();
                out.leftover_cells = d - remainder;
                break;
        }
    }
    PairCollector collector;
    for (size_t off = 0; off + d <= usable; off += d) {
        collector.add(source->substr(off, d));
    }
    out.pairs = collector.take();
    return out;
}

BlockDecomposition decompose_grid(const Grid& input, uint32_t d, Boundary boundary,
                                  uint8_t pad_symbol) {
    if (d < 1) {
        throw RangeError("block size must be at least 1");
    }
    if (input.cell_count() == 0) {
        throw RangeError("input must be nonempty");
    }
    BlockDecomposition out;
    out.block_size = d;
    out.boundary = boundary;
    out.pad_symbol = pad_symbol;

    const uint32_t row_rem = input.rows % d;
    const uint32_t col_rem = input.cols % d;
    Grid padded;
    const Grid* source = &input;
    uint32_t rows = input.rows;
    uint32_t cols = input.cols;
    if (row_rem != 0 || col_rem != 0) {
        switch (boundary) {
            case Boundary::Exact:
                throw DimensionError(
                    "grid " + std::to_string(input.rows) + "x" + std::to_string(input.cols) +
                    " is not divisible by block size " + std::to_string(d) + " (remainders " +
                    std::to_string(row_rem) + "x" + std::to_string(col_rem) + ")");
            case Boundary::Ignore:
                rows = input.rows - row_rem;
                cols = input.cols - col_rem;
                out.leftover_cells =
                    input.cell_count() - static_cast<uint64_t>(rows) * cols;
                break;
            case Boundary::Pad: {
                rows = input.rows + (row_rem ? d - row_rem : 0);
                cols = input.cols + (col_rem ? d - col_rem : 0);
                padded = Grid(rows, cols, pad_symbol);
                for (uint32_t r = 0; r < input.rows; ++r) {
                    for (uint32_t c = 0; c < input.cols; ++c) {
                        padded.set(r, c, input.at(r, c));
                    }
                }
                source = &padded;
                out.leftover_cells =
                    static_cast<uint64_t>(rows) * cols - input.cell_count();
                break;
            }
        }
    }
    PairCollector collector;
    std::string cells(static_cast<size_t>(d) * d, '0');
    for (uint32_t br = 0; br + d <= rows; br += d) {
        for (uint32_t bc = 0; bc + d <= cols; bc += d) {
            size_t k = 0;
            for (uint32_t r = br; r < br + d; ++r) {
                for (uint32_t c = bc; c < bc + d; ++c) {
                    cells[k++] = static_cast<char>('0' + source->at(r, c));
                }
            }
            collector.add(block_key_2d(d, cells));
        }
    }
    out.pairs = collector.take();
    return out;
}

double bdm_value(const BlockDecomposition& decomposition, const BaseTable& table) {
    double sum = 0.0;
    std::vector<std::string> missing;
    for (const auto& [key, mult] : decomposition.pairs) {
        const std::optional<double> k = table.lookup(key);
        if (!k) {
            missing.push_back(key);
            continue;
        }
        sum += std::log2(static_cast<double>(mult)) + *k;
    }
    if (!missing.empty()) {
        std::string what = "blocks missing from the base table:";
        for (const std::string& key : missing) {
            what += " '" + key + "'";
        }
        throw MissingBlockError(what, std::move(missing));
    }
    return sum;
}

double bdm_value(const Grid& input, const BaseTable& table, uint32_t d, Boundary boundary,
                 uint8_t pad_symbol) {
    return bdm_value(decompose_grid(input, d, boundary, pad_symbol), table);
}

double bdm_string(const std::string& input, const BaseTable& table, uint32_t d,
                  Boundary boundary, uint8_t pad_symbol) {
    return bdm_value(decompose_string(input, d, boundary, pad_symbol), table);
}

namespace {

double entropy_of_counts(const std::unordered_map<std::string, uint64_t>& counts,
                         uint64_t total) {
    double h = 0.0;
    for (const auto& [block, count] : counts) {
        const double p = static_cast<double>(count) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

} // namespace

double shannon_block_entropy(const std::string& input, uint32_t block_size) {
    if (block_size < 1 || input.size() < block_size) {
        throw RangeError("block size must be in [1, input length]");
    }
    std::unordered_map<std::string, uint64_t> counts;
    uint64_t total = 0;
    for (size_t off = 0; off + block_size <= input.size(); off += block_size) {
        ++counts[input.substr(off, block_size)];
        ++total;
    }
    return entropy_of_counts(counts, total);
}

double shannon_block_entropy(const Grid& input, uint32_t block_size) {
    if (block_size < 1 || input.rows < block_size || input.cols < block_size) {
        throw RangeError("block size must fit inside the grid");
    }
    const BlockDecomposition dec = decompose_grid(input, block_size, Boundary::Ignore);
    std::unordered_map<std::string, uint64_t> counts;
    uint64_t total = 0;
    for (const auto& [key, mult] : dec.pairs) {
        counts[key] += mult;
        total += mult;
    }
    return entropy_of_counts(counts, total);
}

namespace {

double mid_rank(double value, const std::vector<double>& values) {
    uint64_t less = 0;
    uint64_t equal = 0;
    for (double v : values) {
        if (v < value) {
            ++less;
        } else if (v == value) {
            ++equal;
        }
    }
    return (static_cast<double>(less) + 0.5 * static_cast<double>(equal)) /
           static_cast<double>(values.size());
}

} // namespace

BaseTable derive_binary_base(const BaseTable& fine, uint32_t d, uint32_t fine_d) {
    if (fine.dimension() != Dimension::TwoD) {
        throw ConsistencyError("base derivation is defined for 2D tables");
    }
    if (fine_d < 1 || d % fine_d != 0) {
        throw DimensionError("fine block size must divide the derived block size");
    }
    const uint32_t cells = d * d;
    if (cells > 24) {
        throw RangeError("derived block size too large to materialize");
    }
    std::unordered_map<std::string, double> values;
    values.reserve(1ULL << cells);
    const std::string prefix = std::to_string(d) + "x" + std::to_string(d) + ":";
    Grid block(d, d);
    for (uint64_t bits = 0; bits < (1ULL << cells); ++bits) {
        std::string key = prefix;
        for (uint32_t i = 0; i < cells; ++i) {
            const uint8_t v = (bits >> i) & 1;
            block.cells[i] = v;
            key.push_back(static_cast<char>('0' + v));
        }
        values.emplace(std::move(key), bdm_value(block, fine, fine_d));
    }
    return BaseTable(Dimension::TwoD, std::move(values));
}

EntropyBdmReport compare_entropy_vs_bdm(const std::string& input, const BaseTable& table,
                                        uint32_t d, Boundary boundary,
                                        std::span<const std::string> population) {
    EntropyBdmReport report;
    report.entropy = shannon_block_entropy(input, 1);
    report.bdm = bdm_string(input, table, d, boundary);

    std::vector<std::string> defaulted;
    if (population.empty()) {
        for (const auto& [key, value] : table.values()) {
            if (key.size() == input.size()) {
                defaulted.push_back(key);
            }
        }
        std::sort(defaulted.begin(), defaulted.end());
        population = defaulted;
    }
    if (population.empty()) {
        throw NotInSupportError("no population of length " + std::to_string(input.size()) +
                                " to rank against");
    }
    std::vector<double> entropies;
    std::vector<double> bdms;
    entropies.reserve(population.size());
    bdms.reserve(population.size());
    for (const std::string& member : population) {
        entropies.push_back(shannon_block_entropy(member, 1));
        bdms.push_back(bdm_string(member, table, d, boundary));
    }
    report.population = population.size();
    report.entropy_rank = mid_rank(report.entropy, entropies);
    report.bdm_rank = mid_rank(report.bdm, bdms);
    report.rank_disagreement = std::abs(report.entropy_rank - report.bdm_rank) >= 0.5;
    return report;
}

} // namespace softspace
