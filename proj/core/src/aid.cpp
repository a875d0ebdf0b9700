#include "softspace/aid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "softspace/errors.hpp"

namespace softspace {

void validate_target(const PerturbationTarget& target) {
    const Grid& g = target.object;
    if (g.cell_count() == 0) {
        throw ValidationError("perturbation target must be nonempty");
    }
    for (uint8_t v : g.cells) {
        if (v > 1) {
            throw ValidationError("perturbation targets must be binary");
        }
    }
    if (target.kind == TargetKind::Graph) {
        if (g.rows != g.cols) {
            throw ValidationError("adjacency matrix must be square");
        }
        for (uint32_t i = 0; i < g.rows; ++i) {
            if (g.at(i, i) != 0) {
                throw ValidationError("adjacency matrix must have a zero diagonal");
            }
        }
        if (target.undirected) {
            for (uint32_t i = 0; i < g.rows; ++i) {
                for (uint32_t j = i + 1; j < g.cols; ++j) {
                    if (g.at(i, j) != g.at(j, i)) {
                        throw ValidationError("undirected adjacency matrix must be symmetric");
                    }
                }
            }
        }
    }
}

Grid perturb_flip(const Grid& grid, uint32_t row, uint32_t col) {
    if (row >= grid.rows || col >= grid.cols) {
        throw RangeError("flip position (" + std::to_string(row) + "," + std::to_string(col) +
                         ") out of bounds");
    }
    Grid out = grid;
    out.set(row, col, out.at(row, col) ? 0 : 1);
    return out;
}

Grid perturb_edge_delete(const Grid& adjacency, uint32_t u, uint32_t v, bool undirected) {
    if (u >= adjacency.rows || v >= adjacency.cols) {
        throw RangeError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") out of bounds");
    }
    if (adjacency.at(u, v) == 0) {
        throw RangeError("no such edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    Grid out = adjacency;
    out.set(u, v, 0);
    if (undirected) {
        out.set(v, u, 0);
    }
    return out;
}

Grid perturb_edge_add(const Grid& adjacency, uint32_t u, uint32_t v, bool undirected) {
    if (u >= adjacency.rows || v >= adjacency.cols) {
        throw RangeError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") out of bounds");
    }
    if (adjacency.at(u, v) != 0) {
        throw RangeError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") already present");
    }
    Grid out = adjacency;
    out.set(u, v, 1);
    if (undirected) {
        out.set(v, u, 1);
    }
    return out;
}

AidEstimator::AidEstimator(const Grid& grid, const BdmContext& ctx) : grid_(grid), ctx_(ctx) {
    const BlockDecomposition dec =
        decompose_grid(grid, ctx.d, ctx.boundary, ctx.pad_symbol);
    for (const auto& [key, mult] : dec.pairs) {
        multiset_.emplace(key, mult);
    }
    base_value_ = bdm_value(dec, *ctx.table);
    switch (ctx.boundary) {
        case Boundary::Exact:
        case Boundary::Ignore:
            usable_rows_ = grid.rows - grid.rows % ctx.d;
            usable_cols_ = grid.cols - grid.cols % ctx.d;
            break;
        case Boundary::Pad:
            usable_rows_ = grid.rows + (grid.rows % ctx.d ? ctx.d - grid.rows % ctx.d : 0);
            usable_cols_ = grid.cols + (grid.cols % ctx.d ? ctx.d - grid.cols % ctx.d : 0);
            break;
    }
    block_rows_ = usable_rows_ / ctx.d;
    block_cols_ = usable_cols_ / ctx.d;
}

std::optional<size_t> AidEstimator::block_of(uint32_t row, uint32_t col) const {
    if (row >= usable_rows_ || col >= usable_cols_) {
        return std::nullopt;  // ignored margin
    }
    return static_cast<size_t>(row / ctx_.d) * block_cols_ + col / ctx_.d;
}

std::string AidEstimator::block_key(uint32_t block_row, uint32_t block_col,
                                    std::span<const std::pair<uint32_t, uint32_t>> flips) const {
    const uint32_t d = ctx_.d;
    std::string cells(static_cast<size_t>(d) * d, '0');
    size_t k = 0;
    for (uint32_t r = block_row * d; r < (block_row + 1) * d; ++r) {
        for (uint32_t c = block_col * d; c < (block_col + 1) * d; ++c) {
            uint8_t v = (r < grid_.rows && c < grid_.cols) ? grid_.at(r, c) : ctx_.pad_symbol;
            for (const auto& [fr, fc] : flips) {
                if (fr == r && fc == c) {
                    v = v ? 0 : 1;
                }
            }
            cells[k++] = static_cast<char>('0' + v);
        }
    }
    return std::to_string(d) + "x" + std::to_string(d) + ":" + cells;
}

double AidEstimator::delta_cells(std::span<const std::pair<uint32_t, uint32_t>> cells) const {
    for (const auto& [r, c] : cells) {
        if (r >= grid_.rows || c >= grid_.cols) {
            throw RangeError("perturbed cell (" + std::to_string(r) + "," + std::to_string(c) +
                             ") out of bounds");
        }
    }
    // Group the flips by affected block; cells in the ignored margin
    // change no block and contribute nothing.
    std::vector<std::pair<uint32_t, uint32_t>> blocks;  // (block_row, block_col)
    for (const auto& [r, c] : cells) {
        if (!block_of(r, c)) {
            continue;
        }
        const auto br = std::pair<uint32_t, uint32_t>{r / ctx_.d, c / ctx_.d};
        if (std::find(blocks.begin(), blocks.end(), br) == blocks.end()) {
            blocks.push_back(br);
        }
    }
    if (blocks.empty()) {
        return 0.0;
    }

    // Multiplicity adjustments over the affected keys only.
    std::unordered_map<std::string, int64_t> adjust;
    for (const auto& [br, bc] : blocks) {
        --adjust[block_key(br, bc, {})];
        ++adjust[block_key(br, bc, cells)];
    }

    auto contribution = [&](const std::string& key, uint64_t mult) -> double {
        if (mult == 0) {
            return 0.0;
        }
        const std::optional<double> k = ctx_.table->lookup(key);
        if (!k) {
            throw MissingBlockError("block missing from the base table: '" + key + "'", {key});
        }
        return std::log2(static_cast<double>(mult)) + *k;
    };

    double before = 0.0;
    double after = 0.0;
    for (const auto& [key, diff] : adjust) {
        auto it = multiset_.find(key);
        const uint64_t old_mult = it == multiset_.end() ? 0 : it->second;
        const int64_t new_mult = static_cast<int64_t>(old_mult) + diff;
        if (diff == 0) {
            continue;
        }
        before += contribution(key, old_mult);
        after += contribution(key, static_cast<uint64_t>(new_mult));
    }
    return before - after;
}

double AidEstimator::delta_flip(uint32_t row, uint32_t col) const {
    const std::pair<uint32_t, uint32_t> cell{row, col};
    return delta_cells({&cell, 1});
}

double aid_delta_flip(const Grid& grid, uint32_t row, uint32_t col, const BdmContext& ctx) {
    return AidEstimator(grid, ctx).delta_flip(row, col);
}

double aid_delta_edge(const Grid& adjacency, uint32_t u, uint32_t v, bool undirected,
                      const BdmContext& ctx) {
    if (adjacency.at(u, v) == 0) {
        throw RangeError("no such edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    std::vector<std::pair<uint32_t, uint32_t>> cells{{u, v}};
    if (undirected && u != v) {
        cells.emplace_back(v, u);
    }
    return AidEstimator(adjacency, ctx).delta_cells(cells);
}

ClassifiedDelta classify(double delta, double threshold) {
    ClassifiedDelta out{};
    out.classification =
        std::abs(delta) <= threshold ? Classification::Neutral : Classification::Information;
    if (delta > 0.0) {
        out.sign = DeltaSign::Positive;
    } else if (delta < 0.0) {
        out.sign = DeltaSign::Negative;
    } else {
        out.sign = DeltaSign::Zero;
    }
    return out;
}

double size_term(const PerturbationTarget& target, SizeConvention convention) {
    switch (convention) {
        case SizeConvention::Cells:
            return std::log2(static_cast<double>(target.object.cell_count()));
        case SizeConvention::Vertices:
            if (target.kind != TargetKind::Graph) {
                throw ValidationError("vertex-count convention applies to graphs");
            }
            return std::log2(static_cast<double>(target.object.rows));
        case SizeConvention::Rows:
            return std::log2(static_cast<double>(target.object.rows));
    }
    throw ValidationError("unknown size convention");
}

namespace {

PerturbationReport assemble_report(std::vector<PerturbationEntry> entries, double threshold,
                                   SizeConvention convention) {
    for (PerturbationEntry& e : entries) {
        const ClassifiedDelta cd = classify(e.delta, threshold);
        e.classification = cd.classification;
        e.sign = cd.sign;
    }
    std::sort(entries.begin(), entries.end(),
              [](const PerturbationEntry& x, const PerturbationEntry& y) {
                  if (x.delta != y.delta) {
                      return x.delta > y.delta;
                  }
                  return std::pair(x.a, x.b) < std::pair(y.a, y.b);
              });
    PerturbationReport report;
    report.signature.reserve(entries.size());
    for (const PerturbationEntry& e : entries) {
        report.signature.push_back(e.delta);
    }
    report.entries = std::move(entries);
    report.threshold = threshold;
    report.convention = convention;
    return report;
}

} // namespace

PerturbationReport signature_flips(const PerturbationTarget& target, const BdmContext& ctx,
                                   SizeConvention convention, std::optional<double> threshold) {
    validate_target(target);
    const AidEstimator estimator(target.object, ctx);
    std::vector<PerturbationEntry> entries;
    entries.reserve(target.object.cell_count());
    for (uint32_t r = 0; r < target.object.rows; ++r) {
        for (uint32_t c = 0; c < target.object.cols; ++c) {
            PerturbationEntry e;
            e.a = r;
            e.b = c;
            e.delta = estimator.delta_flip(r, c);
            entries.push_back(e);
        }
    }
    return assemble_report(std::move(entries),
                           threshold.value_or(size_term(target, convention)), convention);
}

PerturbationReport signature_edges(const PerturbationTarget& target, const BdmContext& ctx,
                                   SizeConvention convention, std::optional<double> threshold) {
    validate_target(target);
    if (target.kind != TargetKind::Graph) {
        throw ValidationError("edge-deletion signatures require a graph target");
    }
    const Grid& adj = target.object;
    const AidEstimator estimator(adj, ctx);
    std::vector<PerturbationEntry> entries;
    for (uint32_t u = 0; u < adj.rows; ++u) {
        for (uint32_t v = target.undirected ? u + 1 : 0; v < adj.cols; ++v) {
            if (adj.at(u, v) == 0) {
                continue;
            }
            std::vector<std::pair<uint32_t, uint32_t>> cells{{u, v}};
            if (target.undirected) {
                cells.emplace_back(v, u);
            }
            PerturbationEntry e;
            e.a = u;
            e.b = v;
            e.delta = estimator.delta_cells(cells);
            entries.push_back(e);
        }
    }
    if (entries.empty()) {
        throw NotInSupportError("graph has no edges to delete");
    }
    return assemble_report(std::move(entries),
                           threshold.value_or(size_term(target, convention)), convention);
}

void write_report_csv(const PerturbationReport& report, std::ostream& out) {
    const auto saved = out.precision(12);
    out << "element,delta,abs_delta,class,sign\n";
    for (const PerturbationEntry& e : report.entries) {
        out << e.a << ":" << e.b << "," << e.delta << "," << std::abs(e.delta) << ","
            << (e.classification == Classification::Neutral ? "neutral" : "information") << ",";
        switch (e.sign) {
            case DeltaSign::Negative: out << "negative"; break;
            case DeltaSign::Zero: out << "zero"; break;
            case DeltaSign::Positive: out << "positive"; break;
        }
        out << "\n";
    }
    out.precision(saved);
}

Grid eca_evolve(uint32_t rule, uint32_t width, uint32_t steps) {
    if (width < 3) {
        throw RangeError("width must be at least 3");
    }
    std::vector<uint8_t> init(width, 0);
    init[width / 2] = 1;
    return eca_evolve(rule, steps, init);
}

Grid eca_evolve(uint32_t rule, uint32_t steps, const std::vector<uint8_t>& initial_row) {
    if (rule > 255) {
        throw RangeError("elementary CA rules are 0..255");
    }
    if (initial_row.size() < 3) {
        throw RangeError("width must be at least 3");
    }
    if (steps < 1) {
        throw RangeError("steps must be at least 1");
    }
    const uint32_t width = static_cast<uint32_t>(initial_row.size());
    Grid grid(steps + 1, width);
    for (uint32_t c = 0; c < width; ++c) {
        if (initial_row[c] > 1) {
            throw ValidationError("initial row must be binary");
        }
        grid.set(0, c, initial_row[c]);
    }
    for (uint32_t t = 0; t < steps; ++t) {
        for (uint32_t c = 0; c < width; ++c) {
            const uint8_t left = grid.at(t, (c + width - 1) % width);
            const uint8_t mid = grid.at(t, c);
            const uint8_t right = grid.at(t, (c + 1) % width);
            const uint32_t neighborhood = (left << 2) | (mid << 1) | right;
            grid.set(t + 1, c, (rule >> neighborhood) & 1u);
        }
    }
    return grid;
}

std::vector<double> temporal_profile(const Grid& grid, const BdmContext& ctx) {
    const AidEstimator estimator(grid, ctx);
    std::vector<double> profile;
    profile.reserve(grid.rows);
    for (uint32_t r = 0; r < grid.rows; ++r) {
        double sum = 0.0;
        for (uint32_t c = 0; c < grid.cols; ++c) {
            sum += std::abs(estimator.delta_flip(r, c));
        }
        profile.push_back(sum / grid.cols);
    }
    return profile;
}

} // namespace softspace
