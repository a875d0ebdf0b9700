#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "softspace/bdm.hpp"
#include "softspace/grid.hpp"

namespace softspace {

// The estimator behind every delta: a base table with a block size and
// boundary strategy.
struct BdmContext {
    const BaseTable* table = nullptr;
    uint32_t d = kDefaultBlock2D;
    Boundary boundary = Boundary::Exact;
    uint8_t pad_symbol = 0;
};

enum class TargetKind : uint8_t { Grid, Graph };

// A perturbable object: a binary space-time grid, or a graph given as
// its labelled adjacency matrix.
struct PerturbationTarget {
    Grid object;
    TargetKind kind = TargetKind::Grid;
    bool undirected = true;  // graphs only
};

// Checks the object is binary; graphs additionally square, zero-diagonal
// and, when undirected, symmetric. Throws ValidationError.
void validate_target(const PerturbationTarget& target);

// Single-cell bit flip; involutive.
Grid perturb_flip(const Grid& grid, uint32_t row, uint32_t col);

// Removes edge (u,v) (both triangle entries when undirected). Throws
// RangeError when the edge is absent.
Grid perturb_edge_delete(const Grid& adjacency, uint32_t u, uint32_t v, bool undirected);
Grid perturb_edge_add(const Grid& adjacency, uint32_t u, uint32_t v, bool undirected);

// Signed complexity change C(G) - C(G') of a perturbation, with C
// estimated by BDM. Positive means the perturbation decreased the
// estimated complexity. Computed incrementally from the affected blocks;
// equals the difference of two full BDM evaluations to within rounding.
double aid_delta_flip(const Grid& grid, uint32_t row, uint32_t col, const BdmContext& ctx);
double aid_delta_edge(const Grid& adjacency, uint32_t u, uint32_t v, bool undirected,
                      const BdmContext& ctx);

// Precomputed decomposition of one grid for evaluating many
// perturbations cheaply.
class AidEstimator {
public:
    AidEstimator(const Grid& grid, const BdmContext& ctx);

    double base_value() const { return base_value_; }

    // Delta for flipping the given cells together (deduplicated pairs).
    double delta_cells(std::span<const std::pair<uint32_t, uint32_t>> cells) const;
    double delta_flip(uint32_t row, uint32_t col) const;

private:
    struct BlockRef {
        size_t pair_index;
    };

    std::optional<size_t> block_of(uint32_t row, uint32_t col) const;
    std::string block_key(uint32_t block_row, uint32_t block_col,
                          std::span<const std::pair<uint32_t, uint32_t>> flips) const;

    Grid grid_;
    BdmContext ctx_;
    std::unordered_map<std::string, uint64_t> multiset_;
    uint32_t block_rows_ = 0;
    uint32_t block_cols_ = 0;
    uint32_t usable_rows_ = 0;
    uint32_t usable_cols_ = 0;
    double base_value_ = 0.0;
};

enum class Classification : uint8_t { Neutral, Information };
enum class DeltaSign : uint8_t { Negative, Zero, Positive };

struct ClassifiedDelta {
    Classification classification;
    DeltaSign sign;
};

// Neutral iff |delta| <= threshold (boundary inclusive).
ClassifiedDelta classify(double delta, double threshold);

// What |G| counts in the log2|G| threshold. Cells for grids, Vertices
// for graphs, Rows for grids declared to be space-time evolutions.
enum class SizeConvention : uint8_t { Cells, Vertices, Rows };

double size_term(const PerturbationTarget& target, SizeConvention convention);

struct PerturbationEntry {
    uint32_t a = 0;  // cell row or edge endpoint u
    uint32_t b = 0;  // cell col or edge endpoint v
    double delta = 0.0;
    Classification classification = Classification::Neutral;
    DeltaSign sign = DeltaSign::Zero;
};

// Complete single-perturbation scan: one entry per family element,
// ordered by descending delta (ties by element id); signature is the
// sorted delta list.
struct PerturbationReport {
    std::vector<PerturbationEntry> entries;
    std::vector<double> signature;
    double threshold = 0.0;
    SizeConvention convention = SizeConvention::Cells;
};

// Family: every single-cell flip.
PerturbationReport signature_flips(const PerturbationTarget& target, const BdmContext& ctx,
                                   SizeConvention convention = SizeConvention::Cells,
                                   std::optional<double> threshold = std::nullopt);

// Family: every present edge, deleted one at a time.
PerturbationReport signature_edges(const PerturbationTarget& target, const BdmContext& ctx,
                                   SizeConvention convention = SizeConvention::Vertices,
                                   std::optional<double> threshold = std::nullopt);

// CSV rows `element,delta,abs_delta,class,sign` with elements as a:b.
void write_report_csv(const PerturbationReport& report, std::ostream& out);

// Elementary cellular automaton evolution with periodic boundary; the
// result has steps+1 rows, row 0 being the initial row.
Grid eca_evolve(uint32_t rule, uint32_t width, uint32_t steps);
Grid eca_evolve(uint32_t rule, uint32_t steps, const std::vector<uint8_t>& initial_row);

// Mean |delta| over all single-cell flips, per grid row.
std::vector<double> temporal_profile(const Grid& grid, const BdmContext& ctx);

} // namespace softspace
