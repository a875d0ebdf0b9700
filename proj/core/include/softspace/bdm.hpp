#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "softspace/ctm.hpp"
#include "softspace/grid.hpp"

namespace softspace {

// Default block sizes: d=4 for arrays, d=12 for strings.
inline constexpr uint32_t kDefaultBlock2D = 4;
inline constexpr uint32_t kDefaultBlock1D = 12;

// What to do when input dimensions are not multiples of the block size.
// Exact refuses (loudly), Ignore drops the leftover margin, Pad extends
// the input with a pad symbol up to the next multiple.
enum class Boundary : uint8_t { Exact, Ignore, Pad };

// CTM values organized for constant-time block lookup. Values may come
// from a table built here or imported through the table file format, or
// be constructed directly (synthetic bases for calibration and tests).
class BaseTable {
public:
    BaseTable(Dimension dim, std::unordered_map<std::string, double> values);

    static BaseTable from_ctm(const CtmTable& table);
    static BaseTable from_file(const std::filesystem::path& path);

    Dimension dimension() const { return dim_; }
    std::optional<double> lookup(const std::string& block_key) const;
    const std::unordered_map<std::string, double>& values() const { return values_; }

private:
    Dimension dim_;
    std::unordered_map<std::string, double> values_;
};

// Multiset of blocks from a non-overlapping partition, in first-seen
// row-major scan order.
struct BlockDecomposition {
    uint32_t block_size = 0;
    Boundary boundary = Boundary::Exact;
    uint8_t pad_symbol = 0;
    uint64_t leftover_cells = 0;  // ignored or padded cells
    std::vector<std::pair<std::string, uint64_t>> pairs;

    uint64_t block_cells_total() const;
};

BlockDecomposition decompose_string(const std::string& input, uint32_t d,
                                    Boundary boundary = Boundary::Exact, uint8_t pad_symbol = 0);
BlockDecomposition decompose_grid(const Grid& input, uint32_t d,
                                  Boundary boundary = Boundary::Exact, uint8_t pad_symbol = 0);

// BDM(G,d) = sum over distinct blocks of log2(multiplicity) + K(block).
// Blocks absent from the base table raise MissingBlockError listing them.
double bdm_value(const BlockDecomposition& decomposition, const BaseTable& table);
double bdm_value(const Grid& input, const BaseTable& table, uint32_t d = kDefaultBlock2D,
                 Boundary boundary = Boundary::Exact, uint8_t pad_symbol = 0);
double bdm_string(const std::string& input, const BaseTable& table,
                  uint32_t d = kDefaultBlock1D, Boundary boundary = Boundary::Exact,
                  uint8_t pad_symbol = 0);

// Shannon entropy over the empirical distribution of non-overlapping
// blocks, in bits per block. Trailing cells that do not fill a block are
// ignored.
double shannon_block_entropy(const std::string& input, uint32_t block_size);
double shannon_block_entropy(const Grid& input, uint32_t block_size);

// Paired entropy-vs-BDM view of one input. Ranks are normalized
// mid-ranks in [0,1] against the population (by default: every table key
// of the same length as the input). A disagreement is flagged when the
// ranks differ by at least 0.5 — the paper's pi-style case of maximal
// entropy but low algorithmic complexity.
struct EntropyBdmReport {
    double entropy = 0.0;  // block-1 entropy of the input
    double bdm = 0.0;
    double entropy_rank = 0.0;
    double bdm_rank = 0.0;
    size_t population = 0;
    bool rank_disagreement = false;
};

EntropyBdmReport compare_entropy_vs_bdm(const std::string& input, const BaseTable& table,
                                        uint32_t d, Boundary boundary = Boundary::Exact,
                                        std::span<const std::string> population = {});

// Scores every binary d-by-d block with its BDM value over a finer base
// (block size fine_d, which must divide d). Desk-scale 2D CTM tables
// cover all 2x2 blocks but almost no 4x4 ones; this derivation extends
// real small-block data to full coverage at a larger block size.
// Requires d*d <= 24 (the table is materialized).
BaseTable derive_binary_base(const BaseTable& fine, uint32_t d, uint32_t fine_d);

} // namespace softspace
