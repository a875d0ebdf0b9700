#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "softspace/machine.hpp"
#include "softspace/runner.hpp"

namespace softspace {

// Output-frequency table of a space run: the raw material of the Coding
// Theorem Method. counts[s] is the number of halting machines whose
// output is s; their sum is halting_total.
struct CtmTable {
    MachineSpace space;
    uint64_t budget = 0;
    std::unordered_map<std::string, uint64_t> counts;
    uint64_t halting_total = 0;
    uint64_t total_machines = 0;
};

// Incremental builder. Records must all come from the same space and
// budget; feed() checks nothing (hot path), build_table() validates.
class CtmBuilder {
public:
    CtmBuilder(const MachineSpace& space, uint64_t budget);

    void feed(const RunRecord& record);
    CtmTable take();

private:
    CtmTable table_;
};

// Folds a record stream into a table.
CtmTable build_table(const MachineSpace& space, uint64_t budget,
                     const std::vector<RunRecord>& records);

// Runs the range and builds its table in one pass (parallel-safe,
// schedule-independent). Returns the table and the run summary.
struct TableRunResult {
    CtmTable table;
    SpaceRunSummary summary;
};
TableRunResult run_space_table(const MachineSpace& space, IndexRange range, uint64_t budget,
                               const RunOptions& options = {});

// Pointwise sum of two tables over the same space and budget.
CtmTable merge_tables(const CtmTable& a, const CtmTable& b);

// Frequency estimate of the algorithmic probability of s: counts[s] /
// halting_total. Throws NotInSupportError when s is not in the table.
double ap_estimate(const std::string& key, const CtmTable& table);

// CTM complexity estimate in bits: -log2(ap_estimate(s)). The additive
// constant of the coding theorem is dropped; values are comparable only
// within one table.
double ctm_value(const std::string& key, const CtmTable& table);

// Table rows sorted by descending count, ties by ascending key: the
// canonical serialization order.
std::vector<std::pair<std::string, uint64_t>> sorted_counts(const CtmTable& table);

// Table file format (bit-exact):
//   #ctm v1 dim=<1|2> states=<n> symbols=<m> budget=<B> total=<T> halting=<H>
//   <output>,<count>          (descending count, then lexicographic key)
// with a trailing newline. 2D outputs use the RxC:rowmajor key form.
void save_table(const CtmTable& table, std::ostream& out);
void save_table(const CtmTable& table, const std::filesystem::path& path);
CtmTable load_table(std::istream& in);
CtmTable load_table(const std::filesystem::path& path);

} // namespace softspace
