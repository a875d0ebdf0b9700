#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "softspace/enumeration.hpp"
#include "softspace/machine.hpp"
#include "softspace/output.hpp"
#include "softspace/u128.hpp"

namespace softspace {

// Step budgets above this are rejected; keeps head positions and step
// counters comfortably inside 64-bit arithmetic at desk scale.
inline constexpr uint64_t kMaxBudget = 1'000'000'000;

// Default budgets per space family, all overridable.
uint64_t default_budget(const MachineSpace& space);

// Outcome of one machine run. A record with halted == false is censored:
// the machine did not halt within the budget, which proves nothing about
// whether it ever halts. steps and output are meaningful only when
// halted is true.
struct RunRecord {
    u128 index = 0;
    bool halted = false;
    uint64_t steps = 0;
    OutputObject output;
};

struct SpaceRunSummary {
    MachineSpace space;
    uint64_t budget = 0;
    uint64_t total = 0;
    uint64_t halting_count = 0;
    uint64_t max_steps = 0;                      // over halting machines
    std::vector<u128> busy_beaver_indices;       // ascending, all achieve max_steps
    std::map<uint64_t, uint64_t> runtime_histogram;  // halting steps -> count
};

struct RunOptions {
    uint32_t threads = 1;
    // When set, only symmetry-class representatives are simulated (each
    // also from an all-ones tape when its orbit has complement members)
    // and results are expanded to the whole orbit. Requires a binary
    // alphabet and the full range. Produces exactly the full-run tables.
    bool symmetry = false;
    // Initial tape fill. 0 is the formalism's blank; 1 exists for the
    // complement-symmetry machinery and its tests.
    uint8_t initial_fill = 0;
};

// Runs one machine from a uniformly filled tape.
RunRecord run_machine(const MachineRule& rule, uint64_t budget, uint8_t initial_fill = 0);

// Runs every machine in the range and folds the summary. When a visitor
// is supplied, every record is delivered on the calling thread; in
// normal mode records arrive in ascending index order regardless of
// thread count, in symmetry mode grouped by class in ascending
// representative order.
using RecordVisitor = std::function<void(const RunRecord&)>;

SpaceRunSummary run_space(const MachineSpace& space, IndexRange range, uint64_t budget,
                          const RunOptions& options = {}, const RecordVisitor& visit = {});

// (max_steps, indices) of the busy beavers in a summary. Throws
// NotInSupportError when no machine halted.
std::pair<uint64_t, std::vector<u128>> find_busy_beavers(const SpaceRunSummary& summary);

// Merges partial summaries of disjoint ranges over the same space and
// budget; associative and commutative.
SpaceRunSummary merge_summaries(const SpaceRunSummary& a, const SpaceRunSummary& b);

} // namespace softspace
