#include "softspace/runner.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstring>
#include <mutex>
#include <thread>

#include "softspace/errors.hpp"

namespace softspace {

namespace {

// Transition compiled for the hot loop.
struct Op {
    uint8_t halt = 0;
    uint8_t write = 0;
    int8_t dx = 0;
    int8_t dy = 0;
    uint8_t next = 0;
};

Op compile_instruction(const Instruction& ins) {
    Op op;
    op.write = ins.write;
    if (ins.is_halt) {
        op.halt = 1;
        return op;
    }
    op.next = ins.next_state;
    switch (ins.move) {
        case Move::Left: op.dx = -1; break;
        case Move::Right: op.dx = 1; break;
        case Move::Up: op.dy = -1; break;
        case Move::Down: op.dy = 1; break;
    }
    return op;
}

std::vector<Op> build_op_lut(const MachineSpace& space) {
    std::vector<Op> lut(space.instructions_per_entry());
    for (uint32_t code = 0; code < lut.size(); ++code) {
        lut[code] = compile_instruction(decode_instruction(code, space));
    }
    return lut;
}

// Dense tape over a growing window; cells outside the window hold the
// fill symbol. One instance is reused across machines of a run.
class TapeWindow {
public:
    void init(Dimension dim, uint8_t fill) {
        fill_ = fill;
        x0_ = -16;
        w_ = 33;
        if (dim == Dimension::TwoD) {
            y0_ = -16;
            h_ = 33;
        } else {
            y0_ = 0;
            h_ = 1;
        }
        cells_.assign(static_cast<size_t>(w_) * h_, fill_);
    }

    uint8_t* cell(int64_t x, int64_t y) {
        if (x < x0_ || x >= x0_ + w_ || y < y0_ || y >= y0_ + h_) {
            grow(x, y);
        }
        return &cells_[static_cast<size_t>(y - y0_) * w_ + (x - x0_)];
    }

    uint8_t at(int64_t x, int64_t y) const {
        if (x < x0_ || x >= x0_ + w_ || y < y0_ || y >= y0_ + h_) {
            return fill_;
        }
        return cells_[static_cast<size_t>(y - y0_) * w_ + (x - x0_)];
    }

    // Restores the fill symbol over a rectangle (clamped to the window).
    void clear_rect(int64_t xlo, int64_t xhi, int64_t ylo, int64_t yhi) {
        xlo = std::max(xlo, x0_);
        xhi = std::min(xhi, x0_ + w_ - 1);
        ylo = std::max(ylo, y0_);
        yhi = std::min(yhi, y0_ + h_ - 1);
        for (int64_t y = ylo; y <= yhi; ++y) {
            std::memset(&cells_[static_cast<size_t>(y - y0_) * w_ + (xlo - x0_)], fill_,
                        static_cast<size_t>(xhi - xlo + 1));
        }
    }

private:
    void grow(int64_t x, int64_t y) {
        int64_t nx0 = x0_, nx1 = x0_ + w_;
        int64_t ny0 = y0_, ny1 = y0_ + h_;
        if (x < nx0) {
            nx0 = x - w_;
        } else if (x >= nx1) {
            nx1 = x + 1 + w_;
        }
        if (y < ny0) {
            ny0 = y - h_;
        } else if (y >= ny1) {
            ny1 = y + 1 + h_;
        }
        const int64_t nw = nx1 - nx0;
        const int64_t nh = ny1 - ny0;
        std::vector<uint8_t> next(static_cast<size_t>(nw) * nh, fill_);
        for (int64_t row = 0; row < h_; ++row) {
            std::memcpy(&next[static_cast<size_t>(y0_ + row - ny0) * nw + (x0_ - nx0)],
                        &cells_[static_cast<size_t>(row) * w_], static_cast<size_t>(w_));
        }
        cells_ = std::move(next);
        x0_ = nx0;
        y0_ = ny0;
        w_ = nw;
        h_ = nh;
    }

    std::vector<uint8_t> cells_;
    int64_t x0_ = 0, y0_ = 0;
    int64_t w_ = 0, h_ = 0;
    uint8_t fill_ = 0;
};

struct SimOutcome {
    bool halted = false;
    uint64_t steps = 0;
    int64_t xlo = 0, xhi = 0, ylo = 0, yhi = 0;
};

SimOutcome simulate(const Op* ops, uint32_t symbols, uint64_t budget, TapeWindow& tape) {
    SimOutcome out;
    int64_t x = 0, y = 0;
    uint32_t state = 0;
    for (uint64_t s = 1; s <= budget; ++s) {
        uint8_t* cell = tape.cell(x, y);
        const Op& op = ops[state * symbols + *cell];
        *cell = op.write;
        if (op.halt) {
            out.halted = true;
            out.steps = s;
            return out;
        }
        x += op.dx;
        y += op.dy;
        out.xlo = std::min(out.xlo, x);
        out.xhi = std::max(out.xhi, x);
        out.ylo = std::min(out.ylo, y);
        out.yhi = std::max(out.yhi, y);
        state = op.next;
    }
    out.steps = budget;
    return out;
}

OutputObject extract_output(const TapeWindow& tape, const SimOutcome& sim, Dimension dim) {
    OutputObject out;
    out.dim = dim;
    out.rows = static_cast<uint32_t>(sim.yhi - sim.ylo + 1);
    out.cols = static_cast<uint32_t>(sim.xhi - sim.xlo + 1);
    out.cells.reserve(static_cast<size_t>(out.rows) * out.cols);
    for (int64_t y = sim.ylo; y <= sim.yhi; ++y) {
        for (int64_t x = sim.xlo; x <= sim.xhi; ++x) {
            out.cells.push_back(static_cast<char>('0' + tape.at(x, y)));
        }
    }
    return out;
}

// Walks rule indices in ascending order, maintaining the compiled
// transition table incrementally (base-ipe odometer over the digits).
class RuleCursor {
public:
    RuleCursor(const MachineSpace& space, const std::vector<Op>& lut, u128 start)
        : lut_(&lut), ipe_(space.instructions_per_entry()) {
        digits_.resize(space.entry_count());
        ops_.resize(space.entry_count());
        for (uint32_t k = 0; k < digits_.size(); ++k) {
            digits_[k] = static_cast<uint32_t>(start % ipe_);
            ops_[k] = (*lut_)[digits_[k]];
            start /= ipe_;
        }
    }

    const Op* ops() const { return ops_.data(); }

    void advance() {
        for (uint32_t k = 0; k < digits_.size(); ++k) {
            if (++digits_[k] < ipe_) {
                ops_[k] = (*lut_)[digits_[k]];
                return;
            }
            digits_[k] = 0;
            ops_[k] = (*lut_)[0];
        }
    }

private:
    std::vector<uint32_t> digits_;
    std::vector<Op> ops_;
    const std::vector<Op>* lut_;
    uint32_t ipe_;
};

// Histogram of halting runtimes; dense while the budget is small.
class HistAccum {
public:
    explicit HistAccum(uint64_t budget) {
        if (budget <= (1u << 20)) {
            dense_.assign(budget + 1, 0);
        }
    }

    void add(uint64_t steps) {
        if (!dense_.empty()) {
            ++dense_[steps];
        } else {
            ++sparse_[steps];
        }
    }

    void fold_into(std::map<uint64_t, uint64_t>& out) const {
        for (uint64_t s = 0; s < dense_.size(); ++s) {
            if (dense_[s] > 0) {
                out[s] += dense_[s];
            }
        }
        for (const auto& [s, c] : sparse_) {
            out[s] += c;
        }
    }

private:
    std::vector<uint64_t> dense_;
    std::map<uint64_t, uint64_t> sparse_;
};

struct PartialSummary {
    explicit PartialSummary(uint64_t budget) : hist(budget) {}

    uint64_t total = 0;
    uint64_t halting = 0;
    uint64_t max_steps = 0;
    std::vector<u128> bb_indices;
    HistAccum hist;

    void add(u128 index, bool halted, uint64_t steps) {
        ++total;
        if (!halted) {
            return;
        }
        ++halting;
        hist.add(steps);
        if (steps > max_steps) {
            max_steps = steps;
            bb_indices.clear();
        }
        if (steps == max_steps) {
            bb_indices.push_back(index);
        }
    }
};

// One simulated machine in symmetry mode, expanded to an orbit member.
struct MemberResult {
    u128 index;
    bool halted;
    uint64_t steps;
    bool have_output;
    OutputObject output;
};

struct WorkerContext {
    const MachineSpace* space;
    uint64_t budget;
    std::vector<Op> lut;
    bool want_records = false;
    bool symmetry = false;
    uint8_t fill = 0;
};

void run_plain_chunk(const WorkerContext& ctx, u128 first, uint64_t count, TapeWindow& tape,
                     PartialSummary* fold, std::vector<RunRecord>* records) {
    RuleCursor cursor(*ctx.space, ctx.lut, first);
    const uint32_t symbols = ctx.space->symbols();
    const Dimension dim = ctx.space->dimension();
    for (uint64_t i = 0; i < count; ++i, cursor.advance()) {
        const SimOutcome sim = simulate(cursor.ops(), symbols, ctx.budget, tape);
        const u128 index = first + i;
        if (records) {
            RunRecord rec;
            rec.index = index;
            rec.halted = sim.halted;
            rec.steps = sim.steps;
            if (sim.halted) {
                rec.output = extract_output(tape, sim, dim);
            }
            records->push_back(std::move(rec));
        }
        if (fold) {
            fold->add(index, sim.halted, sim.steps);
        }
        tape.clear_rect(sim.xlo, sim.xhi, sim.ylo, sim.yhi);
    }
}

// Which transform derives an orbit member from its representative.
enum class Derivation : uint8_t { Identity, Mirror, Complement, MirrorComplement };

void run_symmetry_chunk(const WorkerContext& ctx, u128 first, uint64_t count, TapeWindow& tape0,
                        TapeWindow& tape1, PartialSummary* fold,
                        std::vector<RunRecord>* records) {
    const MachineSpace& space = *ctx.space;
    const uint32_t symbols = space.symbols();
    const Dimension dim = space.dimension();
    std::vector<Op> rep_ops(space.entry_count());
    for (uint64_t i = 0; i < count; ++i) {
        const u128 index = first + i;
        const SymmetryOrbit orbit = symmetry_orbit(index, space);
        const u128 members[4] = {orbit.identity, orbit.mirror, orbit.complement,
                                 orbit.mirror_complement};
        if (std::min({members[0], members[1], members[2], members[3]}) != index) {
            continue;
        }
        // Deduplicate members, keeping the cheapest derivation.
        constexpr Derivation kDerivations[4] = {Derivation::Identity, Derivation::Mirror,
                                                Derivation::Complement,
                                                Derivation::MirrorComplement};
        u128 kept_index[4];
        Derivation kept_from[4];
        int kept = 0;
        for (int k = 0; k < 4; ++k) {
            bool seen = false;
            for (int j = 0; j < kept; ++j) {
                seen = seen || kept_index[j] == members[k];
            }
            if (!seen) {
                kept_index[kept] = members[k];
                kept_from[kept] = kDerivations[k];
                ++kept;
            }
        }
        bool need_fill1 = false;
        for (int k = 0; k < kept; ++k) {
            need_fill1 = need_fill1 || kept_from[k] == Derivation::Complement ||
                         kept_from[k] == Derivation::MirrorComplement;
        }

        const MachineRule rule = decode_rule(index, space);
        for (uint32_t e = 0; e < space.entry_count(); ++e) {
            rep_ops[e] = compile_instruction(rule.table[e]);
        }
        const SimOutcome sim0 = simulate(rep_ops.data(), symbols, ctx.budget, tape0);
        OutputObject out0;
        if (sim0.halted && ctx.want_records) {
            out0 = extract_output(tape0, sim0, dim);
        }
        SimOutcome sim1;
        OutputObject out1;
        if (need_fill1) {
            sim1 = simulate(rep_ops.data(), symbols, ctx.budget, tape1);
            if (sim1.halted && ctx.want_records) {
                out1 = extract_output(tape1, sim1, dim);
            }
            tape1.clear_rect(sim1.xlo, sim1.xhi, sim1.ylo, sim1.yhi);
        }
        tape0.clear_rect(sim0.xlo, sim0.xhi, sim0.ylo, sim0.yhi);

        // Credit each distinct member its exact blank-tape result:
        // mirrored members reuse the blank-0 run, complement members map
        // the all-ones run through the symbol complement.
        MemberResult results[4];
        for (int k = 0; k < kept; ++k) {
            MemberResult& r = results[k];
            r.index = kept_index[k];
            const bool from_fill1 = kept_from[k] == Derivation::Complement ||
                                    kept_from[k] == Derivation::MirrorComplement;
            const SimOutcome& sim = from_fill1 ? sim1 : sim0;
            r.halted = sim.halted;
            r.steps = sim.steps;
            r.have_output = sim.halted && ctx.want_records;
            if (r.have_output) {
                switch (kept_from[k]) {
                    case Derivation::Identity: r.output = out0; break;
                    case Derivation::Mirror: r.output = out0.mirrored(); break;
                    case Derivation::Complement: r.output = out1.complemented(); break;
                    case Derivation::MirrorComplement:
                        r.output = out1.complemented().mirrored();
                        break;
                }
            }
        }
        std::sort(results, results + kept,
                  [](const MemberResult& a, const MemberResult& b) { return a.index < b.index; });
        for (int k = 0; k < kept; ++k) {
            const MemberResult& r = results[k];
            if (records) {
                RunRecord rec;
                rec.index = r.index;
                rec.halted = r.halted;
                rec.steps = r.steps;
                if (r.have_output) {
                    rec.output = r.output;
                }
                records->push_back(std::move(rec));
            }
            if (fold) {
                fold->add(r.index, r.halted, r.steps);
            }
        }
    }
}

SpaceRunSummary finalize_summary(const MachineSpace& space, uint64_t budget,
                                 std::vector<PartialSummary>& partials) {
    SpaceRunSummary summary{space, budget, 0, 0, 0, {}, {}};
    for (PartialSummary& p : partials) {
        summary.total += p.total;
        summary.halting_count += p.halting;
        p.hist.fold_into(summary.runtime_histogram);
        if (p.max_steps > summary.max_steps) {
            summary.max_steps = p.max_steps;
            summary.busy_beaver_indices.clear();
        }
        if (p.halting > 0 && p.max_steps == summary.max_steps) {
            summary.busy_beaver_indices.insert(summary.busy_beaver_indices.end(),
                                               p.bb_indices.begin(), p.bb_indices.end());
        }
    }
    std::sort(summary.busy_beaver_indices.begin(), summary.busy_beaver_indices.end());
    return summary;
}

} // namespace

uint64_t default_budget(const MachineSpace& space) {
    if (space.dimension() == Dimension::TwoD) {
        return 1000;
    }
    return space.states() >= 4 ? 2000 : 200;
}

RunRecord run_machine(const MachineRule& rule, uint64_t budget, uint8_t initial_fill) {
    if (budget < 1 || budget > kMaxBudget) {
        throw RangeError("budget must be in [1, " + std::to_string(kMaxBudget) + "]");
    }
    std::vector<Op> ops(rule.space.entry_count());
    for (uint32_t e = 0; e < rule.space.entry_count(); ++e) {
        // Validates the table entries as a side effect.
        encode_instruction(rule.table[e], rule.space);
        ops[e] = compile_instruction(rule.table[e]);
    }
    TapeWindow tape;
    tape.init(rule.space.dimension(), initial_fill);
    const SimOutcome sim = simulate(ops.data(), rule.space.symbols(), budget, tape);
    RunRecord rec;
    rec.index = encode_rule(rule);
    rec.halted = sim.halted;
    rec.steps = sim.steps;
    if (sim.halted) {
        rec.output = extract_output(tape, sim, rule.space.dimension());
    }
    return rec;
}

SpaceRunSummary run_space(const MachineSpace& space, IndexRange range, uint64_t budget,
                          const RunOptions& options, const RecordVisitor& visit) {
    make_range(space, range.start, range.end);
    if (budget < 1 || budget > kMaxBudget) {
        throw RangeError("budget must be in [1, " + std::to_string(kMaxBudget) + "]");
    }
    if (options.symmetry) {
        if (space.symbols() != 2) {
            throw UnsupportedSpaceError("symmetry reduction requires a binary alphabet");
        }
        if (range.start != 0 || range.end != space_size(space)) {
            throw ConsistencyError("symmetry reduction requires the full index range");
        }
        if (options.initial_fill != 0) {
            throw ConsistencyError("symmetry reduction is defined for blank-0 runs");
        }
    }

    const u128 len = range.length();
    uint32_t threads = options.threads;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    constexpr uint64_t kChunk = 8192;
    const uint64_t chunk_count =
        len == 0 ? 0 : static_cast<uint64_t>((len + kChunk - 1) / kChunk);
    threads = static_cast<uint32_t>(
        std::min<uint64_t>(threads, std::max<uint64_t>(chunk_count, 1)));

    WorkerContext ctx;
    ctx.space = &space;
    ctx.budget = budget;
    ctx.lut = build_op_lut(space);
    ctx.want_records = static_cast<bool>(visit);
    ctx.symmetry = options.symmetry;
    ctx.fill = options.initial_fill;

    std::atomic<uint64_t> next_chunk{0};
    std::mutex mu;
    std::condition_variable cv_ready;
    std::condition_variable cv_space;
    std::map<uint64_t, std::vector<RunRecord>> completed;
    uint64_t next_emit = 0;
    std::atomic<bool> failed{false};
    const uint64_t window = static_cast<uint64_t>(threads) * 4 + 4;
    std::vector<PartialSummary> partials;
    partials.reserve(threads);
    for (uint32_t t = 0; t < threads; ++t) {
        partials.emplace_back(budget);
    }
    std::exception_ptr first_error;

    auto worker = [&](uint32_t id) {
        TapeWindow tape0;
        tape0.init(space.dimension(), ctx.fill);
        TapeWindow tape1;
        tape1.init(space.dimension(), 1);
        try {
            for (;;) {
                const uint64_t chunk = next_chunk.fetch_add(1);
                if (chunk >= chunk_count || failed) {
                    return;
                }
                const u128 first = range.start + static_cast<u128>(chunk) * kChunk;
                const uint64_t count =
                    static_cast<uint64_t>(std::min<u128>(kChunk, range.end - first));
                std::vector<RunRecord> records;
                PartialSummary* fold = ctx.want_records ? nullptr : &partials[id];
                std::vector<RunRecord>* recs = ctx.want_records ? &records : nullptr;
                if (ctx.symmetry) {
                    run_symmetry_chunk(ctx, first, count, tape0, tape1, fold, recs);
                } else {
                    run_plain_chunk(ctx, first, count, tape0, fold, recs);
                }
                if (ctx.want_records) {
                    std::unique_lock<std::mutex> lock(mu);
                    cv_space.wait(lock, [&] { return failed || chunk < next_emit + window; });
                    if (failed) {
                        return;
                    }
                    completed.emplace(chunk, std::move(records));
                    cv_ready.notify_all();
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!first_error) {
                first_error = std::current_exception();
            }
            failed = true;
            cv_ready.notify_all();
            cv_space.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (uint32_t t = 0; t < threads; ++t) {
        pool.emplace_back(worker, t);
    }

    PartialSummary emit_fold(budget);
    if (ctx.want_records) {
        while (next_emit < chunk_count) {
            std::vector<RunRecord> records;
            {
                std::unique_lock<std::mutex> lock(mu);
                cv_ready.wait(lock, [&] { return failed || completed.count(next_emit) > 0; });
                if (failed) {
                    break;
                }
                records = std::move(completed.at(next_emit));
                completed.erase(next_emit);
                ++next_emit;
                cv_space.notify_all();
            }
            try {
                for (const RunRecord& rec : records) {
                    visit(rec);
                    emit_fold.add(rec.index, rec.halted, rec.steps);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                failed = true;
                cv_space.notify_all();
                break;
            }
        }
    }
    for (std::thread& t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }

    if (ctx.want_records) {
        std::vector<PartialSummary> one;
        one.push_back(std::move(emit_fold));
        return finalize_summary(space, budget, one);
    }
    return finalize_summary(space, budget, partials);
}

std::pair<uint64_t, std::vector<u128>> find_busy_beavers(const SpaceRunSummary& summary) {
    if (summary.halting_count == 0) {
        throw NotInSupportError("no machine halted within the budget; no busy beavers");
    }
    return {summary.max_steps, summary.busy_beaver_indices};
}

SpaceRunSummary merge_summaries(const SpaceRunSummary& a, const SpaceRunSummary& b) {
    if (!(a.space == b.space) || a.budget != b.budget) {
        throw ConsistencyError("cannot merge summaries from different spaces or budgets");
    }
    SpaceRunSummary out = a;
    out.total += b.total;
    out.halting_count += b.halting_count;
    for (const auto& [steps, count] : b.runtime_histogram) {
        out.runtime_histogram[steps] += count;
    }
    if (b.max_steps > out.max_steps) {
        out.max_steps = b.max_steps;
        out.busy_beaver_indices = b.busy_beaver_indices;
    } else if (b.max_steps == out.max_steps && b.halting_count > 0 && a.halting_count > 0) {
        out.busy_beaver_indices.insert(out.busy_beaver_indices.end(),
                                       b.busy_beaver_indices.begin(),
                                       b.busy_beaver_indices.end());
        std::sort(out.busy_beaver_indices.begin(), out.busy_beaver_indices.end());
    }
    return out;
}

} // namespace softspace
