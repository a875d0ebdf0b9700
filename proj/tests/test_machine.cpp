#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "softspace/enumeration.hpp"
#include "softspace/errors.hpp"
#include "softspace/machine.hpp"
#include "softspace/runner.hpp"

using namespace softspace;

namespace {

const MachineSpace kSpace22(2, 2, Dimension::OneD);
const MachineSpace kSpace32(3, 2, Dimension::OneD);

bool rules_equal(const MachineRule& a, const MachineRule& b) {
    if (!(a.space == b.space) || a.table.size() != b.table.size()) {
        return false;
    }
    for (size_t i = 0; i < a.table.size(); ++i) {
        if (encode_instruction(a.table[i], a.space) != encode_instruction(b.table[i], b.space)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("space parameters") {
    CHECK(kSpace22.instructions_per_entry() == 10);
    CHECK(kSpace32.instructions_per_entry() == 14);
    CHECK(MachineSpace(2, 2, Dimension::TwoD).instructions_per_entry() == 18);
    CHECK(kSpace22.entry_count() == 4);
    CHECK_THROWS_AS(MachineSpace(0, 2, Dimension::OneD), ValidationError);
    CHECK_THROWS_AS(MachineSpace(2, 1, Dimension::OneD), ValidationError);
}

TEST_CASE("rule 0 is the all-halt-write-0 table") {
    const MachineRule rule = decode_rule(0, kSpace22);
    for (const Instruction& ins : rule.table) {
        CHECK(ins.is_halt);
        CHECK(ins.write == 0);
    }
    CHECK(encode_rule(rule) == 0);
}

TEST_CASE("rule 9999 in (2,2) has instruction code 9 in every entry") {
    const MachineRule rule = decode_rule(9999, kSpace22);
    for (const Instruction& ins : rule.table) {
        CHECK(encode_instruction(ins, kSpace22) == 9);
    }
}

TEST_CASE("all-last-instruction rule in (3,2) encodes to space_size - 1") {
    MachineRule rule{kSpace32, {}};
    rule.table.assign(6, decode_instruction(13, kSpace32));
    CHECK(encode_rule(rule) == 7529535);
}

TEST_CASE("encode/decode is a bijection on the exhaustive (2,2) space") {
    std::vector<bool> seen(10000, false);
    for (u128 i = 0; i < 10000; ++i) {
        const u128 back = encode_rule(decode_rule(i, kSpace22));
        REQUIRE(back == i);
        REQUIRE(!seen[static_cast<size_t>(back)]);
        seen[static_cast<size_t>(back)] = true;
    }
}

TEST_CASE("encode/decode round-trips on sampled (3,2) indices") {
    std::mt19937_64 rng(20260808);
    std::uniform_int_distribution<uint64_t> dist(0, 7529535);
    for (int trial = 0; trial < 1000; ++trial) {
        const u128 index = dist(rng);
        const MachineRule rule = decode_rule(index, kSpace32);
        CHECK(encode_rule(rule) == index);
        CHECK(rules_equal(decode_rule(encode_rule(rule), kSpace32), rule));
    }
}

TEST_CASE("decode rejects out-of-range indices") {
    CHECK_THROWS_AS(decode_rule(10000, kSpace22), RangeError);
    CHECK_THROWS_AS(decode_rule(7529536, kSpace32), RangeError);
}

TEST_CASE("encode rejects malformed instructions") {
    MachineRule rule = decode_rule(0, kSpace22);
    rule.table[1].write = 7;
    CHECK_THROWS_AS(encode_rule(rule), ValidationError);

    MachineRule bad_state = decode_rule(9999, kSpace22);
    bad_state.table[0].next_state = 5;
    CHECK_THROWS_AS(encode_rule(bad_state), ValidationError);

    MachineRule bad_move = decode_rule(9999, kSpace22);
    bad_move.table[0].move = Move::Up;
    CHECK_THROWS_AS(encode_rule(bad_move), ValidationError);

    MachineRule short_table{kSpace22, {}};
    CHECK_THROWS_AS(encode_rule(short_table), ValidationError);
}

TEST_CASE("step on the all-halt rule halts after exactly one step") {
    const MachineRule rule = decode_rule(0, kSpace22);
    Configuration config(kSpace22);
    CHECK(step(config, rule) == StepOutcome::Halted);
    CHECK(config.steps == 1);
    CHECK(config.head == Position{0, 0});
    CHECK(config.visited_min == Position{0, 0});
    CHECK(config.visited_max == Position{0, 0});
}

TEST_CASE("single-state right-mover never halts") {
    // (state 0, symbol 0) = Step{write 1, Right, state 0}.
    MachineRule rule = decode_rule(0, kSpace22);
    rule.table[0] = Instruction{false, 1, Move::Right, 0};
    Configuration config(kSpace22);
    for (int i = 0; i < 5000; ++i) {
        REQUIRE(step(config, rule) == StepOutcome::Running);
    }
    CHECK(config.steps == 5000);
    CHECK(config.head.x == 5000);
}

TEST_CASE("hand-decoded (2,2) machine follows its pencil trace for 6 steps") {
    // Entry codes (entry 0 least significant): e0=9 Step{1,R,q1},
    // e1=3 Step{0,L,q1}, e2=6 Step{1,L,q0}, e3=1 Halt{1}; index 1639.
    // Pencil trace from blank tape:
    //   1: q0 reads 0, writes 1, R  -> head  1, state q1
    //   2: q1 reads 0, writes 1, L  -> head  0, state q0
    //   3: q0 reads 1, writes 0, L  -> head -1, state q1
    //   4: q1 reads 0, writes 1, L  -> head -2, state q0
    //   5: q0 reads 0, writes 1, R  -> head -1, state q1
    //   6: q1 reads 1, halt write 1 -> tape over [-2,1] = 1101
    const MachineRule rule = decode_rule(1639, kSpace22);
    Configuration c(kSpace22);

    CHECK(step(c, rule) == StepOutcome::Running);
    CHECK(c.head.x == 1);
    CHECK(c.state == 1);
    CHECK(c.read({0, 0}) == 1);

    CHECK(step(c, rule) == StepOutcome::Running);
    CHECK(c.head.x == 0);
    CHECK(c.state == 0);
    CHECK(c.read({1, 0}) == 1);

    CHECK(step(c, rule) == StepOutcome::Running);
    CHECK(c.head.x == -1);
    CHECK(c.state == 1);
    CHECK(c.read({0, 0}) == 0);

    CHECK(step(c, rule) == StepOutcome::Running);
    CHECK(c.head.x == -2);
    CHECK(c.state == 0);

    CHECK(step(c, rule) == StepOutcome::Running);
    CHECK(c.head.x == -1);
    CHECK(c.state == 1);

    CHECK(step(c, rule) == StepOutcome::Halted);
    CHECK(c.steps == 6);
    CHECK(c.visited_min == Position{-2, 0});
    CHECK(c.visited_max == Position{1, 0});

    const RunRecord rec = run_machine(rule, 100);
    CHECK(rec.halted);
    CHECK(rec.steps == 6);
    CHECK(rec.output.cells == "1101");
}

TEST_CASE("determinism: identical rule and budget give identical runs") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<uint64_t> dist(0, 9999);
    for (int trial = 0; trial < 50; ++trial) {
        const MachineRule rule = decode_rule(dist(rng), kSpace22);
        const RunRecord a = run_machine(rule, 300);
        const RunRecord b = run_machine(rule, 300);
        CHECK(a.halted == b.halted);
        CHECK(a.steps == b.steps);
        CHECK(a.output == b.output);
    }
}

TEST_CASE("tape sparsity: stored non-blank cells never exceed steps") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<uint64_t> dist(0, 9999);
    for (int trial = 0; trial < 100; ++trial) {
        const MachineRule rule = decode_rule(dist(rng), kSpace22);
        Configuration c(kSpace22);
        for (int s = 0; s < 64; ++s) {
            if (step(c, rule) == StepOutcome::Halted) {
                break;
            }
        }
        CHECK(c.nonblank_cells() <= c.steps);
    }
}

TEST_CASE("2D moves and bounding box") {
    const MachineSpace space(2, 2, Dimension::TwoD);
    // (q0,0): write 1, Down, q1; (q1,0): write 1, Right, q0;
    // (q0,1)/(q1,1): halt (unreachable while cells are fresh).
    MachineRule rule = decode_rule(0, space);
    rule.table[0] = Instruction{false, 1, Move::Down, 1};
    rule.table[2] = Instruction{false, 1, Move::Right, 0};
    Configuration c(space);
    CHECK(step(c, rule) == StepOutcome::Running);
    CHECK(c.head == Position{0, 1});
    CHECK(step(c, rule) == StepOutcome::Running);
    CHECK(c.head == Position{1, 1});
    CHECK(step(c, rule) == StepOutcome::Running);
    CHECK(c.head == Position{1, 2});
    CHECK(c.visited_min == Position{0, 0});
    CHECK(c.visited_max == Position{1, 2});
}
