#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "softspace/errors.hpp"
#include "softspace/u128.hpp"

namespace softspace {

enum class Dimension : uint8_t { OneD = 1, TwoD = 2 };

// Move order fixes the enumeration of Step instructions inside a rule
// digit and must never change once tables or images are published:
// 1D uses {Left, Right}, 2D uses {Up, Down, Left, Right}.
enum class Move : uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

// x grows to the right, y grows downward (matrix convention), so Up is
// y-1 and a 2D output's row 0 is the topmost visited row.
struct Position {
    int64_t x = 0;
    int64_t y = 0;

    bool operator==(const Position&) const = default;
};

// An (n states, m symbols) machine space in one or two dimensions.
class MachineSpace {
public:
    MachineSpace(uint32_t states, uint32_t symbols, Dimension dim);

    uint32_t states() const { return states_; }
    uint32_t symbols() const { return symbols_; }
    Dimension dimension() const { return dim_; }

    // m*(2n+1) in 1D, m*(4n+1) in 2D: m halt writes plus
    // m writes x moves x n next states.
    uint32_t instructions_per_entry() const;

    // Rule table length: one entry per (state, symbol) pair.
    uint32_t entry_count() const { return states_ * symbols_; }

    uint32_t move_count() const { return dim_ == Dimension::OneD ? 2 : 4; }

    // Moves in enumeration order for this dimension.
    const std::vector<Move>& moves() const;

    bool operator==(const MachineSpace&) const = default;

private:
    uint32_t states_;
    uint32_t symbols_;
    Dimension dim_;
};

// One transition table entry: either Halt{write} or
// Step{write, move, next_state}.
struct Instruction {
    bool is_halt = true;
    uint8_t write = 0;
    Move move = Move::Left;    // valid iff !is_halt
    uint8_t next_state = 0;    // valid iff !is_halt
};

// A total transition table indexed by entry = state * symbols + symbol.
struct MachineRule {
    MachineSpace space;
    std::vector<Instruction> table;

    const Instruction& at(uint32_t state, uint32_t symbol) const {
        return table[state * space.symbols() + symbol];
    }
};

// Canonical rule numbering. The index is written in base
// instructions_per_entry with entry_count digits, entry 0 being the least
// significant digit. Within a digit, codes 0..m-1 are Halt{write = code}
// and codes >= m enumerate Step instructions in (write, move, next_state)
// lexicographic order over the dimension's move list.
MachineRule decode_rule(u128 index, const MachineSpace& space);
u128 encode_rule(const MachineRule& rule);

// Decodes one instruction code in [0, instructions_per_entry).
Instruction decode_instruction(uint32_t code, const MachineSpace& space);
uint32_t encode_instruction(const Instruction& ins, const MachineSpace& space);

// A running machine. The tape is conceptually unbounded with blank 0;
// only written cells are stored. Visited bounds cover every head
// position so far, including the initial one.
struct Configuration {
    explicit Configuration(const MachineSpace& space);

    int state = 0;
    Position head;
    Position visited_min;
    Position visited_max;
    uint64_t steps = 0;

    uint8_t read(const Position& p) const;
    void write(const Position& p, uint8_t symbol);

    // Written cells holding a non-blank symbol; bounded above by steps.
    uint64_t nonblank_cells() const;

    const std::unordered_map<uint64_t, uint8_t>& written_cells() const { return tape_; }

private:
    std::unordered_map<uint64_t, uint8_t> tape_;
};

enum class StepOutcome : uint8_t { Running, Halted };

// Executes one transition. A Step instruction writes, moves the head one
// cell and switches state; a Halt instruction writes its symbol at the
// head without moving. Both count as one step.
StepOutcome step(Configuration& config, const MachineRule& rule);

// Rule transforms used by symmetry reduction and the symmetry tests.
// mirror_rule swaps Left and Right everywhere; running the mirrored rule
// reproduces the original run reflected in x. complement_rule swaps the
// written and read symbols 0 and 1; running it from an all-ones tape
// reproduces the original blank-tape run with all symbols complemented.
MachineRule mirror_rule(const MachineRule& rule);
MachineRule complement_rule(const MachineRule& rule);

} // namespace softspace
