#include "softspace/machine.hpp"

#include <algorithm>

#include "softspace/enumeration.hpp"

namespace softspace {

namespace {

const std::vector<Move> kMoves1D = {Move::Left, Move::Right};
const std::vector<Move> kMoves2D = {Move::Up, Move::Down, Move::Left, Move::Right};

// Index of a move within the dimension's enumeration order.
uint32_t move_index(Move move, const MachineSpace& space) {
    const std::vector<Move>& moves = space.moves();
    for (uint32_t i = 0; i < moves.size(); ++i) {
        if (moves[i] == move) {
            return i;
        }
    }
    throw ValidationError("move not valid for this dimension");
}

uint64_t pack_position(const Position& p) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(static_cast<int32_t>(p.x))) << 32) |
           static_cast<uint64_t>(static_cast<uint32_t>(static_cast<int32_t>(p.y)));
}

} // namespace

MachineSpace::MachineSpace(uint32_t states, uint32_t symbols, Dimension dim)
    : states_(states), symbols_(symbols), dim_(dim) {
    if (states_ < 1) {
        throw ValidationError("machine space needs at least one state");
    }
    if (symbols_ < 2) {
        throw ValidationError("machine space needs at least two symbols");
    }
}

uint32_t MachineSpace::instructions_per_entry() const {
    return symbols_ * (move_count() * states_ + 1);
}

const std::vector<Move>& MachineSpace::moves() const {
    return dim_ == Dimension::OneD ? kMoves1D : kMoves2D;
}

Instruction decode_instruction(uint32_t code, const MachineSpace& space) {
    const uint32_t m = space.symbols();
    const uint32_t n = space.states();
    if (code >= space.instructions_per_entry()) {
        throw RangeError("instruction code " + std::to_string(code) + " out of range");
    }
    Instruction ins;
    if (code < m) {
        ins.is_halt = true;
        ins.write = static_cast<uint8_t>(code);
        return ins;
    }
    const uint32_t c = code - m;
    const uint32_t per_write = space.move_count() * n;
    ins.is_halt = false;
    ins.write = static_cast<uint8_t>(c / per_write);
    ins.move = space.moves()[(c / n) % space.move_count()];
    ins.next_state = static_cast<uint8_t>(c % n);
    return ins;
}

uint32_t encode_instruction(const Instruction& ins, const MachineSpace& space) {
    const uint32_t m = space.symbols();
    const uint32_t n = space.states();
    if (ins.write >= m) {
        throw ValidationError("instruction writes symbol " + std::to_string(ins.write) +
                              " outside the alphabet");
    }
    if (ins.is_halt) {
        return ins.write;
    }
    if (ins.next_state >= n) {
        throw ValidationError("instruction targets state " + std::to_string(ins.next_state) +
                              " outside the space");
    }
    const uint32_t mi = move_index(ins.move, space);
    return m + (static_cast<uint32_t>(ins.write) * space.move_count() + mi) * n + ins.next_state;
}

MachineRule decode_rule(u128 index, const MachineSpace& space) {
    const u128 size = space_size(space);
    if (index >= size) {
        throw RangeError("rule index " + to_string(index) + " out of range for space of size " +
                         to_string(size));
    }
    MachineRule rule{space, {}};
    rule.table.reserve(space.entry_count());
    const uint32_t ipe = space.instructions_per_entry();
    for (uint32_t entry = 0; entry < space.entry_count(); ++entry) {
        rule.table.push_back(decode_instruction(static_cast<uint32_t>(index % ipe), space));
        index /= ipe;
    }
    return rule;
}

u128 encode_rule(const MachineRule& rule) {
    const MachineSpace& space = rule.space;
    if (rule.table.size() != space.entry_count()) {
        throw ValidationError("rule table has " + std::to_string(rule.table.size()) +
                              " entries, expected " + std::to_string(space.entry_count()));
    }
    const uint32_t ipe = space.instructions_per_entry();
    u128 index = 0;
    for (uint32_t entry = space.entry_count(); entry-- > 0;) {
        index = index * ipe + encode_instruction(rule.table[entry], space);
    }
    return index;
}

Configuration::Configuration(const MachineSpace&) {}

uint8_t Configuration::read(const Position& p) const {
    auto it = tape_.find(pack_position(p));
    return it == tape_.end() ? 0 : it->second;
}

void Configuration::write(const Position& p, uint8_t symbol) {
    tape_[pack_position(p)] = symbol;
}

uint64_t Configuration::nonblank_cells() const {
    uint64_t count = 0;
    for (const auto& [pos, symbol] : tape_) {
        if (symbol != 0) {
            ++count;
        }
    }
    return count;
}

StepOutcome step(Configuration& config, const MachineRule& rule) {
    const uint32_t m = rule.space.symbols();
    const uint8_t symbol = config.read(config.head);
    const Instruction& ins = rule.table[static_cast<uint32_t>(config.state) * m + symbol];
    config.write(config.head, ins.write);
    ++config.steps;
    if (ins.is_halt) {
        return StepOutcome::Halted;
    }
    switch (ins.move) {
        case Move::Left: --config.head.x; break;
        case Move::Right: ++config.head.x; break;
        case Move::Up: --config.head.y; break;
        case Move::Down: ++config.head.y; break;
    }
    config.visited_min.x = std::min(config.visited_min.x, config.head.x);
    config.visited_min.y = std::min(config.visited_min.y, config.head.y);
    config.visited_max.x = std::max(config.visited_max.x, config.head.x);
    config.visited_max.y = std::max(config.visited_max.y, config.head.y);
    config.state = ins.next_state;
    return StepOutcome::Running;
}

MachineRule mirror_rule(const MachineRule& rule) {
    MachineRule out = rule;
    for (Instruction& ins : out.table) {
        if (ins.is_halt) {
            continue;
        }
        if (ins.move == Move::Left) {
            ins.move = Move::Right;
        } else if (ins.move == Move::Right) {
            ins.move = Move::Left;
        }
    }
    return out;
}

MachineRule complement_rule(const MachineRule& rule) {
    if (rule.space.symbols() != 2) {
        throw UnsupportedSpaceError("symbol complement is defined for binary alphabets only");
    }
    MachineRule out = rule;
    const uint32_t m = 2;
    for (uint32_t state = 0; state < rule.space.states(); ++state) {
        for (uint32_t symbol = 0; symbol < m; ++symbol) {
            Instruction ins = rule.at(state, 1 - symbol);
            ins.write = static_cast<uint8_t>(1 - ins.write);
            out.table[state * m + symbol] = ins;
        }
    }
    return out;
}

} // namespace softspace
