#include "softspace/enumeration.hpp"

#include <algorithm>

#include "softspace/errors.hpp"

namespace softspace {

u128 space_size(const MachineSpace& space) {
    constexpr u128 kMax = ~static_cast<u128>(0);
    const u128 base = space.instructions_per_entry();
    u128 result = 1;
    for (uint32_t i = 0; i < space.entry_count(); ++i) {
        if (result > kMax / base) {
            throw UnsupportedSpaceError("space (" + std::to_string(space.states()) + "," +
                                        std::to_string(space.symbols()) +
                                        ") exceeds 128-bit index range");
        }
        result *= base;
    }
    return result;
}

IndexRange make_range(const MachineSpace& space, u128 start, u128 end) {
    const u128 size = space_size(space);
    if (start > end || end > size) {
        throw RangeError("invalid range [" + to_string(start) + ", " + to_string(end) +
                         ") for space of size " + to_string(size));
    }
    return IndexRange{start, end};
}

IndexRange full_range(const MachineSpace& space) {
    return IndexRange{0, space_size(space)};
}

IndexStream iter_space(const MachineSpace& space, IndexRange range) {
    return IndexStream(make_range(space, range.start, range.end));
}

SymmetryOrbit symmetry_orbit(u128 index, const MachineSpace& space) {
    const MachineRule rule = decode_rule(index, space);
    const MachineRule mirrored = mirror_rule(rule);
    const MachineRule complemented = complement_rule(rule);
    return SymmetryOrbit{
        index,
        encode_rule(complemented),
        encode_rule(mirrored),
        encode_rule(mirror_rule(complemented)),
    };
}

void reduce_by_symmetry(const MachineSpace& space,
                        const std::function<void(const SymmetryClass&)>& emit) {
    if (space.symbols() != 2) {
        throw UnsupportedSpaceError("symmetry reduction requires a binary alphabet");
    }
    for (u128 index : iter_space(space, full_range(space))) {
        const SymmetryOrbit orbit = symmetry_orbit(index, space);
        const u128 members[4] = {orbit.identity, orbit.complement, orbit.mirror,
                                 orbit.mirror_complement};
        const u128 rep = std::min({members[0], members[1], members[2], members[3]});
        if (rep != index) {
            continue;
        }
        SymmetryClass cls;
        cls.representative = rep;
        if (orbit.complement != rep) {
            cls.transforms |= kTransformComplement;
        }
        if (orbit.mirror != rep) {
            cls.transforms |= kTransformMirror;
        }
        uint8_t distinct = 1;
        for (int i = 1; i < 4; ++i) {
            bool seen = false;
            for (int j = 0; j < i; ++j) {
                seen = seen || members[i] == members[j];
            }
            if (!seen) {
                ++distinct;
            }
        }
        cls.multiplicity = distinct;
        emit(cls);
    }
}

} // namespace softspace
