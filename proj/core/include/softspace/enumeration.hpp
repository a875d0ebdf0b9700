#pragma once

#include <cstdint>
#include <functional>

#include "softspace/machine.hpp"
#include "softspace/u128.hpp"

namespace softspace {

// Number of rules in a space: instructions_per_entry ^ entry_count.
// Throws UnsupportedSpaceError when the result exceeds 128 bits.
u128 space_size(const MachineSpace& space);

// Half-open index interval [start, end) within a space.
struct IndexRange {
    u128 start = 0;
    u128 end = 0;

    u128 length() const { return end - start; }
};

// Validates 0 <= start <= end <= space_size and returns the range.
IndexRange make_range(const MachineSpace& space, u128 start, u128 end);

// Full range [0, space_size).
IndexRange full_range(const MachineSpace& space);

// Ascending iteration over a validated range. A plain counter, packaged
// so range-for reads naturally at call sites.
class IndexStream {
public:
    explicit IndexStream(IndexRange range) : range_(range) {}

    class iterator {
    public:
        explicit iterator(u128 value) : value_(value) {}
        u128 operator*() const { return value_; }
        iterator& operator++() { ++value_; return *this; }
        bool operator!=(const iterator& other) const { return value_ != other.value_; }

    private:
        u128 value_;
    };

    iterator begin() const { return iterator(range_.start); }
    iterator end() const { return iterator(range_.end); }

private:
    IndexRange range_;
};

IndexStream iter_space(const MachineSpace& space, IndexRange range);

// Transforms generating a symmetry orbit, stored as a bitmask.
enum SymmetryTransform : uint8_t {
    kTransformNone = 0,
    kTransformComplement = 1,
    kTransformMirror = 2,
};

// One orbit of the group generated by symbol complement and mirror.
// The representative is the smallest index in the orbit; multiplicity is
// the orbit size (1, 2 or 4).
struct SymmetryClass {
    u128 representative = 0;
    uint8_t multiplicity = 1;
    uint8_t transforms = kTransformNone;
};

// All four orbit members of an index (representative first is NOT
// guaranteed; members are {id, complement, mirror, mirror∘complement}
// applied to `index`, with duplicates preserved).
struct SymmetryOrbit {
    u128 identity;
    u128 complement;
    u128 mirror;
    u128 mirror_complement;
};

SymmetryOrbit symmetry_orbit(u128 index, const MachineSpace& space);

// Streams the symmetry classes of a binary-alphabet space in ascending
// representative order. Classes partition the space: every index appears
// in exactly one orbit and multiplicities sum to space_size.
void reduce_by_symmetry(const MachineSpace& space,
                        const std::function<void(const SymmetryClass&)>& emit);

} // namespace softspace
