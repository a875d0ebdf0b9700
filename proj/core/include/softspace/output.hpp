#pragma once

#include <cstdint>
#include <string>

#include "softspace/machine.hpp"

namespace softspace {

// The object a halting machine leaves behind: the tape over the visited
// interval (1D) or visited bounding box (2D, row-major, top row first).
// Cells are digit characters '0'..; never-visited cells inside a 2D box
// hold the blank fill of the run.
struct OutputObject {
    Dimension dim = Dimension::OneD;
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::string cells;

    // Canonical table key: the cell string for 1D, "RxC:cells" for 2D.
    std::string key() const;

    // CSV field: 1D as-is, 2D rows joined with ';'.
    std::string csv_field() const;

    // Horizontal reflection (what mirroring a rule does to its output).
    OutputObject mirrored() const;

    // 0/1 complement; binary outputs only.
    OutputObject complemented() const;

    bool operator==(const OutputObject&) const = default;
};

// Parses and validates a table key against a space's dimension and
// alphabet. Throws ValidationError on malformed keys.
OutputObject parse_output_key(const std::string& key, Dimension dim, uint32_t symbols);

} // namespace softspace
