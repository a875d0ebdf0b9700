#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace softspace {

// Dense row-major 2D array of small symbols (0/1 for most uses).
struct Grid {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<uint8_t> cells;

    Grid() = default;
    Grid(uint32_t r, uint32_t c, uint8_t fill = 0)
        : rows(r), cols(c), cells(static_cast<size_t>(r) * c, fill) {}

    uint8_t at(uint32_t r, uint32_t c) const { return cells[static_cast<size_t>(r) * cols + c]; }
    void set(uint32_t r, uint32_t c, uint8_t v) { cells[static_cast<size_t>(r) * cols + c] = v; }

    uint64_t cell_count() const { return static_cast<uint64_t>(rows) * cols; }

    bool operator==(const Grid&) const = default;
};

// Text form: one row per line, symbols as digit characters.
void write_grid_text(const Grid& grid, std::ostream& out);
void write_grid_text(const Grid& grid, const std::filesystem::path& path);
Grid read_grid_text(std::istream& in);
Grid read_grid_text(const std::filesystem::path& path);

} // namespace softspace
