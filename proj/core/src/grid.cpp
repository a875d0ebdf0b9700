#include "softspace/grid.hpp"

#include <fstream>

#include "softspace/errors.hpp"

namespace softspace {

void write_grid_text(const Grid& grid, std::ostream& out) {
    for (uint32_t r = 0; r < grid.rows; ++r) {
        for (uint32_t c = 0; c < grid.cols; ++c) {
            out << static_cast<char>('0' + grid.at(r, c));
        }
        out << "\n";
    }
}

void write_grid_text(const Grid& grid, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_grid_text(grid, out);
    out.flush();
    if (!out) {
        throw IoError("failed writing grid to '" + path.string() + "'");
    }
}

Grid read_grid_text(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        for (char c : line) {
            if (c < '0' || c > '9') {
                throw ParseError("grid rows must be digit characters", line_number);
            }
        }
        if (!lines.empty() && line.size() != lines.front().size()) {
            throw ParseError("ragged grid row", line_number);
        }
        lines.push_back(line);
    }
    if (lines.empty()) {
        throw ParseError("empty grid", 1);
    }
    Grid grid(static_cast<uint32_t>(lines.size()), static_cast<uint32_t>(lines.front().size()));
    for (uint32_t r = 0; r < grid.rows; ++r) {
        for (uint32_t c = 0; c < grid.cols; ++c) {
            grid.set(r, c, static_cast<uint8_t>(lines[r][c] - '0'));
        }
    }
    return grid;
}

Grid read_grid_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open grid file '" + path.string() + "'");
    }
    return read_grid_text(in);
}

} // namespace softspace
