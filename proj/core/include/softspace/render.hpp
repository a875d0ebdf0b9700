#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "softspace/runner.hpp"

namespace softspace {

// A 3^k by 3^k grid addressed by the classic Peano curve (base-3
// construction with digit-parity reflections). peano_xy is a bijection
// from [0, 9^k) onto the grid, starts at (0,0), and consecutive indices
// are always unit Manhattan neighbours.
struct PeanoGrid {
    explicit PeanoGrid(uint32_t level);

    uint32_t level = 0;
    uint32_t side = 0;       // 3^level
    uint64_t capacity = 0;   // 9^level
};

std::pair<uint32_t, uint32_t> peano_xy(uint64_t t, uint32_t level);

// Smallest level whose capacity holds `count` cells.
uint32_t peano_level_for(uint64_t count);

struct Rgb {
    uint8_t r = 0, g = 0, b = 0;

    bool operator==(const Rgb&) const = default;
};

// The computability spectrum: white for censored machines, red for the
// segment's busy beavers, a gray ramp darkening with runtime, and a
// near-white background for cells beyond the rendered range.
struct RuntimePalette {
    Rgb nonhalting{255, 255, 255};
    Rgb busy_beaver{255, 0, 0};
    Rgb background{250, 250, 250};
    // Halting machines at `steps` of `max`: gray level
    // floor(225 * (max - steps) / max) + 15 on all three channels.
    Rgb gray(uint64_t steps, uint64_t max_steps) const;
};

struct Image {
    uint32_t width = 0;
    uint32_t height = 0;
    std::vector<uint8_t> rgb;  // 3 bytes per pixel, row-major

    Rgb pixel(uint32_t x, uint32_t y) const;
    void set_pixel(uint32_t x, uint32_t y, Rgb color);
};

// Lays the records of a contiguous index range along the Peano curve
// (record i at peano_xy(i)) and colors them by runtime. Throws RangeError
// when the records do not fit the level, with the minimal adequate level
// in the message.
Image render_field(const std::vector<RunRecord>& records, uint32_t level,
                   const RuntimePalette& palette = {});

// Binary PPM (P6), max value 255, byte-exact across platforms.
void write_ppm(const Image& image, std::ostream& out);
void write_ppm(const Image& image, const std::filesystem::path& path);
Image read_ppm(std::istream& in);

// Sidecar rows `index,x,y,steps,halted` matching a render_field call.
void write_field_csv(const std::vector<RunRecord>& records, uint32_t level, std::ostream& out);

} // namespace softspace
