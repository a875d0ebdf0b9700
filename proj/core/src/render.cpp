#include "softspace/render.hpp"

#include <fstream>
#include <ostream>

#include "softspace/errors.hpp"

namespace softspace {

PeanoGrid::PeanoGrid(uint32_t k) : level(k) {
    if (k < 1 || k > 20) {
        throw RangeError("peano level must be in [1, 20]");
    }
    side = 1;
    capacity = 1;
    for (uint32_t i = 0; i < k; ++i) {
        side *= 3;
        capacity *= 9;
    }
}

std::pair<uint32_t, uint32_t> peano_xy(uint64_t t, uint32_t level) {
    const PeanoGrid grid(level);
    if (t >= grid.capacity) {
        throw RangeError("peano index " + std::to_string(t) + " out of range for level " +
                         std::to_string(level));
    }
    // Ternary digits of t, most significant first: t1 t2 ... t_{2k}.
    // Peano's construction: the i-th x digit is t_{2i-1} complemented
    // (d -> 2-d) once per odd sum of the even-position digits before it,
    // and symmetrically for y.
    uint32_t digits[40];
    for (int i = 2 * static_cast<int>(level) - 1; i >= 0; --i) {
        digits[i] = static_cast<uint32_t>(t % 3);
        t /= 3;
    }
    uint32_t x = 0;
    uint32_t y = 0;
    uint32_t even_sum = 0;  // t2 + t4 + ... so far
    uint32_t odd_sum = 0;   // t1 + t3 + ... so far
    for (uint32_t i = 0; i < level; ++i) {
        const uint32_t tx = digits[2 * i];      // t_{2i+1}
        const uint32_t ty = digits[2 * i + 1];  // t_{2i+2}
        const uint32_t xd = (even_sum % 2 == 0) ? tx : 2 - tx;
        odd_sum += tx;
        const uint32_t yd = (odd_sum % 2 == 0) ? ty : 2 - ty;
        even_sum += ty;
        x = x * 3 + xd;
        y = y * 3 + yd;
    }
    return {x, y};
}

uint32_t peano_level_for(uint64_t count) {
    uint32_t level = 1;
    uint64_t capacity = 9;
    while (capacity < count) {
        ++level;
        capacity *= 9;
    }
    return level;
}

Rgb RuntimePalette::gray(uint64_t steps, uint64_t max_steps) const {
    const uint64_t level = 225 * (max_steps - steps) / max_steps + 15;
    const uint8_t g = static_cast<uint8_t>(level);
    return Rgb{g, g, g};
}

Rgb Image::pixel(uint32_t x, uint32_t y) const {
    const size_t off = (static_cast<size_t>(y) * width + x) * 3;
    return Rgb{rgb[off], rgb[off + 1], rgb[off + 2]};
}

void Image::set_pixel(uint32_t x, uint32_t y, Rgb color) {
    const size_t off = (static_cast<size_t>(y) * width + x) * 3;
    rgb[off] = color.r;
    rgb[off + 1] = color.g;
    rgb[off + 2] = color.b;
}

Image render_field(const std::vector<RunRecord>& records, uint32_t level,
                   const RuntimePalette& palette) {
    const PeanoGrid grid(level);
    if (records.size() > grid.capacity) {
        throw RangeError("range of " + std::to_string(records.size()) +
                         " records exceeds level " + std::to_string(level) + " capacity " +
                         std::to_string(grid.capacity) + "; minimal level is " +
                         std::to_string(peano_level_for(records.size())));
    }
    uint64_t max_steps = 0;
    for (const RunRecord& rec : records) {
        if (rec.halted) {
            max_steps = std::max(max_steps, rec.steps);
        }
    }
    Image image;
    image.width = grid.side;
    image.height = grid.side;
    image.rgb.assign(static_cast<size_t>(grid.side) * grid.side * 3, 0);
    for (uint64_t t = 0; t < grid.capacity; ++t) {
        const auto [x, y] = peano_xy(t, level);
        Rgb color = palette.background;
        if (t < records.size()) {
            const RunRecord& rec = records[t];
            if (!rec.halted) {
                color = palette.nonhalting;
            } else if (rec.steps == max_steps) {
                color = palette.busy_beaver;
            } else {
                color = palette.gray(rec.steps, max_steps);
            }
        }
        image.set_pixel(x, y, color);
    }
    return image;
}

void write_ppm(const Image& image, std::ostream& out) {
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.rgb.data()),
              static_cast<std::streamsize>(image.rgb.size()));
}

void write_ppm(const Image& image, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_ppm(image, out);
    out.flush();
    if (!out) {
        throw IoError("failed writing image to '" + path.string() + "'");
    }
}

Image read_ppm(std::istream& in) {
    std::string magic;
    in >> magic;
    if (magic != "P6") {
        throw ParseError("not a P6 PPM", 1);
    }
    uint32_t width = 0, height = 0, maxval = 0;
    in >> width >> height >> maxval;
    if (!in || maxval != 255) {
        throw ParseError("unsupported PPM header", 1);
    }
    in.get();  // single whitespace after maxval
    Image image;
    image.width = width;
    image.height = height;
    image.rgb.resize(static_cast<size_t>(width) * height * 3);
    in.read(reinterpret_cast<char*>(image.rgb.data()),
            static_cast<std::streamsize>(image.rgb.size()));
    if (in.gcount() != static_cast<std::streamsize>(image.rgb.size())) {
        throw ParseError("truncated PPM payload", 2);
    }
    return image;
}

void write_field_csv(const std::vector<RunRecord>& records, uint32_t level, std::ostream& out) {
    out << "index,x,y,steps,halted\n";
    for (uint64_t t = 0; t < records.size(); ++t) {
        const auto [x, y] = peano_xy(t, level);
        const RunRecord& rec = records[t];
        out << to_string(rec.index) << "," << x << "," << y << "," << rec.steps << ","
            << (rec.halted ? 1 : 0) << "\n";
    }
}

} // namespace softspace
