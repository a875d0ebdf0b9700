#include "softspace/output.hpp"

#include "softspace/errors.hpp"

namespace softspace {

std::string OutputObject::key() const {
    if (dim == Dimension::OneD) {
        return cells;
    }
    return std::to_string(rows) + "x" + std::to_string(cols) + ":" + cells;
}

std::string OutputObject::csv_field() const {
    if (dim == Dimension::OneD) {
        return cells;
    }
    std::string out;
    out.reserve(cells.size() + rows);
    for (uint32_t r = 0; r < rows; ++r) {
        if (r > 0) {
            out.push_back(';');
        }
        out.append(cells, static_cast<size_t>(r) * cols, cols);
    }
    return out;
}

OutputObject OutputObject::mirrored() const {
    OutputObject out = *this;
    for (uint32_t r = 0; r < rows; ++r) {
        for (uint32_t c = 0; c < cols; ++c) {
            out.cells[static_cast<size_t>(r) * cols + c] =
                cells[static_cast<size_t>(r) * cols + (cols - 1 - c)];
        }
    }
    return out;
}

OutputObject OutputObject::complemented() const {
    OutputObject out = *this;
    for (char& c : out.cells) {
        if (c == '0') {
            c = '1';
        } else if (c == '1') {
            c = '0';
        } else {
            throw ValidationError("complement is defined for binary outputs only");
        }
    }
    return out;
}

OutputObject parse_output_key(const std::string& key, Dimension dim, uint32_t symbols) {
    OutputObject out;
    out.dim = dim;
    std::string_view body = key;
    if (dim == Dimension::TwoD) {
        const size_t x = key.find('x');
        const size_t colon = key.find(':');
        if (x == std::string::npos || colon == std::string::npos || x == 0 || colon <= x + 1) {
            throw ValidationError("2D key must look like RxC:cells, got '" + key + "'");
        }
        try {
            out.rows = static_cast<uint32_t>(std::stoul(key.substr(0, x)));
            out.cols = static_cast<uint32_t>(std::stoul(key.substr(x + 1, colon - x - 1)));
        } catch (const std::exception&) {
            throw ValidationError("bad dimensions in 2D key '" + key + "'");
        }
        body = std::string_view(key).substr(colon + 1);
        if (out.rows == 0 || out.cols == 0 ||
            body.size() != static_cast<size_t>(out.rows) * out.cols) {
            throw ValidationError("cell count does not match dimensions in 2D key '" + key + "'");
        }
    } else {
        if (body.empty()) {
            throw ValidationError("1D output key must be nonempty");
        }
        out.rows = 1;
        out.cols = static_cast<uint32_t>(body.size());
    }
    for (char c : body) {
        if (c < '0' || static_cast<uint32_t>(c - '0') >= symbols) {
            throw ValidationError("symbol '" + std::string(1, c) + "' outside alphabet in key '" +
                                  key + "'");
        }
    }
    out.cells = std::string(body);
    return out;
}

} // namespace softspace
