#pragma once

#include <array>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "fscan/error.hpp"
#include "fscan/image.hpp"
#include "fscan/matrix.hpp"

namespace fscan {

// Round-trip-safe scalar formatting (17 significant digits).
inline std::string format_scalar(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Tropical values print their bottom element with the same spelling the
// file format accepts.
inline std::string format_tropical_scalar(double v) {
    if (v == TropicalSemiring::bottom()) return "-inf";
    return format_scalar(v);
}

namespace detail {

inline double parse_double(const std::string& token) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw ParseError("trailing characters in number '" + token + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("cannot parse number '" + token + "'");
    }
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

inline std::ifstream open_file(const std::string& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    return in;
}

}  // namespace detail

// Matrix literal format: first line "rows cols", then rows lines of cols
// space-separated decimals. The token "-inf" is accepted; for tropical
// instances it denotes the bottom element (canonicalized separately).
inline DenseMatrix parse_matrix(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw ParseError("matrix header must be 'rows cols'");
    if (rows == 0 || cols == 0) throw ParseError("matrix dimensions must be positive");
    DenseMatrix m(rows, cols);
    std::string token;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (!(in >> token)) throw ParseError("matrix body ended early");
            m(i, j) = detail::parse_double(token);
        }
    return m;
}

inline DenseMatrix read_matrix_file(const std::string& path) {
    auto in = detail::open_file(path);
    try {
        return parse_matrix(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// Replaces the "-inf" bottom spelling by the internal min-plus bottom.
inline void tropical_canonicalize(DenseMatrix& m) {
    for (double& v : m.entries())
        if (v == -std::numeric_limits<double>::infinity()) v = TropicalSemiring::bottom();
}

// Series file: one sample per line, fields separated by commas or spaces.
// Blank lines are skipped.
inline std::vector<std::vector<double>> parse_series(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto fields = detail::split_fields(line);
        if (fields.empty()) continue;
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(detail::parse_double(f));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<std::vector<double>> read_series_file(const std::string& path) {
    auto in = detail::open_file(path);
    try {
        return parse_series(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// Flattens a series row-major for the one-dimensional instances; a file
// "3,1,7,0" on one line and one value per line parse the same way.
inline std::vector<double> flatten_series(const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
    return out;
}

// Scalar grid CSV: header "m n 1", then m*n lines of one value, rows along
// y (line index = j*m + i).
struct ScalarGrid {
    std::size_t m = 0, n = 0;
    std::vector<double> values;  // index i + j*m
};

// Image CSV: header "m n 3", then m*n lines of three decimals in the same
// order.
inline RgbImage parse_image_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("missing image header");
    const auto head = detail::split_fields(header);
    if (head.size() != 3 || head[2] != "3")
        throw ParseError("image header must be 'm n 3'");
    RgbImage img;
    img.width = static_cast<std::size_t>(detail::parse_double(head[0]));
    img.height = static_cast<std::size_t>(detail::parse_double(head[1]));
    img.pixels.resize(img.width * img.height);
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        const auto fields = detail::split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 3) throw ParseError("image line must hold three decimals");
        if (count >= img.pixels.size()) throw ParseError("too many image lines");
        for (int k = 0; k < 3; ++k) img.pixels[count][k] = detail::parse_double(fields[k]);
        ++count;
    }
    if (count != img.pixels.size())
        throw ParseError("expected " + std::to_string(img.pixels.size()) + " pixels, got " +
                         std::to_string(count));
    return img;
}

inline ScalarGrid parse_scalar_grid_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ParseError("missing grid header");
    const auto head = detail::split_fields(header);
    if (head.size() != 3 || head[2] != "1")
        throw ParseError("scalar grid header must be 'm n 1'");
    ScalarGrid grid;
    grid.m = static_cast<std::size_t>(detail::parse_double(head[0]));
    grid.n = static_cast<std::size_t>(detail::parse_double(head[1]));
    grid.values.reserve(grid.m * grid.n);
    std::string line;
    while (std::getline(in, line)) {
        const auto fields = detail::split_fields(line);
        for (const auto& f : fields) grid.values.push_back(detail::parse_double(f));
    }
    if (grid.values.size() != grid.m * grid.n)
        throw ParseError("expected " + std::to_string(grid.m * grid.n) + " grid values, got " +
                         std::to_string(grid.values.size()));
    return grid;
}

// Binary PPM (P6), 8-bit, values scaled to [0, 1].
inline RgbImage parse_ppm(std::istream& in) {
    auto next_token = [&]() -> std::string {
        std::string tok;
        while (in) {
            const int c = in.get();
            if (c == EOF) break;
            if (c == '#') {
                std::string skip;
                std::getline(in, skip);
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) return tok;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
        if (tok.empty()) throw ParseError("unexpected end of PPM header");
        return tok;
    };
    if (next_token() != "P6") throw ParseError("only binary PPM (P6) is supported");
    const std::size_t width = static_cast<std::size_t>(detail::parse_double(next_token()));
    const std::size_t height = static_cast<std::size_t>(detail::parse_double(next_token()));
    const double maxval = detail::parse_double(next_token());
    if (maxval <= 0 || maxval > 255) throw ParseError("PPM maxval must be in (0, 255]");
    RgbImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(width * height);
    std::vector<char> raw(width * height * 3);
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw ParseError("PPM pixel data ended early");
    for (std::size_t idx = 0; idx < width * height; ++idx)
        for (int k = 0; k < 3; ++k)
            img.pixels[idx][k] =
                static_cast<double>(static_cast<unsigned char>(raw[idx * 3 + k])) / maxval;
    return img;
}

// Reads an image file, sniffing the PPM magic.
inline RgbImage read_image_file(const std::string& path) {
    auto probe = detail::open_file(path, true);
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    probe.close();
    auto in = detail::open_file(path, true);
    try {
        if (magic[0] == 'P' && magic[1] == '6') return parse_ppm(in);
        return parse_image_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline ScalarGrid read_scalar_grid_file(const std::string& path) {
    auto in = detail::open_file(path);
    try {
        return parse_scalar_grid_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace fscan
