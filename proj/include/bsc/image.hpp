#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "bsc/errors.hpp"

namespace bsc {

struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major, 0-255

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
};

namespace detail {

// Skips whitespace and '#' comments, then reads one unsigned decimal token.
inline bool next_pnm_int(const std::string& data, std::size_t& pos, long& out) {
    while (pos < data.size()) {
        const char c = data[pos];
        if (c == '#') {
            while (pos < data.size() && data[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++pos;
        } else {
            break;
        }
    }
    if (pos >= data.size() || !std::isdigit(static_cast<unsigned char>(data[pos])))
        return false;
    long v = 0;
    while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) {
        v = v * 10 + (data[pos] - '0');
        ++pos;
    }
    out = v;
    return true;
}

}  // namespace detail

// PGM reader, P2 (ascii) and P5 (binary). Values rescaled to 0-255 when
// maxval differs.
inline BinaryImage load_pgm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw MalformedHeader("load_pgm: expected P2 or P5 magic");
    const bool binary = bytes[1] == '5';
    std::size_t pos = 2;
    long w = 0, h = 0, maxval = 0;
    if (!detail::next_pnm_int(bytes, pos, w) ||
        !detail::next_pnm_int(bytes, pos, h) ||
        !detail::next_pnm_int(bytes, pos, maxval))
        throw MalformedHeader("load_pgm: incomplete header");
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
        throw MalformedHeader("load_pgm: bad dimensions or maxval");

    BinaryImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    img.pixels.reserve(count);

    if (binary) {
        ++pos;  // single whitespace after maxval
        const int bytes_per = maxval > 255 ? 2 : 1;
        if (bytes.size() - pos < count * bytes_per)
            throw TruncatedData("load_pgm: pixel data truncated");
        for (std::size_t i = 0; i < count; ++i) {
            long v;
            if (bytes_per == 1) {
                v = static_cast<unsigned char>(bytes[pos + i]);
            } else {
                v = (static_cast<unsigned char>(bytes[pos + 2 * i]) << 8) |
                    static_cast<unsigned char>(bytes[pos + 2 * i + 1]);
            }
            img.pixels.push_back(static_cast<std::uint8_t>(v * 255 / maxval));
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            long v;
            if (!detail::next_pnm_int(bytes, pos, v))
                throw TruncatedData("load_pgm: pixel data truncated");
            if (v > maxval) v = maxval;
            img.pixels.push_back(static_cast<std::uint8_t>(v * 255 / maxval));
        }
    }
    return img;
}

}  // namespace bsc
