/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/io/png.hpp
 *
 * Copyright 2026 The eyefit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "eyefit/core/error.hpp"
#include "eyefit/core/image.hpp"

#include <zlib.h>

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

namespace eyefit::io {

/**
 * Minimal PNG codec: 8-bit grayscale/RGB/RGBA, no interlacing. Images are
 * written as 8-bit sRGB (color type 2) with fixed zlib settings, so
 * identical pixel data always produces identical bytes. Values are
 * converted between linear [0,1] floats and sRGB at this boundary only.
 */

namespace detail_png {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint32_t get_u32(const std::uint8_t* p)
{
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) | (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

inline void append_chunk(std::vector<std::uint8_t>& out, const char type[4], const std::vector<std::uint8_t>& data)
{
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    const uLong crc = ::crc32(0L, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start));
    put_u32(out, static_cast<std::uint32_t>(crc));
}

inline std::vector<std::uint8_t> zlib_compress(const std::vector<std::uint8_t>& raw)
{
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> out(bound);
    if (compress2(out.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw IoError("png: zlib compression failed");
    out.resize(bound);
    return out;
}

inline std::vector<std::uint8_t> zlib_decompress(const std::uint8_t* data, std::size_t size, std::size_t expected)
{
    std::vector<std::uint8_t> out(expected);
    uLongf out_size = static_cast<uLongf>(expected);
    const int rc = uncompress(out.data(), &out_size, data, static_cast<uLong>(size));
    if (rc != Z_OK || out_size != expected)
        throw IoError("png: corrupt or truncated compressed image data");
    return out;
}

inline int paeth(int a, int b, int c)
{
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc)
        return a;
    return pb <= pc ? b : c;
}

} // namespace detail_png

/// Encodes an image to PNG bytes (8-bit sRGB, color type 2, filter 0 rows).
inline std::vector<std::uint8_t> encode_png(const Image& image)
{
    if (image.empty())
        throw InvalidArgument("encode_png: empty image");
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(image.height) * (1 + 3 * image.width));
    for (int y = 0; y < image.height; ++y) {
        raw.push_back(0); // filter type: none
        for (int x = 0; x < image.width; ++x)
            for (int c = 0; c < 3; ++c)
                raw.push_back(to_srgb8(image.at(x, y, c)));
    }

    std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<std::uint8_t> ihdr;
    detail_png::put_u32(ihdr, static_cast<std::uint32_t>(image.width));
    detail_png::put_u32(ihdr, static_cast<std::uint32_t>(image.height));
    ihdr.push_back(8); // bit depth
    ihdr.push_back(2); // color type: truecolor
    ihdr.push_back(0); // compression
    ihdr.push_back(0); // filter method
    ihdr.push_back(0); // no interlace
    detail_png::append_chunk(out, "IHDR", ihdr);
    detail_png::append_chunk(out, "IDAT", detail_png::zlib_compress(raw));
    detail_png::append_chunk(out, "IEND", {});
    return out;
}

/// Decodes PNG bytes to a linear-light image. Rejects interlaced files and
/// bit depths other than 8; grayscale and alpha variants are converted to RGB.
inline Image decode_png(const std::uint8_t* data, std::size_t size)
{
    static const std::uint8_t signature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (size < 8 || std::memcmp(data, signature, 8) != 0)
        throw IoError("png: missing PNG signature");

    std::size_t pos = 8;
    std::uint32_t width = 0, height = 0;
    int color_type = -1;
    int channels = 0;
    std::vector<std::uint8_t> idat;
    bool saw_end = false;

    while (pos + 8 <= size) {
        const std::uint32_t len = detail_png::get_u32(data + pos);
        if (pos + 12 + static_cast<std::size_t>(len) > size)
            throw IoError("png: truncated chunk");
        const char* type = reinterpret_cast<const char*>(data + pos + 4);
        const std::uint8_t* payload = data + pos + 8;
        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13)
                throw IoError("png: malformed IHDR");
            width = detail_png::get_u32(payload);
            height = detail_png::get_u32(payload + 4);
            const int bit_depth = payload[8];
            color_type = payload[9];
            const int interlace = payload[12];
            if (bit_depth != 8)
                throw IoError("png: unsupported bit depth (only 8 supported)");
            if (interlace != 0)
                throw IoError("png: interlaced images not supported");
            switch (color_type) {
            case 0: channels = 1; break;
            case 2: channels = 3; break;
            case 4: channels = 2; break;
            case 6: channels = 4; break;
            default: throw IoError("png: unsupported color type (palette images not supported)");
            }
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), payload, payload + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_end = true;
            break;
        }
        pos += 12 + len;
    }
    if (width == 0 || height == 0 || color_type < 0)
        throw IoError("png: missing or invalid IHDR");
    if (!saw_end)
        throw IoError("png: truncated file (no IEND)");
    if (idat.empty())
        throw IoError("png: no image data");

    const std::size_t stride = static_cast<std::size_t>(width) * channels;
    const std::size_t expected = height * (stride + 1);
    std::vector<std::uint8_t> raw = detail_png::zlib_decompress(idat.data(), idat.size(), expected);

    // Undo per-row filters in place (sub/up/average/paeth).
    std::vector<std::uint8_t> prev(stride, 0);
    Image image(static_cast<int>(width), static_cast<int>(height));
    for (std::uint32_t y = 0; y < height; ++y) {
        std::uint8_t* row = raw.data() + y * (stride + 1);
        const int filter = row[0];
        std::uint8_t* cur = row + 1;
        for (std::size_t i = 0; i < stride; ++i) {
            const int a = i >= static_cast<std::size_t>(channels) ? cur[i - channels] : 0;
            const int b = prev[i];
            const int c = i >= static_cast<std::size_t>(channels) ? prev[i - channels] : 0;
            switch (filter) {
            case 0: break;
            case 1: cur[i] = static_cast<std::uint8_t>(cur[i] + a); break;
            case 2: cur[i] = static_cast<std::uint8_t>(cur[i] + b); break;
            case 3: cur[i] = static_cast<std::uint8_t>(cur[i] + (a + b) / 2); break;
            case 4: cur[i] = static_cast<std::uint8_t>(cur[i] + detail_png::paeth(a, b, c)); break;
            default: throw IoError("png: invalid row filter type");
            }
        }
        std::memcpy(prev.data(), cur, stride);
        for (std::uint32_t x = 0; x < width; ++x) {
            const std::uint8_t* px = cur + static_cast<std::size_t>(x) * channels;
            double rgb[3];
            if (channels <= 2)
                rgb[0] = rgb[1] = rgb[2] = from_srgb8(px[0]);
            else
                for (int c = 0; c < 3; ++c)
                    rgb[c] = from_srgb8(px[c]);
            for (int c = 0; c < 3; ++c)
                image.at(static_cast<int>(x), static_cast<int>(y), c) = rgb[c];
        }
    }
    return image;
}

inline void write_png(const std::string& path, const Image& image)
{
    const std::vector<std::uint8_t> bytes = encode_png(image);
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f)
        throw IoError("short write: " + path);
}

inline Image read_png(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return decode_png(bytes.data(), bytes.size());
}

} // namespace eyefit::io
