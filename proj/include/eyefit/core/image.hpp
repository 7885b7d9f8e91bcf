/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/core/image.hpp
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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace eyefit {

/**
 * RGB raster image with linear-light values in [0,1].
 *
 * Pixels are stored interleaved, row-major, with the y axis pointing down
 * (raster convention). All rendering and losses operate on this type;
 * conversion to and from 8-bit sRGB happens only at the PNG boundary.
 */
struct Image
{
    int width = 0;
    int height = 0;
    std::vector<double> pixels; // size 3 * width * height, rgb interleaved

    Image() = default;
    Image(int w, int h, double fill = 0.0) : width(w), height(h), pixels(static_cast<std::size_t>(3) * w * h, fill)
    {
        if (w < 0 || h < 0)
            throw InvalidArgument("Image: negative dimensions");
    }

    bool empty() const { return width == 0 || height == 0; }

    double& at(int x, int y, int c) { return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }
    double at(int x, int y, int c) const { return pixels[(static_cast<std::size_t>(y) * width + x) * 3 + c]; }

    bool contains(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    /// Luminance proxy used by the patch-statistics embedding: plain channel mean.
    double gray(int x, int y) const { return (at(x, y, 0) + at(x, y, 1) + at(x, y, 2)) / 3.0; }
};

/// Axis-aligned integer pixel rectangle, half-open on neither side (x0..x1, y0..y1 inclusive).
struct PixelRect
{
    int x0 = 0, y0 = 0, x1 = -1, y1 = -1;

    bool valid() const { return x1 >= x0 && y1 >= y0; }
    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }

    PixelRect clamped(int image_width, int image_height) const
    {
        PixelRect r;
        r.x0 = std::max(0, x0);
        r.y0 = std::max(0, y0);
        r.x1 = std::min(image_width - 1, x1);
        r.y1 = std::min(image_height - 1, y1);
        return r;
    }
};

inline Image crop(const Image& image, const PixelRect& rect)
{
    const PixelRect r = rect.clamped(image.width, image.height);
    if (!r.valid())
        return Image();
    Image out(r.width(), r.height());
    for (int y = r.y0; y <= r.y1; ++y)
        for (int x = r.x0; x <= r.x1; ++x)
            for (int c = 0; c < 3; ++c)
                out.at(x - r.x0, y - r.y0, c) = image.at(x, y, c);
    return out;
}

/// sRGB transfer function (encode: linear -> display).
inline double srgb_encode(double u)
{
    u = std::clamp(u, 0.0, 1.0);
    return u <= 0.0031308 ? 12.92 * u : 1.055 * std::pow(u, 1.0 / 2.4) - 0.055;
}

/// sRGB transfer function (decode: display -> linear).
inline double srgb_decode(double v)
{
    v = std::clamp(v, 0.0, 1.0);
    return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

inline std::uint8_t to_srgb8(double linear) { return static_cast<std::uint8_t>(std::lround(srgb_encode(linear) * 255.0)); }
inline double from_srgb8(std::uint8_t v) { return srgb_decode(v / 255.0); }

} // namespace eyefit
