/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/loss/embedding.hpp
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
#include "eyefit/elam/probe.hpp" // subprocess helper
#include "eyefit/io/png.hpp"

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace eyefit::loss {

/**
 * Maps an image (optionally restricted to a face mask) to a fixed-length
 * feature vector for the perceptual loss. Implementations must be
 * deterministic: the same image yields bitwise the same vector.
 */
class EmbeddingProvider
{
public:
    virtual ~EmbeddingProvider() = default;
    virtual Eigen::VectorXd embed(const Image& image, const std::vector<std::uint8_t>* mask) const = 0;
    virtual std::string name() const = 0;
};

/**
 * Default embedding: a 4x4 grid of grayscale mean/std statistics over the
 * mask's bounding box (the whole image when no mask is given), giving a
 * deterministic 32-dimensional vector. A stand-in for learned face
 * encoders that exercises the cosine-distance code path without a network.
 */
class PatchStatsEmbedding : public EmbeddingProvider
{
public:
    Eigen::VectorXd embed(const Image& image, const std::vector<std::uint8_t>* mask) const override
    {
        constexpr int grid = 4;
        Eigen::VectorXd features = Eigen::VectorXd::Zero(grid * grid * 2);
        if (image.empty())
            return features;

        int x0 = 0, y0 = 0, x1 = image.width - 1, y1 = image.height - 1;
        if (mask) {
            if (static_cast<int>(mask->size()) != image.width * image.height)
                throw InvalidArgument("PatchStatsEmbedding: mask size does not match image");
            x0 = image.width; y0 = image.height; x1 = -1; y1 = -1;
            for (int y = 0; y < image.height; ++y)
                for (int x = 0; x < image.width; ++x)
                    if ((*mask)[static_cast<std::size_t>(y) * image.width + x]) {
                        x0 = std::min(x0, x); x1 = std::max(x1, x);
                        y0 = std::min(y0, y); y1 = std::max(y1, y);
                    }
            if (x1 < x0)
                return features; // empty mask: zero embedding (callers treat as error)
        }

        const double cell_w = (x1 - x0 + 1) / static_cast<double>(grid);
        const double cell_h = (y1 - y0 + 1) / static_cast<double>(grid);
        for (int gy = 0; gy < grid; ++gy) {
            for (int gx = 0; gx < grid; ++gx) {
                const int cx0 = x0 + static_cast<int>(std::floor(gx * cell_w));
                const int cx1 = x0 + static_cast<int>(std::floor((gx + 1) * cell_w)) - 1;
                const int cy0 = y0 + static_cast<int>(std::floor(gy * cell_h));
                const int cy1 = y0 + static_cast<int>(std::floor((gy + 1) * cell_h)) - 1;
                double sum = 0.0, sum2 = 0.0;
                long count = 0;
                for (int y = cy0; y <= cy1 && y <= y1; ++y)
                    for (int x = cx0; x <= cx1 && x <= x1; ++x) {
                        if (mask && !(*mask)[static_cast<std::size_t>(y) * image.width + x])
                            continue;
                        const double g = image.gray(x, y);
                        sum += g;
                        sum2 += g * g;
                        ++count;
                    }
                const int fi = (gy * grid + gx) * 2;
                if (count > 0) {
                    const double mean = sum / count;
                    features[fi] = mean;
                    features[fi + 1] = std::sqrt(std::max(0.0, sum2 / count - mean * mean));
                }
            }
        }
        return features;
    }

    std::string name() const override { return "patch-stats"; }
};

/**
 * External-process embedding: the (mask-zeroed) image is written as PNG to
 * a temporary path, the command receives the path as its argument and
 * must print d >= 8 whitespace-separated floats on stdout.
 */
class ExternalEmbedding : public EmbeddingProvider
{
public:
    explicit ExternalEmbedding(std::string command, int timeout_ms = 10000)
        : command_(std::move(command)), timeout_ms_(timeout_ms)
    {
    }

    Eigen::VectorXd embed(const Image& image, const std::vector<std::uint8_t>* mask) const override
    {
        Image masked = image;
        if (mask)
            for (int y = 0; y < image.height; ++y)
                for (int x = 0; x < image.width; ++x)
                    if (!(*mask)[static_cast<std::size_t>(y) * image.width + x])
                        for (int c = 0; c < 3; ++c)
                            masked.at(x, y, c) = 0.0;

        const std::string path = elam::detail_probe::temp_png_path("embed");
        io::write_png(path, masked.empty() ? Image(1, 1) : masked);
        const auto out = elam::detail_probe::run_command(command_, path, timeout_ms_);
        std::remove(path.c_str());
        if (!out.launched || out.timed_out || out.exit_code != 0)
            throw Error("embedding provider '" + command_ + "' could not be run");

        std::istringstream iss(out.stdout_text);
        std::vector<double> values;
        double v;
        while (iss >> v)
            values.push_back(v);
        if (values.size() < 8)
            throw Error(detail::format_message("embedding provider '", command_, "' returned ", values.size(),
                                               " floats, need at least 8"));
        return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    }

    std::string name() const override { return "command:" + command_; }

private:
    std::string command_;
    int timeout_ms_;
};

} // namespace eyefit::loss
