/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/core/landmarks.hpp
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

#include <Eigen/Core>

#include <array>
#include <cstddef>

namespace eyefit {

/// Number of points in the 68-point facial landmark scheme.
inline constexpr int kNumLandmarks = 68;

/// Converts a 1-based iBUG landmark index to the 0-based array index used throughout.
inline constexpr int ibug(int one_based) { return one_based - 1; }

/**
 * A 68-point 2D landmark set in pixel coordinates (x right, y down).
 *
 * Indices follow the iBUG-68 annotation scheme. In the comments below,
 * indices are quoted 1-based as is conventional for that scheme: jaw 1-17,
 * brows 18-27, nose 28-36, right eye 37-42, left eye 43-48, mouth 49-68
 * ("right"/"left" are the subject's sides).
 */
struct LandmarkSet
{
    std::array<Eigen::Vector2d, kNumLandmarks> points{};
    std::array<double, kNumLandmarks> weights{};
    std::array<bool, kNumLandmarks> valid{};

    LandmarkSet()
    {
        points.fill(Eigen::Vector2d::Zero());
        weights = default_weights();
        valid.fill(true);
    }

    /// Per-point weights: 1.5 on the eye (37-48) and mouth (49-68) regions, 1.0 elsewhere.
    static std::array<double, kNumLandmarks> default_weights()
    {
        std::array<double, kNumLandmarks> w{};
        for (int i = 0; i < kNumLandmarks; ++i)
            w[i] = (i >= ibug(37)) ? 1.5 : 1.0;
        return w;
    }
};

/// 0-based indices of the subject's right eye (iBUG 37-42), in iBUG order p1..p6.
inline constexpr std::array<int, 6> right_eye_indices() { return {36, 37, 38, 39, 40, 41}; }

/// 0-based indices of the subject's left eye (iBUG 43-48), in iBUG order p1..p6.
inline constexpr std::array<int, 6> left_eye_indices() { return {42, 43, 44, 45, 46, 47}; }

/// Eye corner pair (p1, p4) of one eye, 0-based; their distance is the eye width.
inline constexpr std::array<int, 2> eye_corner_indices(bool right) { return right ? std::array<int, 2>{36, 39} : std::array<int, 2>{42, 45}; }

/// Mouth corner pair (iBUG 49, 55), 0-based; their distance is the mouth width.
inline constexpr std::array<int, 2> mouth_corner_indices() { return {48, 54}; }

} // namespace eyefit
