/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/elam/adjust.hpp
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
#include "eyefit/core/landmarks.hpp"

#include <array>
#include <set>
#include <string>

namespace eyefit::elam {

/**
 * Upper/lower eyelid landmark pairing used by the adjustment rule and the
 * local dynamic loss.
 *
 * Two variants are provided. `paper()` is the classic published index rule
 * (1-based pairs 37-41, 38-40, 43-47, 44-46); `ibug_vertical()` pairs each
 * upper-lid point with the lower-lid point geometrically below it
 * (38-42, 39-41, 44-48, 45-47). The first variant pairs an eye corner with
 * a lower-lid point, which only makes a difference on faces whose corner
 * and lower lid are vertically separated.
 */
struct EyelidPairing
{
    struct Pair
    {
        int upper; // 0-based landmark index whose y is adjusted
        int lower; // 0-based landmark index providing the target y
    };

    std::array<Pair, 2> right_eye;
    std::array<Pair, 2> left_eye;

    static EyelidPairing paper()
    {
        EyelidPairing p;
        p.right_eye = {Pair{ibug(37), ibug(41)}, Pair{ibug(38), ibug(40)}};
        p.left_eye = {Pair{ibug(43), ibug(47)}, Pair{ibug(44), ibug(46)}};
        return p;
    }

    static EyelidPairing ibug_vertical()
    {
        EyelidPairing p;
        p.right_eye = {Pair{ibug(38), ibug(42)}, Pair{ibug(39), ibug(41)}};
        p.left_eye = {Pair{ibug(44), ibug(48)}, Pair{ibug(45), ibug(47)}};
        return p;
    }

    static EyelidPairing from_name(const std::string& name)
    {
        if (name == "paper")
            return paper();
        if (name == "ibug-vertical")
            return ibug_vertical();
        throw InvalidArgument("unknown pairing mode '" + name + "' (expected paper or ibug-vertical)");
    }

    /// Checks the i-set and j-set are disjoint and the pairing is a bijection.
    void validate() const
    {
        std::set<int> uppers, lowers;
        for (const auto& eye : {right_eye, left_eye})
            for (const Pair& p : eye) {
                if (p.upper < 0 || p.upper >= kNumLandmarks || p.lower < 0 || p.lower >= kNumLandmarks)
                    throw InvalidArgument("EyelidPairing: index out of range");
                if (!uppers.insert(p.upper).second || !lowers.insert(p.lower).second)
                    throw InvalidArgument("EyelidPairing: pairing is not a bijection");
            }
        for (int u : uppers)
            if (lowers.count(u))
                throw InvalidArgument("EyelidPairing: upper and lower index sets overlap");
    }
};

/**
 * Eyelid landmark adjustment: for each pair (i, j) the upper-lid
 * y-coordinate is moved towards the lower lid in proportion to the eye's
 * closure probability,
 *
 *   y_i  <-  y_i + P * (y_j - y_i).
 *
 * The signed form keeps the intended semantics ("upper lid midway at
 * P = 0.5, on the lower lid at P = 1") under both y-up and y-down image
 * conventions. x-coordinates and all landmarks outside the upper-lid index
 * set are returned untouched; the input set is not modified.
 */
inline LandmarkSet adjust_landmarks(const LandmarkSet& landmarks, const EyelidPairing& pairing, double p_right,
                                    double p_left)
{
    if (p_right < 0.0 || p_right > 1.0 || p_left < 0.0 || p_left > 1.0)
        throw InvalidArgument(detail::format_message("adjust_landmarks: probabilities must be in [0,1], got ",
                                                     p_right, " and ", p_left));
    LandmarkSet out = landmarks;
    for (const auto& pr : pairing.right_eye)
        out.points[pr.upper].y() += p_right * (landmarks.points[pr.lower].y() - landmarks.points[pr.upper].y());
    for (const auto& pr : pairing.left_eye)
        out.points[pr.upper].y() += p_left * (landmarks.points[pr.lower].y() - landmarks.points[pr.upper].y());
    return out;
}

} // namespace eyefit::elam
