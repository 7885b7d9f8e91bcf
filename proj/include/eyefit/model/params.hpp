/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/model/params.hpp
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

namespace eyefit::model {

/// Number of spherical-harmonics illumination coefficients (9 per RGB channel).
inline constexpr int kGammaDims = 27;

/// Number of pose parameters (axis-angle rotation + translation).
inline constexpr int kPoseDims = 6;

/**
 * The full face parameter vector: shape coefficients alpha, expression
 * coefficients beta, texture coefficients delta, SH illumination gamma
 * (channel-major, gamma[c*9+k]) and a rigid pose (axis-angle rotation in
 * radians plus translation in model units).
 *
 * The flattened layout is [alpha | beta | delta | gamma | rotation | translation].
 */
struct FaceParams
{
    Eigen::VectorXd alpha;
    Eigen::VectorXd beta;
    Eigen::VectorXd delta;
    Eigen::VectorXd gamma = Eigen::VectorXd::Zero(kGammaDims);
    Eigen::Vector3d rotation = Eigen::Vector3d::Zero();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    FaceParams() = default;
    FaceParams(int shape_dims, int expression_dims, int texture_dims)
        : alpha(Eigen::VectorXd::Zero(shape_dims)), beta(Eigen::VectorXd::Zero(expression_dims)),
          delta(Eigen::VectorXd::Zero(texture_dims))
    {
    }

    int dimension() const
    {
        return static_cast<int>(alpha.size() + beta.size() + delta.size()) + kGammaDims + kPoseDims;
    }

    Eigen::VectorXd flatten() const
    {
        Eigen::VectorXd x(dimension());
        Eigen::Index off = 0;
        x.segment(off, alpha.size()) = alpha; off += alpha.size();
        x.segment(off, beta.size()) = beta; off += beta.size();
        x.segment(off, delta.size()) = delta; off += delta.size();
        x.segment(off, kGammaDims) = gamma; off += kGammaDims;
        x.segment<3>(off) = rotation; off += 3;
        x.segment<3>(off) = translation;
        return x;
    }

    static FaceParams unflatten(const Eigen::VectorXd& x, int shape_dims, int expression_dims, int texture_dims)
    {
        FaceParams p(shape_dims, expression_dims, texture_dims);
        if (x.size() != p.dimension())
            throw InvalidArgument(detail::format_message("FaceParams::unflatten: vector length ", x.size(),
                                                         " does not match dimension ", p.dimension()));
        Eigen::Index off = 0;
        p.alpha = x.segment(off, shape_dims); off += shape_dims;
        p.beta = x.segment(off, expression_dims); off += expression_dims;
        p.delta = x.segment(off, texture_dims); off += texture_dims;
        p.gamma = x.segment(off, kGammaDims); off += kGammaDims;
        p.rotation = x.segment<3>(off); off += 3;
        p.translation = x.segment<3>(off);
        return p;
    }
};

} // namespace eyefit::model
