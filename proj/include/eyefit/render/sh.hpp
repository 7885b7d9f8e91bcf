/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/render/sh.hpp
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
#include "eyefit/model/params.hpp"

#include <Eigen/Core>

#include <array>

namespace eyefit::render {

/// Constant (DC) band coefficient of the real spherical harmonics basis.
inline constexpr double kShDc = 0.2820948;

/// Real spherical harmonics basis up to band 2, evaluated at a unit normal.
inline std::array<double, 9> sh_basis(const Eigen::Vector3d& n)
{
    const double x = n.x(), y = n.y(), z = n.z();
    return {
        kShDc,
        0.4886025 * y,
        0.4886025 * z,
        0.4886025 * x,
        1.0925484 * x * y,
        1.0925484 * y * z,
        0.3153916 * (3.0 * z * z - 1.0),
        1.0925484 * x * z,
        0.5462742 * (x * x - y * y),
    };
}

/**
 * Lambertian shading under a 9-band-coefficient-per-channel SH environment:
 *   color_c(v) = albedo_c(v) * sum_k gamma[c*9+k] * H_k(n_v).
 *
 * Output is intentionally unclamped; clamping to [0,1] happens at
 * rasterization.
 */
inline Eigen::MatrixX3d sh_shade(const Eigen::MatrixX3d& normals, const Eigen::MatrixX3d& albedo,
                                 const Eigen::VectorXd& gamma)
{
    if (gamma.size() != model::kGammaDims)
        throw InvalidArgument(detail::format_message("sh_shade: gamma has length ", gamma.size(), ", expected ",
                                                     model::kGammaDims));
    if (normals.rows() != albedo.rows())
        throw InvalidArgument("sh_shade: normals and albedo disagree on vertex count");

    Eigen::MatrixX3d colors(normals.rows(), 3);
    for (Eigen::Index v = 0; v < normals.rows(); ++v) {
        const std::array<double, 9> h = sh_basis(normals.row(v).transpose());
        for (int c = 0; c < 3; ++c) {
            double irradiance = 0.0;
            for (int k = 0; k < 9; ++k)
                irradiance += gamma[c * 9 + k] * h[k];
            colors(v, c) = albedo(v, c) * irradiance;
        }
    }
    return colors;
}

/// Gamma vector for flat white illumination: shading becomes the identity on albedo.
inline Eigen::VectorXd neutral_gamma()
{
    Eigen::VectorXd gamma = Eigen::VectorXd::Zero(model::kGammaDims);
    for (int c = 0; c < 3; ++c)
        gamma[c * 9] = 1.0 / kShDc;
    return gamma;
}

} // namespace eyefit::render
