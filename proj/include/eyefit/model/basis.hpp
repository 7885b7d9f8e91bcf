/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/model/basis.hpp
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
#include "eyefit/core/mesh.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <vector>

namespace eyefit::model {

/**
 * Linear statistical face model: mean shape/texture plus shape, expression
 * and texture PCA bases. Vertices are flattened as (x0,y0,z0, x1,y1,z1, ...).
 *
 * Immutable after load; all synthesis operations are pure functions, so a
 * single instance can be shared across threads.
 */
struct MorphableBasis
{
    Eigen::VectorXd mean_shape;       // 3V
    Eigen::VectorXd mean_texture;     // 3V, values in [0,1]
    Eigen::MatrixXd shape_basis;      // 3V x |alpha|
    Eigen::MatrixXd expression_basis; // 3V x |beta|
    Eigen::MatrixXd texture_basis;    // 3V x |delta|
    Eigen::MatrixX3i triangles;
    std::array<int, kNumLandmarks> landmark_vertex_ids{};
    std::vector<std::uint8_t> skin;   // per-vertex skin-region flag (attention source)
    double unit_scale = 0.0;          // model units per millimetre; 0 = unitless

    int vertex_count() const { return static_cast<int>(mean_shape.size()) / 3; }
    int shape_dims() const { return static_cast<int>(shape_basis.cols()); }
    int expression_dims() const { return static_cast<int>(expression_basis.cols()); }
    int texture_dims() const { return static_cast<int>(texture_basis.cols()); }

    void validate() const
    {
        const int v = vertex_count();
        if (mean_shape.size() % 3 != 0)
            throw InvalidArgument("MorphableBasis: mean_shape length is not a multiple of 3");
        if (mean_texture.size() != mean_shape.size())
            throw InvalidArgument("MorphableBasis: mean_texture length does not match mean_shape");
        if (shape_basis.rows() != mean_shape.size() || expression_basis.rows() != mean_shape.size() ||
            texture_basis.rows() != mean_shape.size())
            throw InvalidArgument("MorphableBasis: basis row count does not match 3*V");
        for (int t = 0; t < triangles.rows(); ++t)
            for (int k = 0; k < 3; ++k)
                if (triangles(t, k) < 0 || triangles(t, k) >= v)
                    throw InvalidArgument(detail::format_message(
                        "MorphableBasis: triangle ", t, " references vertex ", triangles(t, k), " >= V=", v));
        for (int i = 0; i < kNumLandmarks; ++i)
            if (landmark_vertex_ids[i] < 0 || landmark_vertex_ids[i] >= v)
                throw InvalidArgument(detail::format_message(
                    "MorphableBasis: landmark id ", i, " references vertex ", landmark_vertex_ids[i], " >= V=", v));
        if (static_cast<int>(skin.size()) != v)
            throw InvalidArgument("MorphableBasis: skin flag count does not match V");
        for (Eigen::Index i = 0; i < mean_texture.size(); ++i)
            if (mean_texture[i] < 0.0 || mean_texture[i] > 1.0)
                throw InvalidArgument("MorphableBasis: mean_texture value outside [0,1]");
    }
};

namespace detail_model {

inline void check_dim(const char* name, Eigen::Index got, Eigen::Index expected)
{
    if (got != expected)
        throw InvalidArgument(eyefit::detail::format_message(
            "coefficient vector '", name, "' has length ", got, ", expected ", expected));
}

inline Eigen::MatrixX3d to_rows(const Eigen::VectorXd& flat)
{
    const Eigen::Index v = flat.size() / 3;
    Eigen::MatrixX3d out(v, 3);
    for (Eigen::Index i = 0; i < v; ++i)
        out.row(i) = flat.segment<3>(3 * i).transpose();
    return out;
}

} // namespace detail_model

/// S(alpha, beta) = mean_shape + B_S alpha + B_E beta, reshaped to V x 3.
inline Eigen::MatrixX3d synthesize_shape(const MorphableBasis& basis, const Eigen::VectorXd& alpha,
                                         const Eigen::VectorXd& beta)
{
    detail_model::check_dim("alpha", alpha.size(), basis.shape_basis.cols());
    detail_model::check_dim("beta", beta.size(), basis.expression_basis.cols());
    const Eigen::VectorXd flat = basis.mean_shape + basis.shape_basis * alpha + basis.expression_basis * beta;
    return detail_model::to_rows(flat);
}

/// T(delta) = mean_texture + B_T delta, reshaped to V x 3. Not clamped here;
/// values are clamped to [0,1] at rasterization time only.
inline Eigen::MatrixX3d synthesize_texture(const MorphableBasis& basis, const Eigen::VectorXd& delta)
{
    detail_model::check_dim("delta", delta.size(), basis.texture_basis.cols());
    const Eigen::VectorXd flat = basis.mean_texture + basis.texture_basis * delta;
    return detail_model::to_rows(flat);
}

/// Builds the full mesh (shape + albedo + normals) for one coefficient set.
inline Mesh synthesize_mesh(const MorphableBasis& basis, const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta,
                            const Eigen::VectorXd& delta)
{
    Mesh mesh;
    mesh.vertices = synthesize_shape(basis, alpha, beta);
    mesh.albedo = synthesize_texture(basis, delta);
    mesh.triangles = basis.triangles;
    compute_normals(mesh);
    return mesh;
}

} // namespace eyefit::model
