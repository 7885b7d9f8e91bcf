/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/render/rasterize.hpp
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

#include "eyefit/core/image.hpp"
#include "eyefit/core/mesh.hpp"
#include "eyefit/model/basis.hpp"
#include "eyefit/model/params.hpp"
#include "eyefit/render/camera.hpp"
#include "eyefit/render/sh.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace eyefit::render {

/**
 * Rasterization result: color image, z-buffer, face-region mask M,
 * attention mask A (interpolated per-vertex skin flags), and per-pixel
 * triangle id / barycentric coordinates.
 *
 * Invariants: A > 0 implies M; depth is finite exactly where M is set.
 */
struct RenderOutput
{
    int width = 0;
    int height = 0;
    Image color;
    std::vector<double> depth;               // +inf on background
    std::vector<std::uint8_t> mask;          // M
    std::vector<double> attention;           // A, in [0,1]
    std::vector<std::int32_t> triangle_id;   // -1 on background
    std::vector<std::array<double, 3>> barycentric;

    RenderOutput() = default;
    RenderOutput(int w, int h)
        : width(w), height(h), color(w, h), depth(static_cast<std::size_t>(w) * h, std::numeric_limits<double>::infinity()),
          mask(static_cast<std::size_t>(w) * h, 0), attention(static_cast<std::size_t>(w) * h, 0.0),
          triangle_id(static_cast<std::size_t>(w) * h, -1),
          barycentric(static_cast<std::size_t>(w) * h, {0.0, 0.0, 0.0})
    {
    }

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
};

/**
 * Z-buffered triangle rasterizer with perspective-correct barycentric
 * interpolation.
 *
 * Coverage rule: a pixel is covered by a triangle when its center
 * (x+0.5, y+0.5) lies inside or on the boundary of the projected triangle
 * (all three edge functions >= 0 after orienting by the signed area).
 * Depth ties are broken in favor of the lower triangle id. Triangles with
 * any near-plane-clipped vertex are dropped whole; a fully clipped mesh
 * produces an empty (all background) output.
 */
inline RenderOutput rasterize(const ProjectedVertices& projected, const Eigen::MatrixX3i& triangles,
                              const Eigen::MatrixX3d& vertex_colors, const Eigen::VectorXd& vertex_attention,
                              int width, int height)
{
    RenderOutput out(width, height);

    const auto edge = [](double ax, double ay, double bx, double by, double px, double py) {
        return (px - ax) * (by - ay) - (py - ay) * (bx - ax);
    };

    for (int t = 0; t < triangles.rows(); ++t) {
        const int ia = triangles(t, 0), ib = triangles(t, 1), ic = triangles(t, 2);
        if (projected.clipped[ia] || projected.clipped[ib] || projected.clipped[ic])
            continue;

        const double ax = projected.points(ia, 0), ay = projected.points(ia, 1);
        const double bx = projected.points(ib, 0), by = projected.points(ib, 1);
        const double cx = projected.points(ic, 0), cy = projected.points(ic, 1);

        double area = edge(ax, ay, bx, by, cx, cy);
        if (area == 0.0)
            continue;
        const double orient = area > 0.0 ? 1.0 : -1.0;
        area *= orient;

        const int x_min = std::max(0, static_cast<int>(std::floor(std::min({ax, bx, cx}) - 0.5)));
        const int x_max = std::min(width - 1, static_cast<int>(std::ceil(std::max({ax, bx, cx}) - 0.5)));
        const int y_min = std::max(0, static_cast<int>(std::floor(std::min({ay, by, cy}) - 0.5)));
        const int y_max = std::min(height - 1, static_cast<int>(std::ceil(std::max({ay, by, cy}) - 0.5)));

        const double za = projected.depths[ia], zb = projected.depths[ib], zc = projected.depths[ic];

        for (int y = y_min; y <= y_max; ++y) {
            for (int x = x_min; x <= x_max; ++x) {
                const double px = x + 0.5, py = y + 0.5;
                const double w0 = orient * edge(bx, by, cx, cy, px, py);
                const double w1 = orient * edge(cx, cy, ax, ay, px, py);
                const double w2 = orient * edge(ax, ay, bx, by, px, py);
                if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0)
                    continue;

                const double l0 = w0 / area, l1 = w1 / area, l2 = w2 / area;
                // Perspective-correct interpolation: blend attr/z and 1/z linearly
                // in screen space, then divide.
                const double inv_z = l0 / za + l1 / zb + l2 / zc;
                const double z = 1.0 / inv_z;

                const std::size_t idx = out.index(x, y);
                if (z < out.depth[idx] || (z == out.depth[idx] && t < out.triangle_id[idx])) {
                    out.depth[idx] = z;
                    out.triangle_id[idx] = t;
                    out.mask[idx] = 1;
                    out.barycentric[idx] = {l0, l1, l2};
                    for (int c = 0; c < 3; ++c) {
                        const double v = z * (l0 * vertex_colors(ia, c) / za + l1 * vertex_colors(ib, c) / zb +
                                              l2 * vertex_colors(ic, c) / zc);
                        out.color.at(x, y, c) = std::clamp(v, 0.0, 1.0);
                    }
                    const double a = z * (l0 * vertex_attention[ia] / za + l1 * vertex_attention[ib] / zb +
                                          l2 * vertex_attention[ic] / zc);
                    out.attention[idx] = std::clamp(a, 0.0, 1.0);
                }
            }
        }
    }
    return out;
}

/**
 * Full image-formation path for one parameter set: synthesize the mesh,
 * pose it through the camera extrinsics taken from the face pose, shade
 * with SH illumination and rasterize.
 */
inline RenderOutput render_model(const model::MorphableBasis& basis, const model::FaceParams& params,
                                 const Camera& camera)
{
    Mesh mesh;
    mesh.vertices = model::synthesize_shape(basis, params.alpha, params.beta);
    mesh.albedo = model::synthesize_texture(basis, params.delta);
    mesh.triangles = basis.triangles;
    compute_normals(mesh);

    Camera cam = camera;
    cam.rotation = params.rotation;
    cam.translation = params.translation;
    cam.canonicalize_rotation();

    // Shade with normals rotated into camera space so lighting is attached
    // to the camera frame, matching the convention of SH-lit face renderers.
    const Eigen::Matrix3d r = cam.rotation_matrix();
    const Eigen::MatrixX3d cam_normals = mesh.normals * r.transpose();
    const Eigen::MatrixX3d colors = sh_shade(cam_normals, mesh.albedo, params.gamma);

    Eigen::VectorXd attention(basis.vertex_count());
    for (int v = 0; v < basis.vertex_count(); ++v)
        attention[v] = basis.skin[v] ? 1.0 : 0.0;

    RenderOutput out;
    try {
        const ProjectedVertices projected = project(cam, mesh.vertices);
        out = rasterize(projected, mesh.triangles, colors, attention, camera.width, camera.height);
    } catch (const FaceBehindCameraError&) {
        out = RenderOutput(camera.width, camera.height);
    }
    return out;
}

} // namespace eyefit::render
