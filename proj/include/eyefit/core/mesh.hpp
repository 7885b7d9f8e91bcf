/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/core/mesh.hpp
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

#include <vector>

namespace eyefit {

/**
 * Triangle mesh with per-vertex albedo and (derived) per-vertex normals.
 *
 * Model frame: x right, y down, z away from the camera (a front-facing
 * face occupies z < 0 and its outward normals point towards -z).
 */
struct Mesh
{
    Eigen::MatrixX3d vertices; // V x 3, model units
    Eigen::MatrixX3d albedo;   // V x 3, [0,1]
    Eigen::MatrixX3i triangles;
    Eigen::MatrixX3d normals;  // unit length after compute_normals

    int vertex_count() const { return static_cast<int>(vertices.rows()); }
    int triangle_count() const { return static_cast<int>(triangles.rows()); }
};

/**
 * Recomputes per-vertex normals as the normalized, area-weighted average of
 * adjacent face normals. Zero-area faces contribute nothing. Vertices with
 * no incident non-degenerate face get the +z unit normal and are returned
 * in the diagnostics list.
 */
inline std::vector<int> compute_normals(Mesh& mesh)
{
    if (mesh.triangle_count() < 1)
        throw InvalidArgument("compute_normals: mesh has no triangles");

    const int v_count = mesh.vertex_count();
    mesh.normals = Eigen::MatrixX3d::Zero(v_count, 3);

    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const int a = mesh.triangles(t, 0);
        const int b = mesh.triangles(t, 1);
        const int c = mesh.triangles(t, 2);
        const Eigen::Vector3d pa = mesh.vertices.row(a);
        const Eigen::Vector3d pb = mesh.vertices.row(b);
        const Eigen::Vector3d pc = mesh.vertices.row(c);
        // Cross product length is twice the face area, so this sum is the
        // area-weighted accumulation without an explicit weight factor.
        const Eigen::Vector3d n = (pb - pa).cross(pc - pa);
        if (n.squaredNorm() < 1e-20)
            continue; // degenerate face
        mesh.normals.row(a) += n;
        mesh.normals.row(b) += n;
        mesh.normals.row(c) += n;
    }

    std::vector<int> degenerate;
    for (int v = 0; v < v_count; ++v) {
        const double norm = mesh.normals.row(v).norm();
        if (norm < 1e-20) {
            mesh.normals.row(v) = Eigen::RowVector3d(0, 0, 1);
            degenerate.push_back(v);
        } else {
            mesh.normals.row(v) /= norm;
        }
    }
    return degenerate;
}

} // namespace eyefit
