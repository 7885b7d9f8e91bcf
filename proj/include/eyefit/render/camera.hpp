/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/render/camera.hpp
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
#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace eyefit::render {

/// Vertices closer to the camera plane than this (in model units) are clipped.
inline constexpr double kNearPlane = 1e-4;

/// Rodrigues' formula: axis-angle vector to rotation matrix.
inline Eigen::Matrix3d axis_angle_to_matrix(const Eigen::Vector3d& omega)
{
    const double theta = omega.norm();
    if (theta < 1e-12)
        return Eigen::Matrix3d::Identity();
    return Eigen::AngleAxisd(theta, omega / theta).toRotationMatrix();
}

inline Eigen::Matrix3d skew(const Eigen::Vector3d& v)
{
    Eigen::Matrix3d m;
    m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
    return m;
}

/**
 * Partial derivatives of the rotation matrix with respect to the three
 * axis-angle components (Gallego-Yezzi form), with the usual small-angle
 * limit dR/dw_i = [e_i]_x at the identity.
 */
inline std::array<Eigen::Matrix3d, 3> rotation_matrix_derivatives(const Eigen::Vector3d& omega)
{
    std::array<Eigen::Matrix3d, 3> d;
    const double theta2 = omega.squaredNorm();
    if (theta2 < 1e-16) {
        for (int i = 0; i < 3; ++i)
            d[i] = skew(Eigen::Vector3d::Unit(i));
        return d;
    }
    const Eigen::Matrix3d r = axis_angle_to_matrix(omega);
    const Eigen::Matrix3d eye_minus_r = Eigen::Matrix3d::Identity() - r;
    for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d v = omega.cross(eye_minus_r.col(i));
        d[i] = (omega[i] * skew(omega) + skew(v)) * r / theta2;
    }
    return d;
}

/**
 * Perspective camera. Image coordinates are raster pixels with x to the
 * right and y pointing DOWN; this convention is fixed for the whole
 * library because the eyelid adjustment rule is convention sensitive.
 *
 * Extrinsics map model space to camera space: c = R v + T. For fitting,
 * R and T come directly from the face pose parameters.
 */
struct Camera
{
    double focal = 500.0; // pixels
    double cx = 0.0;
    double cy = 0.0;
    int width = 1;
    int height = 1;
    Eigen::Vector3d rotation = Eigen::Vector3d::Zero(); // axis-angle, radians
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    Camera() = default;
    Camera(double focal_px, double cx_px, double cy_px, int w, int h,
           const Eigen::Vector3d& rot = Eigen::Vector3d::Zero(),
           const Eigen::Vector3d& trans = Eigen::Vector3d::Zero())
        : focal(focal_px), cx(cx_px), cy(cy_px), width(w), height(h), rotation(rot), translation(trans)
    {
        if (focal <= 0.0)
            throw InvalidArgument("Camera: focal length must be positive");
        if (width < 1 || height < 1)
            throw InvalidArgument("Camera: image dimensions must be at least 1x1");
        canonicalize_rotation();
    }

    /// Centered camera with the principal point at the image middle.
    static Camera centered(double focal_px, int w, int h, const Eigen::Vector3d& rot = Eigen::Vector3d::Zero(),
                           const Eigen::Vector3d& trans = Eigen::Vector3d::Zero())
    {
        return Camera(focal_px, w / 2.0, h / 2.0, w, h, rot, trans);
    }

    /// Reduces the rotation magnitude modulo 2*pi so it stays below one full turn.
    void canonicalize_rotation()
    {
        const double theta = rotation.norm();
        constexpr double two_pi = 2.0 * std::numbers::pi;
        if (theta >= two_pi)
            rotation *= std::fmod(theta, two_pi) / theta;
    }

    Eigen::Matrix3d rotation_matrix() const { return axis_angle_to_matrix(rotation); }
};

struct ProjectedVertices
{
    Eigen::MatrixX2d points;            // pixel coordinates
    Eigen::VectorXd depths;             // camera-space z
    std::vector<std::uint8_t> clipped;  // per vertex: behind the near plane
    int visible_count = 0;
};

/**
 * Projects model-space vertices to pixel coordinates:
 *   x = f * Xc/Zc + cx,  y = f * Yc/Zc + cy  with  [Xc,Yc,Zc] = R v + T.
 *
 * Vertices with Zc <= near plane are flagged clipped (their pixel
 * coordinates are meaningless). Throws FaceBehindCameraError when every
 * vertex is clipped.
 */
inline ProjectedVertices project(const Camera& camera, const Eigen::MatrixX3d& vertices)
{
    if (camera.focal <= 0.0)
        throw InvalidArgument("project: focal length must be positive");
    if (!vertices.allFinite())
        throw InvalidArgument("project: vertices contain non-finite values");

    const Eigen::Matrix3d r = camera.rotation_matrix();
    const Eigen::Index n = vertices.rows();
    ProjectedVertices out;
    out.points.resize(n, 2);
    out.depths.resize(n);
    out.clipped.assign(static_cast<std::size_t>(n), 0);

    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Vector3d c = r * vertices.row(i).transpose() + camera.translation;
        out.depths[i] = c.z();
        if (c.z() <= kNearPlane) {
            out.clipped[i] = 1;
            out.points.row(i).setZero();
            continue;
        }
        out.points(i, 0) = camera.focal * c.x() / c.z() + camera.cx;
        out.points(i, 1) = camera.focal * c.y() / c.z() + camera.cy;
        ++out.visible_count;
    }
    if (out.visible_count == 0)
        throw FaceBehindCameraError();
    return out;
}

} // namespace eyefit::render
