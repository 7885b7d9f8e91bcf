/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/core/error.hpp
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

#include <sstream>
#include <stdexcept>
#include <string>

namespace eyefit {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error
{
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Raised when an input value violates a documented precondition
/// (dimension mismatches, malformed indices, out-of-range parameters).
class InvalidArgument : public Error
{
public:
    explicit InvalidArgument(const std::string& message) : Error(message) {}
};

/// Raised when a file cannot be read, written or parsed.
class IoError : public Error
{
public:
    explicit IoError(const std::string& message) : Error(message) {}
};

/// Raised when every vertex projects behind the camera near plane.
class FaceBehindCameraError : public Error
{
public:
    FaceBehindCameraError() : Error("face behind camera: all vertices clipped by the near plane") {}
};

namespace detail {

template <typename... Args>
std::string format_message(Args&&... args)
{
    std::ostringstream oss;
    (oss << ... << args);
    return oss.str();
}

} // namespace detail

} // namespace eyefit
