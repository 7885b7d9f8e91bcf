/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/elam/probe.hpp
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
#include "eyefit/core/landmarks.hpp"
#include "eyefit/io/png.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace eyefit::elam {

/// Result of one eye-state query: P is the probability the eye is CLOSED.
struct ProbeResult
{
    double probability_closed = 0.0;
    std::vector<std::string> warnings;

    /// Binary decision at the fixed 0.5 threshold.
    bool closed() const { return probability_closed >= 0.5; }
};

/**
 * Pluggable eye-state source. Implementations receive an image crop of one
 * eye plus that eye's six landmarks (iBUG order p1..p6) and return the
 * closure probability P in [0,1].
 */
class EyeStateProbe
{
public:
    virtual ~EyeStateProbe() = default;
    virtual ProbeResult probability_closed(const Image& eye_crop, const std::array<Eigen::Vector2d, 6>& eye) = 0;
    virtual std::string name() const = 0;
};

/// Eye aspect ratio over the six eye landmarks: vertical gaps over width.
inline double eye_aspect_ratio(const std::array<Eigen::Vector2d, 6>& p)
{
    const double width = (p[0] - p[3]).norm();
    if (width < 1e-6)
        return 0.0;
    return ((p[1] - p[5]).norm() + (p[2] - p[4]).norm()) / (2.0 * width);
}

/**
 * Geometric default probe: P = clamp(1 - EAR/EAR_open, 0, 1) with
 * EAR_open = 0.3. Degenerate eyes (width below 1e-6 px) map to P = 1 with
 * a warning. Deterministic and image-free.
 */
class EarProbe : public EyeStateProbe
{
public:
    explicit EarProbe(double ear_open = 0.3) : ear_open_(ear_open)
    {
        if (ear_open_ <= 0.0)
            throw InvalidArgument("EarProbe: EAR_open must be positive");
    }

    ProbeResult probability_closed(const Image&, const std::array<Eigen::Vector2d, 6>& eye) override
    {
        ProbeResult r;
        const double width = (eye[0] - eye[3]).norm();
        if (width < 1e-6) {
            r.probability_closed = 1.0;
            r.warnings.push_back("ear probe: degenerate eye (width < 1e-6 px), reporting closed");
            return r;
        }
        const double ear = eye_aspect_ratio(eye);
        r.probability_closed = std::clamp(1.0 - ear / ear_open_, 0.0, 1.0);
        return r;
    }

    std::string name() const override { return "ear"; }

private:
    double ear_open_;
};

/// Fixed-probability probe (oracle / ablation tool).
class ConstantProbe : public EyeStateProbe
{
public:
    explicit ConstantProbe(double p) : p_(p)
    {
        if (p < 0.0 || p > 1.0)
            throw InvalidArgument("ConstantProbe: probability must be in [0,1]");
    }

    ProbeResult probability_closed(const Image&, const std::array<Eigen::Vector2d, 6>&) override
    {
        return ProbeResult{p_, {}};
    }

    std::string name() const override { return "constant"; }

private:
    double p_;
};

namespace detail_probe {

struct CommandOutput
{
    bool launched = false;
    bool timed_out = false;
    int exit_code = -1;
    std::string stdout_text;
};

/// Runs `command <arg>` through /bin/sh with a wall-clock timeout, capturing stdout.
inline CommandOutput run_command(const std::string& command, const std::string& arg, int timeout_ms)
{
    CommandOutput result;
    int fds[2];
    if (pipe(fds) != 0)
        return result;

    const pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        return result;
    }
    if (pid == 0) {
        dup2(fds[1], STDOUT_FILENO);
        close(fds[0]);
        close(fds[1]);
        std::string full = command;
        full += " '";
        full += arg; // fixture paths are library-generated; no quote escaping needed
        full += "'";
        execl("/bin/sh", "sh", "-c", full.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(fds[1]);
    result.launched = true;

    const auto deadline_ms = timeout_ms;
    int waited = 0;
    char buf[4096];
    bool open = true;
    while (open) {
        pollfd pfd{fds[0], POLLIN, 0};
        const int step = 20;
        const int rc = poll(&pfd, 1, step);
        if (rc > 0) {
            const ssize_t n = read(fds[0], buf, sizeof buf);
            if (n > 0)
                result.stdout_text.append(buf, static_cast<std::size_t>(n));
            else
                open = false;
        } else {
            waited += step;
            if (waited >= deadline_ms) {
                result.timed_out = true;
                kill(pid, SIGKILL);
                open = false;
            }
        }
    }
    close(fds[0]);
    int status = 0;
    waitpid(pid, &status, 0);
    if (!result.timed_out && WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    return result;
}

inline std::optional<double> parse_single_float(const std::string& text)
{
    std::istringstream iss(text);
    double v;
    if (!(iss >> v))
        return std::nullopt;
    std::string rest;
    if (iss >> rest)
        return std::nullopt; // more than one token
    return v;
}

inline std::string temp_png_path(const char* tag)
{
    static std::atomic<unsigned> counter{0};
    std::ostringstream oss;
    const char* tmp = std::getenv("TMPDIR");
    oss << (tmp ? tmp : "/tmp") << "/eyefit_" << tag << "_" << getpid() << "_" << counter++ << ".png";
    return oss.str();
}

} // namespace detail_probe

/**
 * External-process probe. The eye crop is written as PNG to a temporary
 * path; the configured command receives that path as its single argument
 * and must print one decimal float (closed-probability) on stdout and exit
 * with code 0.
 *
 * Launch failures and timeouts fall back to the EAR probe with a warning;
 * a program that runs but prints something unparsable is an error.
 */
class CommandProbe : public EyeStateProbe
{
public:
    explicit CommandProbe(std::string command, int timeout_ms = 5000)
        : command_(std::move(command)), timeout_ms_(timeout_ms)
    {
    }

    ProbeResult probability_closed(const Image& eye_crop, const std::array<Eigen::Vector2d, 6>& eye) override
    {
        const std::string path = detail_probe::temp_png_path("probe");
        io::write_png(path, eye_crop.empty() ? Image(1, 1) : eye_crop);
        detail_probe::CommandOutput out = detail_probe::run_command(command_, path, timeout_ms_);
        std::remove(path.c_str());

        if (!out.launched || out.timed_out || out.exit_code != 0) {
            ProbeResult r = fallback_.probability_closed(eye_crop, eye);
            r.warnings.push_back("probe '" + command_ + "' " +
                                 (out.timed_out ? "timed out" : "could not be run") +
                                 "; falling back to ear probe");
            return r;
        }
        const std::optional<double> p = detail_probe::parse_single_float(out.stdout_text);
        if (!p)
            throw Error("probe '" + command_ + "' returned malformed output: \"" + out.stdout_text + "\"");
        ProbeResult r;
        r.probability_closed = std::clamp(*p, 0.0, 1.0);
        if (*p < 0.0 || *p > 1.0)
            r.warnings.push_back(detail::format_message("probe '", command_, "' returned ", *p,
                                                        ", clamped to [0,1]"));
        return r;
    }

    std::string name() const override { return "command:" + command_; }

private:
    std::string command_;
    int timeout_ms_;
    EarProbe fallback_;
};

} // namespace eyefit::elam
