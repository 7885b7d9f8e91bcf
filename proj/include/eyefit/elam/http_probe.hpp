/*
 * eyefit - eyelid-aware 3D morphable face model fitting.
 *
 * File: include/eyefit/elam/http_probe.hpp
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

// Kept separate from probe.hpp so translation units that never talk to an
// HTTP endpoint do not pay for the embedded HTTP client.

#include "eyefit/elam/probe.hpp"
#include "eyefit/io/png.hpp"

#include <httplib.h>

#include <string>

namespace eyefit::elam {

/**
 * HTTP probe: POSTs the PNG-encoded eye crop to the configured URL; the
 * response body must be a single float (closed-probability) as text.
 * Unreachable endpoints fall back to the EAR probe with a warning;
 * a reachable endpoint answering garbage is an error.
 */
class HttpProbe : public EyeStateProbe
{
public:
    /// `url` must look like http://host:port/path.
    explicit HttpProbe(const std::string& url, int timeout_ms = 5000) : url_(url), timeout_ms_(timeout_ms)
    {
        const auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos)
            throw InvalidArgument("HttpProbe: url must start with http://");
        const auto path_start = url.find('/', scheme_end + 3);
        host_ = url.substr(0, path_start == std::string::npos ? url.size() : path_start);
        path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
    }

    ProbeResult probability_closed(const Image& eye_crop, const std::array<Eigen::Vector2d, 6>& eye) override
    {
        const std::vector<std::uint8_t> png = io::encode_png(eye_crop.empty() ? Image(1, 1) : eye_crop);
        httplib::Client client(host_);
        client.set_connection_timeout(0, timeout_ms_ * 1000);
        client.set_read_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);
        auto res = client.Post(path_, reinterpret_cast<const char*>(png.data()), png.size(),
                               "application/octet-stream");
        if (!res) {
            ProbeResult r = fallback_.probability_closed(eye_crop, eye);
            r.warnings.push_back("probe '" + url_ + "' unreachable; falling back to ear probe");
            return r;
        }
        if (res->status < 200 || res->status >= 300)
            throw Error(detail::format_message("probe '", url_, "' returned HTTP status ", res->status));
        const std::optional<double> p = detail_probe::parse_single_float(res->body);
        if (!p)
            throw Error("probe '" + url_ + "' returned malformed body: \"" + res->body + "\"");
        ProbeResult r;
        r.probability_closed = std::clamp(*p, 0.0, 1.0);
        if (*p < 0.0 || *p > 1.0)
            r.warnings.push_back(detail::format_message("probe '", url_, "' returned ", *p, ", clamped to [0,1]"));
        return r;
    }

    std::string name() const override { return "http:" + url_; }

private:
    std::string url_;
    std::string host_;
    std::string path_;
    int timeout_ms_;
    EarProbe fallback_;
};

} // namespace eyefit::elam
