// SPDX-License-Identifier: Apache-2.0
//
// risloc: simulator and estimators for RIS-assisted device-free drone localization
// Copyright (C) 2026 risloc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISLOC_COMMON_HPP
#define RISLOC_COMMON_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace risloc
{
    using cd = std::complex<double>;
    using CVec = Eigen::VectorXcd;
    using CMat = Eigen::MatrixXcd;
    using RVec = Eigen::VectorXd;
    using RMat = Eigen::MatrixXd;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr cd j1{0.0, 1.0};

    inline constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
    inline constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

    // Failure categories. The C API maps them onto status codes, the CLI onto exit codes.
    enum class ErrorKind
    {
        domain,              // argument outside the function's domain
        config,              // malformed or inconsistent configuration
        singular_geometry,   // cos(elevation) = 0 or coincident nodes
        infeasible_design,   // beam design constraints cannot be met
        degenerate_input,    // e.g. all-zero channel estimate
        degenerate_geometry, // triangulation rays all parallel
        divergence,          // non-finite objective inside CGD
        unidentifiable       // singular Fisher information
    };

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
        ErrorKind kind() const noexcept { return kind_; }

        // Configuration-type failures (exit code 1) versus numerical ones (exit code 2)
        bool is_config_error() const noexcept
        {
            return kind_ == ErrorKind::config || kind_ == ErrorKind::domain;
        }

    private:
        ErrorKind kind_;
    };

    // Warnings go through a replaceable sink so library users can silence or capture them.
    using LogSink = void (*)(const char *message);
    void set_log_sink(LogSink sink); // nullptr silences warnings
    void log_warning(const std::string &message);
}

#endif
