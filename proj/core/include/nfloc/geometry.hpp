// SPDX-License-Identifier: Apache-2.0
//
// nfloc: wavenumber-domain near-field target localization
// Copyright (C) 2026 The nfloc Authors
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

#ifndef NFLOC_GEOMETRY_HPP
#define NFLOC_GEOMETRY_HPP

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace nfloc
{
    inline constexpr double kSpeedOfLight = 2.99792458e8; // m/s
    inline constexpr double kPi = 3.141592653589793238462643383279502884;

    // Physical-layer parameters of the monostatic full-duplex base station.
    // Defaults are the reference simulation setup (28 GHz, 10 kHz, M = 511, P = 30 dBm).
    struct SystemConfig
    {
        double carrier_frequency_hz = 28e9;
        double bandwidth_hz = 10e3;
        int num_antennas = 511;             // M = 2*M~ + 1, must be odd
        double transmit_power_dbm = 30.0;   // P
        double noise_psd_dbm_hz = -174.0;
        double tx_gain = 31.622776601683793; // 10^1.5, linear
        double rx_gain = 3.1622776601683795; // 10^0.5, linear

        double wavelength() const { return kSpeedOfLight / carrier_frequency_hz; }
        double element_spacing() const { return 0.5 * wavelength(); }
        double transmit_power_w() const;
        // sigma^2 [W] = 10^((PSD_dBm/Hz - 30) / 10) * B
        double noise_power_w() const;

        // Throws ConfigError when an invariant is violated.
        void validate() const;
    };

    using Vec3 = Eigen::Vector3d;

    class ArrayGeometry
    {
    public:
        ArrayGeometry(std::vector<Vec3> positions, double wavelength);

        std::size_t size() const { return positions_.size(); }
        int half_count() const { return static_cast<int>(positions_.size() / 2); } // M~
        const std::vector<Vec3> &positions() const { return positions_; }
        const Vec3 &position(int m) const { return positions_[static_cast<std::size_t>(m + half_count())]; } // m in [-M~, M~]
        const Eigen::VectorXd &x_coordinates() const { return x_; }
        double element_spacing() const { return spacing_; }
        double aperture() const { return aperture_; }     // D = (M - 1) d
        double wavelength() const { return wavelength_; } // lambda
        double wavenumber() const { return wavenumber_; } // k0 = 2 pi / lambda

    private:
        std::vector<Vec3> positions_;
        Eigen::VectorXd x_;
        double spacing_ = 0.0;
        double aperture_ = 0.0;
        double wavelength_ = 0.0;
        double wavenumber_ = 0.0;
    };

    // Point target in the xz-plane. The angle is measured from the +x axis.
    class TargetPosition
    {
    public:
        TargetPosition() = default;

        static TargetPosition from_polar(double range_m, double angle_rad);
        static TargetPosition from_xz(double x, double z);

        const Vec3 &coordinates() const { return coordinates_; }
        double range() const { return range_; }
        double angle() const { return angle_; }
        Eigen::Vector2d xz() const { return {coordinates_.x(), coordinates_.z()}; }

    private:
        Vec3 coordinates_ = Vec3::Zero();
        double range_ = 0.0;
        double angle_ = 0.0;
    };

    ArrayGeometry build_geometry(const SystemConfig &config);

    // 2 D^2 / lambda
    double rayleigh_distance(const ArrayGeometry &geometry);

    // 0 < r < 2 D^2 / lambda. The reactive region is not modelled.
    bool is_in_radiating_near_field(const TargetPosition &target, const ArrayGeometry &geometry);

} // namespace nfloc

#endif
