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

#include "nfloc/geometry.hpp"
#include "nfloc/errors.hpp"

#include <cmath>
#include <string>

namespace nfloc
{
    double SystemConfig::transmit_power_w() const
    {
        return std::pow(10.0, (transmit_power_dbm - 30.0) / 10.0);
    }

    double SystemConfig::noise_power_w() const
    {
        return std::pow(10.0, (noise_psd_dbm_hz - 30.0) / 10.0) * bandwidth_hz;
    }

    void SystemConfig::validate() const
    {
        if (!(carrier_frequency_hz > 0.0) || !std::isfinite(carrier_frequency_hz))
            throw ConfigError("carrier_frequency_hz must be positive");
        if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
            throw ConfigError("bandwidth_hz must be positive");
        if (num_antennas < 1 || num_antennas % 2 == 0)
            throw ConfigError("num_antennas must be an odd positive integer, got " + std::to_string(num_antennas));
        if (!std::isfinite(transmit_power_dbm) || !std::isfinite(noise_psd_dbm_hz))
            throw ConfigError("power levels must be finite");
        if (!(tx_gain > 0.0) || !(rx_gain > 0.0))
            throw ConfigError("array gains must be positive");
    }

    ArrayGeometry::ArrayGeometry(std::vector<Vec3> positions, double wavelength)
        : positions_(std::move(positions)), wavelength_(wavelength), wavenumber_(2.0 * kPi / wavelength)
    {
        if (positions_.empty() || positions_.size() % 2 == 0)
            throw ConfigError("a centred ULA needs an odd number of elements");
        x_.resize(static_cast<Eigen::Index>(positions_.size()));
        for (std::size_t i = 0; i < positions_.size(); ++i)
        {
            if (positions_[i].y() != 0.0 || positions_[i].z() != 0.0)
                throw ConfigError("ULA elements must lie on the x-axis");
            x_[static_cast<Eigen::Index>(i)] = positions_[i].x();
        }
        spacing_ = positions_.size() > 1 ? positions_[1].x() - positions_[0].x() : 0.5 * wavelength;
        aperture_ = positions_.back().x() - positions_.front().x();
    }

    TargetPosition TargetPosition::from_polar(double range_m, double angle_rad)
    {
        TargetPosition t;
        t.range_ = range_m;
        t.angle_ = angle_rad;
        t.coordinates_ = Vec3(range_m * std::cos(angle_rad), 0.0, range_m * std::sin(angle_rad));
        return t;
    }

    TargetPosition TargetPosition::from_xz(double x, double z)
    {
        TargetPosition t;
        t.coordinates_ = Vec3(x, 0.0, z);
        t.range_ = std::hypot(x, z);
        t.angle_ = std::atan2(z, x);
        return t;
    }

    ArrayGeometry build_geometry(const SystemConfig &config)
    {
        config.validate();
        const int half = (config.num_antennas - 1) / 2;
        const double d = config.element_spacing();
        std::vector<Vec3> positions;
        positions.reserve(static_cast<std::size_t>(config.num_antennas));
        for (int m = -half; m <= half; ++m)
            positions.emplace_back(static_cast<double>(m) * d, 0.0, 0.0);
        return ArrayGeometry(std::move(positions), config.wavelength());
    }

    double rayleigh_distance(const ArrayGeometry &geometry)
    {
        const double D = geometry.aperture();
        return 2.0 * D * D / geometry.wavelength();
    }

    bool is_in_radiating_near_field(const TargetPosition &target, const ArrayGeometry &geometry)
    {
        const double r = target.range();
        return r > 0.0 && r < rayleigh_distance(geometry);
    }

} // namespace nfloc
