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

#include "nfloc/scene.hpp"
#include "nfloc/errors.hpp"

#include <cmath>
#include <iostream>

namespace nfloc
{
    Scene::Scene(const SystemConfig &config)
        : config_(config), geometry_(build_geometry(config)), wtm_(build_wtm(build_grid(geometry_), geometry_)),
          beamformer_(probing_beamformer(wtm_))
    {
    }

    EchoSignal Scene::synthesize(const TargetPosition &target, std::uint64_t seed,
                                 const SynthesisOptions &options) const
    {
        if (!is_in_radiating_near_field(target, geometry_))
        {
            if (options.region == RegionPolicy::kStrict)
                throw RegionError("synthesize: target outside the radiating near field");
            std::cerr << "warning: target outside the radiating near field\n";
        }
        const CVector a = array_response(target, geometry_);
        const Complex beta = options.pathloss ? round_trip_gain(target, config_) : Complex(1.0, 0.0);
        const Complex projection = (a.transpose() * beamformer_).value();

        EchoSignal echo;
        echo.probe_symbol = Complex(1.0, 0.0);
        echo.noise_power = options.noise ? config_.noise_power_w() : 0.0;
        echo.received = (std::sqrt(config_.transmit_power_w()) * beta * projection * echo.probe_symbol) * a;
        add_complex_gaussian_noise(echo.received, echo.noise_power, seed);
        return echo;
    }

    Observation Scene::observe(const EchoSignal &echo, double threshold) const
    {
        return nfloc::observe(echo, wtm_, threshold);
    }

} // namespace nfloc
