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

#include "nfloc/channel.hpp"
#include "nfloc/errors.hpp"

#include <cmath>
#include <iostream>
#include <random>

namespace nfloc
{
    CVector array_response(const TargetPosition &target, const ArrayGeometry &geometry)
    {
        const auto &positions = geometry.positions();
        const double k0 = geometry.wavenumber();
        CVector a(static_cast<Eigen::Index>(positions.size()));
        for (std::size_t m = 0; m < positions.size(); ++m)
        {
            const double dist = (target.coordinates() - positions[m]).norm();
            a[static_cast<Eigen::Index>(m)] = std::polar(1.0, -k0 * dist);
        }
        return a;
    }

    double pathloss(double frequency_hz, double distance_m)
    {
        if (!(frequency_hz > 0.0))
            throw DomainError("pathloss: frequency must be positive");
        if (!(distance_m > 0.0))
            throw DomainError("pathloss: distance must be positive");
        return std::sqrt(kSpeedOfLight / (4.0 * kPi * frequency_hz)) / distance_m;
    }

    Complex round_trip_gain(const TargetPosition &target, const SystemConfig &config)
    {
        // beta is real-positive; no random phase is attached.
        return {pathloss(config.carrier_frequency_hz, 2.0 * target.range()) * config.tx_gain * config.rx_gain, 0.0};
    }

    ChannelSnapshot round_trip_channel(const TargetPosition &target, const ArrayGeometry &geometry,
                                       const SystemConfig &config, RegionPolicy policy)
    {
        if (!is_in_radiating_near_field(target, geometry))
        {
            const std::string msg = "target at r = " + std::to_string(target.range()) +
                                    " m is outside the radiating near field (Rayleigh distance " +
                                    std::to_string(rayleigh_distance(geometry)) + " m)";
            if (policy == RegionPolicy::kStrict)
                throw RegionError(msg);
            std::cerr << "warning: " << msg << '\n';
        }
        ChannelSnapshot snap;
        snap.truth = target;
        snap.gain = round_trip_gain(target, config);
        const CVector a = array_response(target, geometry);
        // Plain transpose, not the conjugate transpose.
        snap.matrix = snap.gain * (a * a.transpose());
        return snap;
    }

    std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
    {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    void add_complex_gaussian_noise(CVector &signal, double noise_power, std::uint64_t rng_seed)
    {
        if (noise_power <= 0.0)
            return;
        std::mt19937_64 rng(mix_seed(rng_seed));
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 * noise_power));
        for (Eigen::Index i = 0; i < signal.size(); ++i)
        {
            const double re = gauss(rng);
            const double im = gauss(rng);
            signal[i] += Complex(re, im);
        }
    }

    EchoSignal simulate_echo(const ChannelSnapshot &snapshot, const CVector &beamformer, const SystemConfig &config,
                             std::uint64_t rng_seed, bool with_noise)
    {
        if (beamformer.size() != snapshot.matrix.cols())
            throw ShapeError("simulate_echo: beamformer length does not match the channel");
        if (std::abs(beamformer.norm() - 1.0) > 1e-12)
            throw ParameterError("simulate_echo: beamformer must satisfy |w^H w| = 1");

        EchoSignal echo;
        echo.probe_symbol = Complex(1.0, 0.0);
        echo.noise_power = with_noise ? config.noise_power_w() : 0.0;
        echo.received = std::sqrt(config.transmit_power_w()) * (snapshot.matrix * beamformer) * echo.probe_symbol;
        add_complex_gaussian_noise(echo.received, echo.noise_power, rng_seed);
        return echo;
    }

} // namespace nfloc
