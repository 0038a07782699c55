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

#ifndef NFLOC_CHANNEL_HPP
#define NFLOC_CHANNEL_HPP

#include "nfloc/geometry.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>

namespace nfloc
{
    using Complex = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;

    // What round_trip_channel does with a target beyond the Rayleigh distance.
    enum class RegionPolicy
    {
        kStrict,     // throw RegionError
        kPermissive, // warn on stderr and continue
    };

    // Round-trip LoS channel H = beta * a(r) * a(r)^T.
    struct ChannelSnapshot
    {
        CMatrix matrix;
        Complex gain;
        TargetPosition truth;
    };

    struct EchoSignal
    {
        CVector received;
        Complex probe_symbol{1.0, 0.0};
        double noise_power = 0.0; // sigma^2 in W
    };

    // Near-field response, entry m = exp(-j k0 ||r - x_m||).
    CVector array_response(const TargetPosition &target, const ArrayGeometry &geometry);

    // zeta(f, d) = sqrt(c / (4 pi f)) / d. Throws DomainError for d <= 0 or f <= 0.
    double pathloss(double frequency_hz, double distance_m);

    // Gain beta = zeta(f, 2r) * G_t * G_r. Pathloss is taken at the centre link for all elements.
    Complex round_trip_gain(const TargetPosition &target, const SystemConfig &config);

    ChannelSnapshot round_trip_channel(const TargetPosition &target, const ArrayGeometry &geometry,
                                       const SystemConfig &config, RegionPolicy policy = RegionPolicy::kStrict);

    // y = sqrt(P) H w s + z with s = 1 and z ~ CN(0, sigma^2 I). The beamformer must have unit norm.
    // Noise is drawn from a generator seeded only by rng_seed; with_noise = false gives sigma^2 = 0.
    EchoSignal simulate_echo(const ChannelSnapshot &snapshot, const CVector &beamformer, const SystemConfig &config,
                             std::uint64_t rng_seed, bool with_noise = true);

    // Adds CN(0, noise_power I) to `signal` using a stream derived from rng_seed.
    void add_complex_gaussian_noise(CVector &signal, double noise_power, std::uint64_t rng_seed);

    // SplitMix64 finaliser; used to derive independent per-item seeds from a master seed.
    std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream = 0);

} // namespace nfloc

#endif
