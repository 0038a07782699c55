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

#ifndef NFLOC_SCENE_HPP
#define NFLOC_SCENE_HPP

#include "nfloc/channel.hpp"
#include "nfloc/geometry.hpp"
#include "nfloc/observation.hpp"
#include "nfloc/wavenumber.hpp"

#include <cstdint>

namespace nfloc
{
    struct SynthesisOptions
    {
        bool noise = true;
        bool pathloss = true; // false: beta = 1
        RegionPolicy region = RegionPolicy::kStrict;
    };

    // Everything fixed for one system configuration: array, WTM and probing beamformer.
    // Immutable after construction; share freely between threads.
    class Scene
    {
    public:
        explicit Scene(const SystemConfig &config);

        const SystemConfig &config() const { return config_; }
        const ArrayGeometry &geometry() const { return geometry_; }
        const WavenumberTransform &wtm() const { return wtm_; }
        const CVector &beamformer() const { return beamformer_; }
        Eigen::Index num_antennas() const { return wtm_.num_antennas(); }

        // Same result as simulate_echo(round_trip_channel(...)) but uses the rank-one
        // structure H w = beta a (a^T w) instead of materialising the M x M channel.
        EchoSignal synthesize(const TargetPosition &target, std::uint64_t seed,
                              const SynthesisOptions &options = {}) const;

        Observation observe(const EchoSignal &echo, double threshold = kDefaultBinaryThreshold) const;

    private:
        SystemConfig config_;
        ArrayGeometry geometry_;
        WavenumberTransform wtm_;
        CVector beamformer_;
    };

} // namespace nfloc

#endif
