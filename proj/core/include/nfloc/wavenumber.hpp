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

#ifndef NFLOC_WAVENUMBER_HPP
#define NFLOC_WAVENUMBER_HPP

#include "nfloc/channel.hpp"
#include "nfloc/geometry.hpp"

#include <cstddef>
#include <vector>

namespace nfloc
{
    // Integer wavenumber sample indices eps in [-ceil(D k0 / 2 pi), +floor(D k0 / 2 pi)].
    struct WavenumberGrid
    {
        std::vector<int> indices;
        double aperture_m = 0.0;

        std::size_t cardinality() const { return indices.size(); }
    };

    // Length used in the phase 2 pi i x / L of each WTM column.
    enum class WtmSpacing
    {
        // L = M d. The columns form the centred M-point DFT and A is exactly unitary.
        kEffectiveAperture,
        // L = D = (M - 1) d. Columns -M~ and +M~ coincide, so A is singular. Kept for comparison.
        kPhysicalAperture,
    };

    // A: M x |G_k|, column i = (1 / sqrt(M)) exp(-j 2 pi eps_i x_m / L).
    struct WavenumberTransform
    {
        CMatrix matrix;
        WavenumberGrid grid;

        Eigen::Index num_antennas() const { return matrix.rows(); }
    };

    struct WavenumberChannel
    {
        CMatrix matrix; // H_a, |G_k| x |G_k|
    };

    // Throws DomainError when the aperture is zero.
    WavenumberGrid build_grid(const ArrayGeometry &geometry);

    WavenumberTransform build_wtm(const WavenumberGrid &grid, const ArrayGeometry &geometry,
                                  WtmSpacing spacing = WtmSpacing::kEffectiveAperture);

    // H_a = (1 / M) A^H H A
    WavenumberChannel to_wavenumber(const CMatrix &channel, const WavenumberTransform &wtm);
    WavenumberChannel to_wavenumber(const ChannelSnapshot &snapshot, const WavenumberTransform &wtm);

    // H = M A H_a A^H
    CMatrix from_wavenumber(const WavenumberChannel &channel, const WavenumberTransform &wtm);

} // namespace nfloc

#endif
