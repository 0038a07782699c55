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

#ifndef NFLOC_OBSERVATION_HPP
#define NFLOC_OBSERVATION_HPP

#include "nfloc/channel.hpp"
#include "nfloc/wavenumber.hpp"

#include <Eigen/Core>

namespace nfloc
{
    inline constexpr double kDefaultBinaryThreshold = 0.5;

    struct Binarized
    {
        Eigen::VectorXd values; // entries exactly 0 or 1
        bool degenerate = false; // max |o~| == min |o~|; values are all zero
    };

    // Preprocessed single-snapshot observation fed to the BiCNN.
    struct Observation
    {
        CVector raw;            // o~ = A^H y / s
        Eigen::VectorXd binary; // o
        Eigen::MatrixXd stacked; // O = [o; reverse(o)], 2 x M
        bool degenerate = false;
    };

    // w = A 1 / ||A 1||
    CVector probing_beamformer(const WavenumberTransform &wtm);

    // o~ = A^H y / s. Throws DomainError on a zero probe symbol.
    CVector combine_echo(const EchoSignal &echo, const WavenumberTransform &wtm);

    // Min-max normalise |o~| over the whole vector and threshold. A constant-modulus
    // input cannot be normalised and yields all zeros with `degenerate` set.
    Binarized normalize(const CVector &raw, double threshold = kDefaultBinaryThreshold);

    Eigen::MatrixXd stack_bidirectional(const Eigen::VectorXd &binary);

    Observation observe(const EchoSignal &echo, const WavenumberTransform &wtm,
                        double threshold = kDefaultBinaryThreshold);

} // namespace nfloc

#endif
