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

#include "nfloc/observation.hpp"
#include "nfloc/errors.hpp"

#include <iostream>

namespace nfloc
{
    CVector probing_beamformer(const WavenumberTransform &wtm)
    {
        const CVector w = wtm.matrix.rowwise().sum();
        return w / w.norm();
    }

    CVector combine_echo(const EchoSignal &echo, const WavenumberTransform &wtm)
    {
        if (echo.received.size() != wtm.matrix.rows())
            throw ShapeError("combine_echo: echo length does not match the WTM");
        if (echo.probe_symbol == Complex(0.0, 0.0))
            throw DomainError("combine_echo: probe symbol is zero");
        return (wtm.matrix.adjoint() * echo.received) / echo.probe_symbol;
    }

    Binarized normalize(const CVector &raw, double threshold)
    {
        Binarized out;
        out.values = Eigen::VectorXd::Zero(raw.size());
        if (raw.size() == 0)
            return out;
        const Eigen::VectorXd mag = raw.cwiseAbs();
        const double lo = mag.minCoeff();
        const double hi = mag.maxCoeff();
        if (!(hi > lo))
        {
            out.degenerate = true;
            return out;
        }
        const double span = hi - lo;
        for (Eigen::Index i = 0; i < mag.size(); ++i)
            out.values[i] = (mag[i] - lo) / span > threshold ? 1.0 : 0.0;
        return out;
    }

    Eigen::MatrixXd stack_bidirectional(const Eigen::VectorXd &binary)
    {
        Eigen::MatrixXd out(2, binary.size());
        out.row(0) = binary.transpose();
        out.row(1) = binary.reverse().transpose();
        return out;
    }

    Observation observe(const EchoSignal &echo, const WavenumberTransform &wtm, double threshold)
    {
        Observation obs;
        obs.raw = combine_echo(echo, wtm);
        Binarized b = normalize(obs.raw, threshold);
        if (b.degenerate)
            std::cerr << "warning: constant-modulus observation, binarised to all zeros\n";
        obs.degenerate = b.degenerate;
        obs.binary = std::move(b.values);
        obs.stacked = stack_bidirectional(obs.binary);
        return obs;
    }

} // namespace nfloc
