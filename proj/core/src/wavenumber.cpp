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

#include "nfloc/wavenumber.hpp"
#include "nfloc/errors.hpp"

#include <cmath>

namespace nfloc
{
    namespace
    {
        // D k0 / 2 pi is an exact integer for the half-wavelength ULA but lands a few ulp
        // off in floating point; snap before ceil/floor so the grid does not gain a bin.
        double snap_to_integer(double v)
        {
            const double r = std::round(v);
            return std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v)) ? r : v;
        }
    } // namespace

    WavenumberGrid build_grid(const ArrayGeometry &geometry)
    {
        const double D = geometry.aperture();
        if (!(D > 0.0))
            throw DomainError("build_grid: zero aperture gives a degenerate wavenumber grid");
        const double extent = snap_to_integer(D * geometry.wavenumber() / (2.0 * kPi));
        const int lo = -static_cast<int>(std::ceil(extent));
        const int hi = static_cast<int>(std::floor(extent));

        WavenumberGrid grid;
        grid.aperture_m = D;
        grid.indices.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (int e = lo; e <= hi; ++e)
            grid.indices.push_back(e);
        return grid;
    }

    WavenumberTransform build_wtm(const WavenumberGrid &grid, const ArrayGeometry &geometry, WtmSpacing spacing)
    {
        if (grid.indices.empty())
            throw ParameterError("build_wtm: empty wavenumber grid");
        const Eigen::Index M = static_cast<Eigen::Index>(geometry.size());
        const Eigen::Index G = static_cast<Eigen::Index>(grid.cardinality());
        const double length = spacing == WtmSpacing::kEffectiveAperture
                                  ? static_cast<double>(M) * geometry.element_spacing()
                                  : grid.aperture_m;
        const double scale = 1.0 / std::sqrt(static_cast<double>(M));
        const Eigen::VectorXd &x = geometry.x_coordinates();

        WavenumberTransform wtm;
        wtm.grid = grid;
        wtm.matrix.resize(M, G);
        // On a uniform array x / d and L / d are integers and eps x / L reduces exactly modulo 1.
        const double d = geometry.element_spacing();
        const double period = length / d;
        const auto p = static_cast<long long>(std::llround(period));
        std::vector<long long> steps(static_cast<std::size_t>(M));
        bool exact = std::abs(period - static_cast<double>(p)) < 1e-9 && p > 0;
        for (Eigen::Index m = 0; m < M && exact; ++m)
        {
            steps[static_cast<std::size_t>(m)] = std::llround(x[m] / d);
            exact = std::abs(x[m] / d - static_cast<double>(steps[static_cast<std::size_t>(m)])) < 1e-9;
        }

        for (Eigen::Index i = 0; i < G; ++i)
        {
            const int eps = grid.indices[static_cast<std::size_t>(i)];
            for (Eigen::Index m = 0; m < M; ++m)
            {
                double turns;
                if (exact)
                    turns = static_cast<double>((eps * steps[static_cast<std::size_t>(m)]) % p) / static_cast<double>(p);
                else
                {
                    turns = eps * x[m] / length;
                    turns -= std::round(turns);
                }
                wtm.matrix(m, i) = std::polar(scale, -2.0 * kPi * turns);
            }
        }
        return wtm;
    }

    WavenumberChannel to_wavenumber(const CMatrix &channel, const WavenumberTransform &wtm)
    {
        const CMatrix &A = wtm.matrix;
        if (channel.rows() != A.rows() || channel.cols() != A.rows())
            throw ShapeError("to_wavenumber: channel must be M x M with M = rows(A)");
        WavenumberChannel out;
        out.matrix = (A.adjoint() * channel * A) / static_cast<double>(A.rows());
        return out;
    }

    WavenumberChannel to_wavenumber(const ChannelSnapshot &snapshot, const WavenumberTransform &wtm)
    {
        return to_wavenumber(snapshot.matrix, wtm);
    }

    CMatrix from_wavenumber(const WavenumberChannel &channel, const WavenumberTransform &wtm)
    {
        const CMatrix &A = wtm.matrix;
        if (channel.matrix.rows() != A.cols() || channel.matrix.cols() != A.cols())
            throw ShapeError("from_wavenumber: H_a must be |G_k| x |G_k|");
        return static_cast<double>(A.rows()) * (A * channel.matrix * A.adjoint());
    }

} // namespace nfloc
