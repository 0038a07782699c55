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

#ifndef NFLOC_MUSIC_HPP
#define NFLOC_MUSIC_HPP

#include "nfloc/channel.hpp"
#include "nfloc/geometry.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace nfloc
{
    // Candidate (theta, r) lattice. Angles half-open [min, max) with angle_count samples,
    // distances closed [min, max] with distance_count samples.
    struct MusicGridConfig
    {
        double angle_min = kPi / 4.0;
        double angle_max = 3.0 * kPi / 4.0;
        std::size_t angle_count = 100;
        double distance_min = 8.0;
        double distance_max = 35.0;
        std::size_t distance_count = 100;

        // Per-dimension count n gives an n x n lattice.
        static MusicGridConfig per_dimension(std::size_t n);
        // Total count n is split into the factor pair closest to square, angles taking the smaller factor.
        static MusicGridConfig total_cells(std::size_t n);

        std::vector<double> angles() const;
        std::vector<double> distances() const;
        double angle_spacing() const;
        double distance_spacing() const;
    };

    struct SpectrumGrid
    {
        std::vector<double> angle_samples;
        std::vector<double> distance_samples;
        Eigen::MatrixXd values; // angle x distance, strictly positive
    };

    struct SubspaceDecomposition
    {
        Eigen::VectorXd eigenvalues; // descending
        CMatrix eigenvectors;        // columns match eigenvalues
        int num_sources = 1;

        // Eigenvectors of the K largest eigenvalues.
        CMatrix signal_subspace() const { return eigenvectors.leftCols(num_sources); }
        // E_n: eigenvectors of the M - K smallest eigenvalues.
        CMatrix noise_subspace() const { return eigenvectors.rightCols(eigenvectors.cols() - num_sources); }
    };

    inline constexpr double kSpectrumRegularizer = 1e-12;

    // R = (1 / L) sum y_l y_l^H. Throws ParameterError for an empty list.
    CMatrix sample_covariance(std::span<const EchoSignal> echoes);

    // Full Hermitian eigendecomposition; throws ParameterError if R is not Hermitian within 1e-10 (relative).
    SubspaceDecomposition eigendecompose(const CMatrix &covariance, int num_sources = 1);

    // P(theta, r) = 1 / (||E_n^H a(theta, r)||^2 + 1e-12). Every grid distance must lie in the radiating near field.
    SpectrumGrid music_spectrum(const SubspaceDecomposition &decomp, const MusicGridConfig &grid,
                                const ArrayGeometry &geometry);

    // Argmax cell; ties go to the smallest angle index, then the smallest distance index.
    TargetPosition peak_to_position(const SpectrumGrid &spectrum);

    // Covariance, eigendecomposition and grid search without storing the spectrum.
    TargetPosition music_locate(std::span<const EchoSignal> echoes, const MusicGridConfig &grid,
                                const ArrayGeometry &geometry, int num_sources = 1);

    void write_spectrum_csv(const std::filesystem::path &path, const SpectrumGrid &spectrum);

} // namespace nfloc

#endif
