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

#include "nfloc/music.hpp"
#include "nfloc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <fstream>

namespace nfloc
{
    MusicGridConfig MusicGridConfig::per_dimension(std::size_t n)
    {
        MusicGridConfig g;
        g.angle_count = n;
        g.distance_count = n;
        return g;
    }

    MusicGridConfig MusicGridConfig::total_cells(std::size_t n)
    {
        MusicGridConfig g;
        if (n == 0)
            throw ParameterError("MUSIC grid needs at least one cell");
        std::size_t side = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
        while (n % side != 0)
            --side;
        g.angle_count = side;
        g.distance_count = n / side;
        return g;
    }

    std::vector<double> MusicGridConfig::angles() const
    {
        std::vector<double> out(angle_count);
        for (std::size_t i = 0; i < angle_count; ++i)
            out[i] = angle_min + static_cast<double>(i) * angle_spacing();
        return out;
    }

    std::vector<double> MusicGridConfig::distances() const
    {
        std::vector<double> out(distance_count);
        for (std::size_t j = 0; j < distance_count; ++j)
            out[j] = distance_count == 1 ? distance_min : distance_min + static_cast<double>(j) * distance_spacing();
        return out;
    }

    double MusicGridConfig::angle_spacing() const
    {
        return (angle_max - angle_min) / static_cast<double>(angle_count);
    }

    double MusicGridConfig::distance_spacing() const
    {
        return distance_count > 1 ? (distance_max - distance_min) / static_cast<double>(distance_count - 1) : 0.0;
    }

    CMatrix sample_covariance(std::span<const EchoSignal> echoes)
    {
        if (echoes.empty())
            throw ParameterError("sample_covariance: need at least one echo");
        const Eigen::Index m = echoes.front().received.size();
        CMatrix R = CMatrix::Zero(m, m);
        for (const EchoSignal &e : echoes)
        {
            if (e.received.size() != m)
                throw ShapeError("sample_covariance: echoes differ in length");
            R.noalias() += e.received * e.received.adjoint();
        }
        return R / static_cast<double>(echoes.size());
    }

    SubspaceDecomposition eigendecompose(const CMatrix &covariance, int num_sources)
    {
        const Eigen::Index m = covariance.rows();
        if (covariance.cols() != m)
            throw ShapeError("eigendecompose: covariance must be square");
        if (num_sources < 1 || num_sources >= m)
            throw ParameterError("eigendecompose: need 1 <= K < M");
        const double scale = std::max(covariance.norm(), std::numeric_limits<double>::min());
        if ((covariance - covariance.adjoint()).norm() > 1e-10 * scale)
            throw ParameterError("eigendecompose: input is not Hermitian");

        // Householder tridiagonalisation + implicit symmetric QR; ascending order.
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(covariance);
        if (solver.info() != Eigen::Success)
            throw Error("eigendecompose: eigensolver did not converge");

        SubspaceDecomposition d;
        d.num_sources = num_sources;
        d.eigenvalues = solver.eigenvalues().reverse();
        d.eigenvectors = solver.eigenvectors().rowwise().reverse();
        return d;
    }

    namespace
    {
        inline void sin_cos(double x, double &s, double &c)
        {
#if defined(__GLIBC__)
            ::sincos(x, &s, &c);
#else
            s = std::sin(x);
            c = std::cos(x);
#endif
        }

        // ||E_n^H a||^2 = ||a||^2 - ||E_s^H a||^2 since [E_s E_n] is unitary; O(M K) per cell.
        class SpectrumEvaluator
        {
        public:
            SpectrumEvaluator(const SubspaceDecomposition &decomp, const ArrayGeometry &geometry)
                : x_(geometry.x_coordinates().array()), x2_(x_.square()), k0_(geometry.wavenumber()),
                  phase_(x_.size()), cos_(x_.size()), sin_(x_.size())
            {
                const CMatrix es = decomp.signal_subspace();
                re_ = es.real().array();
                im_ = es.imag().array();
            }

            double operator()(double theta, double r)
            {
                // |r - x_m|^2 = r^2 - 2 r x_m cos(theta) + x_m^2
                phase_ = -k0_ * (x2_ - (2.0 * r * std::cos(theta)) * x_ + r * r).sqrt();
                for (Eigen::Index m = 0; m < phase_.size(); ++m)
                    sin_cos(phase_[m], sin_[m], cos_[m]);
                double captured = 0.0;
                for (Eigen::Index k = 0; k < re_.cols(); ++k)
                {
                    // conj(u) a = (u_re c + u_im s) + j (u_re s - u_im c)
                    const double re = (re_.col(k) * cos_ + im_.col(k) * sin_).sum();
                    const double im = (re_.col(k) * sin_ - im_.col(k) * cos_).sum();
                    captured += re * re + im * im;
                }
                const double residual = std::max(0.0, static_cast<double>(x_.size()) - captured);
                return 1.0 / (residual + kSpectrumRegularizer);
            }

        private:
            Eigen::ArrayXd x_;
            Eigen::ArrayXd x2_;
            double k0_;
            Eigen::ArrayXXd re_;
            Eigen::ArrayXXd im_;
            Eigen::ArrayXd phase_;
            Eigen::ArrayXd cos_;
            Eigen::ArrayXd sin_;
        };

        void check_grid(const MusicGridConfig &grid, const ArrayGeometry &geometry)
        {
            if (grid.angle_count == 0 || grid.distance_count == 0)
                throw ParameterError("music: empty search grid");
            const double rayleigh = rayleigh_distance(geometry);
            if (!(grid.distance_min > 0.0) || !(grid.distance_max < rayleigh))
                throw RegionError("music: grid distances must lie inside the radiating near field");
        }
    } // namespace

    SpectrumGrid music_spectrum(const SubspaceDecomposition &decomp, const MusicGridConfig &grid,
                                const ArrayGeometry &geometry)
    {
        check_grid(grid, geometry);
        SpectrumGrid out;
        out.angle_samples = grid.angles();
        out.distance_samples = grid.distances();
        out.values.resize(static_cast<Eigen::Index>(grid.angle_count), static_cast<Eigen::Index>(grid.distance_count));
        SpectrumEvaluator eval(decomp, geometry);
        for (std::size_t i = 0; i < grid.angle_count; ++i)
            for (std::size_t j = 0; j < grid.distance_count; ++j)
                out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    eval(out.angle_samples[i], out.distance_samples[j]);
        return out;
    }

    TargetPosition peak_to_position(const SpectrumGrid &spectrum)
    {
        if (spectrum.values.size() == 0)
            throw ParameterError("peak_to_position: empty spectrum");
        Eigen::Index bi = 0, bj = 0;
        double best = spectrum.values(0, 0);
        for (Eigen::Index i = 0; i < spectrum.values.rows(); ++i)
            for (Eigen::Index j = 0; j < spectrum.values.cols(); ++j)
                if (spectrum.values(i, j) > best)
                {
                    best = spectrum.values(i, j);
                    bi = i;
                    bj = j;
                }
        return TargetPosition::from_polar(spectrum.distance_samples[static_cast<std::size_t>(bj)],
                                          spectrum.angle_samples[static_cast<std::size_t>(bi)]);
    }

    TargetPosition music_locate(std::span<const EchoSignal> echoes, const MusicGridConfig &grid,
                                const ArrayGeometry &geometry, int num_sources)
    {
        check_grid(grid, geometry);
        const SubspaceDecomposition decomp = eigendecompose(sample_covariance(echoes), num_sources);
        const std::vector<double> angles = grid.angles();
        const std::vector<double> distances = grid.distances();
        SpectrumEvaluator eval(decomp, geometry);
        double best = -1.0;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < angles.size(); ++i)
            for (std::size_t j = 0; j < distances.size(); ++j)
            {
                const double v = eval(angles[i], distances[j]);
                if (v > best)
                {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        return TargetPosition::from_polar(distances[bj], angles[bi]);
    }

    void write_spectrum_csv(const std::filesystem::path &path, const SpectrumGrid &spectrum)
    {
        std::ofstream out(path);
        if (!out)
            throw FormatError("cannot create " + path.string());
        out.precision(17);
        out << "angle_rad,distance_m,value\n";
        for (std::size_t i = 0; i < spectrum.angle_samples.size(); ++i)
            for (std::size_t j = 0; j < spectrum.distance_samples.size(); ++j)
                out << spectrum.angle_samples[i] << ',' << spectrum.distance_samples[j] << ','
                    << spectrum.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) << '\n';
    }

} // namespace nfloc
