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

#ifndef NFLOC_BENCH_HPP
#define NFLOC_BENCH_HPP

#include "nfloc/music.hpp"
#include "nfloc/nn/bicnn.hpp"
#include "nfloc/scene.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nfloc
{
    struct EvalReport
    {
        std::string method; // "bicnn" or "music"
        std::optional<std::size_t> grid_per_dim;
        std::string grid_mode; // "per-dim", "total" or empty
        double rmse_m = 0.0;
        double mean_runtime_s = 0.0;
        int num_trials = 0;
        std::string config_hash;
    };

    // Maps the echoes of one trial (one per snapshot) to an (x, z) estimate in metres.
    class Estimator
    {
    public:
        virtual ~Estimator() = default;
        virtual std::string method() const = 0;
        virtual std::optional<std::size_t> grid_per_dim() const { return std::nullopt; }
        virtual std::string grid_mode() const { return {}; }
        virtual std::string describe() const { return method(); }
        virtual Eigen::Vector2d estimate(std::span<const EchoSignal> echoes) = 0;
    };

    // Combine, normalise, stack, forward. Uses the first snapshot only.
    class BiCnnEstimator : public Estimator
    {
    public:
        BiCnnEstimator(const Scene &scene, const nn::BiCnnModel &model) : scene_(scene), model_(model) {}
        std::string method() const override { return "bicnn"; }
        Eigen::Vector2d estimate(std::span<const EchoSignal> echoes) override;

    private:
        const Scene &scene_;
        const nn::BiCnnModel &model_;
    };

    class MusicEstimator : public Estimator
    {
    public:
        MusicEstimator(const Scene &scene, MusicGridConfig grid, std::size_t label, std::string mode)
            : scene_(scene), grid_(grid), label_(label), mode_(std::move(mode))
        {
        }
        std::string method() const override { return "music"; }
        std::optional<std::size_t> grid_per_dim() const override { return label_; }
        std::string grid_mode() const override { return mode_; }
        std::string describe() const override;
        Eigen::Vector2d estimate(std::span<const EchoSignal> echoes) override;

    private:
        const Scene &scene_;
        MusicGridConfig grid_;
        std::size_t label_;
        std::string mode_;
    };

    class FunctionEstimator : public Estimator
    {
    public:
        using Fn = std::function<Eigen::Vector2d(std::span<const EchoSignal>)>;
        FunctionEstimator(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
        std::string method() const override { return name_; }
        Eigen::Vector2d estimate(std::span<const EchoSignal> echoes) override { return fn_(echoes); }

    private:
        std::string name_;
        Fn fn_;
    };

    // Deterministic trial targets. Uniform mode draws off-grid over the region; grid-aligned
    // mode picks nodes of `grid`.
    struct TargetSampler
    {
        enum class Mode
        {
            kUniform,
            kGridAligned,
        };

        Mode mode = Mode::kUniform;
        double angle_min = kPi / 4.0;
        double angle_max = 3.0 * kPi / 4.0;
        double distance_min = 8.0;
        double distance_max = 35.0;
        MusicGridConfig grid{};
        std::uint64_t seed = 99;

        TargetPosition target(std::size_t trial) const;
    };

    struct MonteCarloConfig
    {
        int num_trials = 100;
        int snapshots = 1;
        std::uint64_t seed = 4242;
        SynthesisOptions synthesis{};
    };

    // RMSE = sqrt(mean ||r_hat - r||^2). Runtime is the mean wall time of estimate() alone;
    // channel synthesis is outside the timer. Trials run sequentially.
    EvalReport run_monte_carlo(Estimator &estimator, const Scene &scene, const MonteCarloConfig &config,
                               const TargetSampler &sampler);

    // Per-trial targets and echoes exactly as run_monte_carlo generates them.
    std::vector<EchoSignal> trial_echoes(const Scene &scene, const MonteCarloConfig &config,
                                         const TargetPosition &target, std::size_t trial);

    struct ComparisonTable
    {
        std::vector<EvalReport> rows; // MUSIC by grid ascending, then BiCNN, then others
        std::string text;
        std::string csv;
    };

    ComparisonTable compare_table(std::vector<EvalReport> reports);

    std::string reports_to_json(const std::vector<EvalReport> &reports);
    std::vector<EvalReport> reports_from_json(const std::string &text);
    // Reads the CSV written by compare_table; values carry its 4-decimal rounding.
    std::vector<EvalReport> reports_from_csv(const std::string &text);
    // .json or .csv by extension.
    void write_reports(const std::filesystem::path &path, const std::vector<EvalReport> &reports);
    std::vector<EvalReport> read_reports(const std::filesystem::path &path);

    std::string format_hash(std::uint64_t h);

} // namespace nfloc

#endif
