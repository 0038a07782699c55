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

#ifndef NFLOC_NN_TRAINING_HPP
#define NFLOC_NN_TRAINING_HPP

#include "nfloc/dataset.hpp"
#include "nfloc/nn/bicnn.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace nfloc::nn
{
    struct TrainingConfig
    {
        int epochs = 50;
        std::size_t batch_size = 64;
        BiCnnHyper hyper{};
        std::size_t pool_window = 2;
        std::vector<std::size_t> hidden{128};
        std::uint64_t seed = 1234; // weight init and per-epoch shuffles
        bool keep_best_validation = true;

        void validate() const;
        std::uint64_t hash() const;
    };

    struct EpochStats
    {
        int epoch = 0;
        double learning_rate = 0.0;
        double train_loss = 0.0; // mean over batches of Huber + penalty
        double validation_loss = 0.0;
        double validation_rmse_m = 0.0;
    };

    struct TrainingResult
    {
        BiCnnModel model;
        std::vector<EpochStats> history;
        int best_epoch = -1;
    };

    // Compact in-memory copy of one split: binary observations as bytes plus truth.
    class SampleSet
    {
    public:
        SampleSet() = default;
        SampleSet(const std::vector<LabeledSample> &samples, Split split);

        std::size_t size() const { return truth_.size(); }
        std::size_t num_antennas() const { return m_; }
        const Eigen::Vector2d &truth(std::size_t i) const { return truth_[i]; }
        const std::vector<Eigen::Vector2d> &truths() const { return truth_; }

        // (N, 2, M) batch of stacked observations.
        Tensor batch(std::span<const std::size_t> indices) const;
        // (N, 2) standardised targets.
        Tensor targets(std::span<const std::size_t> indices, const TargetScaler &scaler) const;

    private:
        std::size_t m_ = 0;
        std::vector<std::uint8_t> bits_;
        std::vector<Eigen::Vector2d> truth_;
    };

    // Per-coordinate mean / standard deviation of the training targets.
    TargetScaler fit_scaler(const std::vector<Eigen::Vector2d> &truth);

    // sqrt(mean ||r_hat - r||^2) in metres.
    double evaluate_rmse(const BiCnnModel &model, const SampleSet &set);
    double evaluate_loss(const BiCnnModel &model, const SampleSet &set);

    // Adam with w_k = w0 * alpha^k. Epochs run single-threaded and deterministically.
    TrainingResult train(const std::vector<LabeledSample> &samples, const TrainingConfig &config,
                         const std::function<void(const EpochStats &)> &on_epoch = {});

} // namespace nfloc::nn

#endif
