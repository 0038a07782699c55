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

#include "nfloc/nn/training.hpp"
#include "nfloc/binary_io.hpp"
#include "nfloc/errors.hpp"
#include "nfloc/nn/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace nfloc::nn
{
    void TrainingConfig::validate() const
    {
        if (epochs < 0)
            throw ParameterError("epochs must be non-negative");
        if (batch_size == 0)
            throw ParameterError("batch size must be positive");
        if (!(hyper.huber_delta > 0.0))
            throw ParameterError("huber delta must be positive");
        if (hyper.l2_weight < 0.0)
            throw ParameterError("l2 weight must be non-negative");
        if (!(hyper.learning_rate > 0.0))
            throw ParameterError("learning rate must be positive");
        if (!(hyper.lr_decay > 0.0 && hyper.lr_decay <= 1.0))
            throw ParameterError("lr decay must lie in (0, 1]");
    }

    std::uint64_t TrainingConfig::hash() const
    {
        std::ostringstream s;
        s.precision(17);
        s << "train-v1;" << epochs << ';' << batch_size << ';' << hyper.huber_delta << ';' << hyper.l2_weight << ';'
          << hyper.learning_rate << ';' << hyper.lr_decay << ';' << int(hyper.penalty) << ';' << pool_window << ';'
          << seed << ';' << keep_best_validation;
        for (std::size_t h : hidden)
            s << ";h" << h;
        return fnv1a64(s.str());
    }

    SampleSet::SampleSet(const std::vector<LabeledSample> &samples, Split split)
    {
        for (const LabeledSample &s : samples)
        {
            if (s.split != split)
                continue;
            if (m_ == 0)
                m_ = s.binary.size();
            else if (s.binary.size() != m_)
                throw ShapeError("samples have inconsistent observation lengths");
            bits_.insert(bits_.end(), s.binary.begin(), s.binary.end());
            truth_.push_back(s.truth_xz);
        }
    }

    Tensor SampleSet::batch(std::span<const std::size_t> indices) const
    {
        Tensor out({indices.size(), 2, m_});
        double *p = out.data();
        for (std::size_t idx : indices)
        {
            const std::uint8_t *o = bits_.data() + idx * m_;
            for (std::size_t i = 0; i < m_; ++i)
                p[i] = o[i];
            for (std::size_t i = 0; i < m_; ++i)
                p[m_ + i] = o[m_ - 1 - i];
            p += 2 * m_;
        }
        return out;
    }

    Tensor SampleSet::targets(std::span<const std::size_t> indices, const TargetScaler &scaler) const
    {
        Tensor out({indices.size(), 2});
        for (std::size_t k = 0; k < indices.size(); ++k)
        {
            const Eigen::Vector2d t = scaler.standardize(truth_[indices[k]]);
            out[2 * k] = t.x();
            out[2 * k + 1] = t.y();
        }
        return out;
    }

    TargetScaler fit_scaler(const std::vector<Eigen::Vector2d> &truth)
    {
        TargetScaler s;
        if (truth.empty())
            return s;
        Eigen::Vector2d mean = Eigen::Vector2d::Zero();
        for (const auto &t : truth)
            mean += t;
        mean /= static_cast<double>(truth.size());
        Eigen::Vector2d var = Eigen::Vector2d::Zero();
        for (const auto &t : truth)
            var += (t - mean).cwiseAbs2();
        var /= static_cast<double>(truth.size());
        s.mean = mean;
        s.scale = var.cwiseSqrt();
        for (int i = 0; i < 2; ++i)
            if (!(s.scale[i] > 0.0))
                s.scale[i] = 1.0;
        return s;
    }

    namespace
    {
        constexpr std::size_t kEvalBatch = 256;

        template <typename Fn>
        void for_each_batch(std::size_t n, std::size_t batch, Fn &&fn)
        {
            std::vector<std::size_t> idx;
            for (std::size_t begin = 0; begin < n; begin += batch)
            {
                idx.resize(std::min(batch, n - begin));
                std::iota(idx.begin(), idx.end(), begin);
                fn(std::span<const std::size_t>(idx));
            }
        }
    } // namespace

    double evaluate_rmse(const BiCnnModel &model, const SampleSet &set)
    {
        if (set.size() == 0)
            return 0.0;
        double sq = 0.0;
        for_each_batch(set.size(), kEvalBatch, [&](std::span<const std::size_t> idx) {
            const Tensor out = model.forward(set.batch(idx));
            for (std::size_t k = 0; k < idx.size(); ++k)
            {
                const Eigen::Vector2d est = model.scaler().destandardize({out[2 * k], out[2 * k + 1]});
                sq += (est - set.truth(idx[k])).squaredNorm();
            }
        });
        return std::sqrt(sq / static_cast<double>(set.size()));
    }

    double evaluate_loss(const BiCnnModel &model, const SampleSet &set)
    {
        if (set.size() == 0)
            return 0.0;
        double total = 0.0;
        for_each_batch(set.size(), kEvalBatch, [&](std::span<const std::size_t> idx) {
            const Tensor out = model.forward(set.batch(idx));
            total += huber_loss_batch(set.targets(idx, model.scaler()), out, model.hyper().huber_delta) *
                     static_cast<double>(idx.size());
        });
        return total / static_cast<double>(set.size());
    }

    TrainingResult train(const std::vector<LabeledSample> &samples, const TrainingConfig &config,
                         const std::function<void(const EpochStats &)> &on_epoch)
    {
        config.validate();
        const SampleSet train_set(samples, Split::kTrain);
        const SampleSet val_set(samples, Split::kValidation);
        if (train_set.size() == 0)
            throw ParameterError("training split is empty");

        BiCnnArchitecture arch;
        arch.input_length = train_set.num_antennas();
        arch.pool_window = config.pool_window;
        arch.hidden = config.hidden;

        TrainingResult result;
        result.model = BiCnnModel(arch, config.hyper, config.seed);
        BiCnnModel &model = result.model;
        model.set_scaler(fit_scaler(train_set.truths()));

        auto params = model.parameters();
        AdamState adam = AdamState::for_parameters(std::vector<const Tensor *>(params.begin(), params.end()));

        std::vector<std::size_t> order(train_set.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::mt19937_64 rng(mix_seed(config.seed, 0xE90C));

        double best_val = std::numeric_limits<double>::infinity();
        BiCnnModel best = model;
        for (int epoch = 0; epoch < config.epochs; ++epoch)
        {
            EpochStats stats;
            stats.epoch = epoch;
            stats.learning_rate = lr_schedule(epoch, config.hyper.learning_rate, config.hyper.lr_decay);
            std::shuffle(order.begin(), order.end(), rng);

            double loss_sum = 0.0;
            std::size_t batches = 0;
            for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size)
            {
                const std::span<const std::size_t> idx(order.data() + begin,
                                                       std::min(config.batch_size, order.size() - begin));
                loss_sum += model.loss_and_gradient(train_set.batch(idx), train_set.targets(idx, model.scaler()));
                adam_step(params, adam, stats.learning_rate);
                ++batches;
            }
            stats.train_loss = loss_sum / static_cast<double>(batches);
            stats.validation_loss = evaluate_loss(model, val_set);
            stats.validation_rmse_m = evaluate_rmse(model, val_set);
            result.history.push_back(stats);
            if (on_epoch)
                on_epoch(stats);

            if (!config.keep_best_validation || val_set.size() == 0 || stats.validation_rmse_m < best_val)
            {
                best_val = stats.validation_rmse_m;
                best = model;
                result.best_epoch = epoch;
            }
        }
        if (config.keep_best_validation && result.best_epoch >= 0)
            result.model = best;
        return result;
    }

} // namespace nfloc::nn
