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

#ifndef NFLOC_NN_BICNN_HPP
#define NFLOC_NN_BICNN_HPP

#include "nfloc/nn/loss.hpp"
#include "nfloc/nn/tensor.hpp"
#include "nfloc/observation.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nfloc::nn
{
    // Conv1D(C, K) -> GeLU -> MaxPool(window) -> flatten -> [Linear -> GeLU]* -> Linear(2).
    struct BiCnnArchitecture
    {
        std::size_t input_length = 511; // M
        std::size_t input_channels = 2; // o and its flipped copy
        std::size_t conv_channels = 8;
        std::size_t kernel_width = 2;
        std::size_t pool_window = 2;
        std::vector<std::size_t> hidden{128};

        std::size_t conv_length() const { return input_length - kernel_width + 1; }
        std::size_t pooled_length() const { return conv_length() / pool_window; }
        std::size_t feature_size() const { return conv_channels * pooled_length(); }
        void validate() const;
    };

    struct BiCnnHyper
    {
        double huber_delta = 1.0;    // rho
        double l2_weight = 1e-5;     // mu
        double learning_rate = 1e-3; // w
        double lr_decay = 0.98;      // alpha
        PenaltyForm penalty = PenaltyForm::kSquared;
    };

    // Affine map between metres and the standardised regression targets the network sees.
    struct TargetScaler
    {
        Eigen::Vector2d mean = Eigen::Vector2d::Zero();
        Eigen::Vector2d scale = Eigen::Vector2d::Ones();

        Eigen::Vector2d standardize(const Eigen::Vector2d &xz) const { return (xz - mean).cwiseQuotient(scale); }
        Eigen::Vector2d destandardize(const Eigen::Vector2d &v) const { return v.cwiseProduct(scale) + mean; }
    };

    struct LinearLayer
    {
        Tensor weight; // (out, in)
        Tensor bias;   // (out)
    };

    class BiCnnModel
    {
    public:
        BiCnnModel() = default;
        // Fan-in scaled uniform weights U(-1/sqrt(fan_in), 1/sqrt(fan_in)), zero biases.
        BiCnnModel(BiCnnArchitecture arch, BiCnnHyper hyper, std::uint64_t init_seed);

        const BiCnnArchitecture &architecture() const { return arch_; }
        const BiCnnHyper &hyper() const { return hyper_; }
        BiCnnHyper &hyper() { return hyper_; }
        const TargetScaler &scaler() const { return scaler_; }
        void set_scaler(const TargetScaler &s) { scaler_ = s; }
        std::uint64_t init_seed() const { return init_seed_; }

        Tensor &conv_kernel() { return conv_kernel_; }
        Tensor &conv_bias() { return conv_bias_; }
        std::vector<LinearLayer> &decoder() { return decoder_; }
        const std::vector<LinearLayer> &decoder() const { return decoder_; }

        // phi in a fixed order: conv kernel, conv bias, then (weight, bias) per linear layer.
        std::vector<Tensor *> parameters();
        std::vector<const Tensor *> parameters() const;
        std::size_t parameter_count() const;
        void zero_grad();

        // (N, 2, M) -> (N, 2) in standardised units.
        Tensor forward(const Tensor &batch) const;

        // Mean Huber over the batch plus the penalty. Fills every parameter's grad buffer.
        double loss_and_gradient(const Tensor &batch, const Tensor &targets);
        double loss(const Tensor &batch, const Tensor &targets) const;

        // Position estimate (x, z) in metres from a 2 x M stacked observation.
        Eigen::Vector2d predict(const Eigen::MatrixXd &stacked) const;

    private:
        BiCnnArchitecture arch_;
        BiCnnHyper hyper_;
        TargetScaler scaler_;
        std::uint64_t init_seed_ = 0;
        Tensor conv_kernel_; // (C, 2, K)
        Tensor conv_bias_;   // (C)
        std::vector<LinearLayer> decoder_;
    };

    // F(O; phi): stacked observation -> (x, z) in metres.
    Eigen::Vector2d bicnn_forward(const BiCnnModel &model, const Observation &obs);

    // Packs 2 x M observations into an (N, 2, M) batch.
    Tensor make_batch(const std::vector<const Eigen::MatrixXd *> &stacked);

} // namespace nfloc::nn

#endif
