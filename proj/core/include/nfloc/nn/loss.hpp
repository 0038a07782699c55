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

#ifndef NFLOC_NN_LOSS_HPP
#define NFLOC_NN_LOSS_HPP

#include "nfloc/nn/tensor.hpp"

#include <Eigen/Core>

#include <span>
#include <vector>

namespace nfloc::nn
{
    // Regularisation term over all trainable parameters.
    enum class PenaltyForm
    {
        kSquared, // mu * sum phi_i^2
        kLinear,  // mu * sum phi_i, the unsquared form
    };

    // Huber on the Euclidean error e = ||truth - estimate||:
    //   0.5 e^2                 if e <= delta
    //   delta * e - 0.5 * delta otherwise
    // The linear branch keeps the constant 0.5 * delta (not 0.5 * delta^2); the two agree at delta = 1.
    double huber_loss(const Eigen::Vector2d &truth, const Eigen::Vector2d &estimate, double delta);

    // d huber / d estimate.
    Eigen::Vector2d huber_gradient(const Eigen::Vector2d &truth, const Eigen::Vector2d &estimate, double delta);

    // Mean Huber over the rows of (N, 2) tensors; writes d loss / d estimate into `grad` when non-null.
    double huber_loss_batch(const Tensor &truth, const Tensor &estimate, double delta, Tensor *grad = nullptr);

    double l2_penalty(std::span<const Tensor *const> params, double mu, PenaltyForm form = PenaltyForm::kSquared);
    double l2_penalty(std::span<const double> values, double mu, PenaltyForm form = PenaltyForm::kSquared);

    // Adds d penalty / d phi to every parameter's grad buffer.
    void add_l2_gradient(std::span<Tensor *const> params, double mu, PenaltyForm form = PenaltyForm::kSquared);

} // namespace nfloc::nn

#endif
