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

#include "nfloc/nn/loss.hpp"
#include "nfloc/errors.hpp"

#include <cmath>

namespace nfloc::nn
{
    double huber_loss(const Eigen::Vector2d &truth, const Eigen::Vector2d &estimate, double delta)
    {
        if (!(delta > 0.0))
            throw ParameterError("huber_loss: delta must be positive");
        const double e = (truth - estimate).norm();
        if (e <= delta)
            return 0.5 * e * e;
        return delta * e - 0.5 * delta;
    }

    Eigen::Vector2d huber_gradient(const Eigen::Vector2d &truth, const Eigen::Vector2d &estimate, double delta)
    {
        const Eigen::Vector2d diff = estimate - truth;
        const double e = diff.norm();
        if (e <= delta)
            return diff;
        return delta * diff / e;
    }

    double huber_loss_batch(const Tensor &truth, const Tensor &estimate, double delta, Tensor *grad)
    {
        if (truth.size() != estimate.size() || truth.size() % 2 != 0)
            throw ShapeError("huber_loss_batch: expected matching (N, 2) tensors");
        const std::size_t n = truth.size() / 2;
        if (grad)
            *grad = Tensor(estimate.shape());
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            const Eigen::Vector2d t(truth[2 * i], truth[2 * i + 1]);
            const Eigen::Vector2d e(estimate[2 * i], estimate[2 * i + 1]);
            total += huber_loss(t, e, delta);
            if (grad)
            {
                const Eigen::Vector2d g = huber_gradient(t, e, delta) / static_cast<double>(n);
                (*grad)[2 * i] = g[0];
                (*grad)[2 * i + 1] = g[1];
            }
        }
        return total / static_cast<double>(n);
    }

    double l2_penalty(std::span<const double> values, double mu, PenaltyForm form)
    {
        if (mu < 0.0)
            throw ParameterError("l2_penalty: mu must be non-negative");
        double s = 0.0;
        for (double v : values)
            s += form == PenaltyForm::kSquared ? v * v : v;
        return mu * s;
    }

    double l2_penalty(std::span<const Tensor *const> params, double mu, PenaltyForm form)
    {
        double s = 0.0;
        for (const Tensor *p : params)
            s += l2_penalty(p->values(), mu, form);
        return s;
    }

    void add_l2_gradient(std::span<Tensor *const> params, double mu, PenaltyForm form)
    {
        for (Tensor *p : params)
        {
            if (!p->has_grad())
                p->zero_grad();
            auto g = p->grad();
            auto v = p->values();
            for (std::size_t i = 0; i < g.size(); ++i)
                g[i] += form == PenaltyForm::kSquared ? 2.0 * mu * v[i] : mu;
        }
    }

} // namespace nfloc::nn
