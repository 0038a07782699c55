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

#include "nfloc/nn/optim.hpp"
#include "nfloc/errors.hpp"

#include <cmath>

namespace nfloc::nn
{
    AdamState AdamState::for_parameters(std::span<const Tensor *const> params)
    {
        AdamState s;
        for (const Tensor *p : params)
        {
            s.first_moment.emplace_back(p->size(), 0.0);
            s.second_moment.emplace_back(p->size(), 0.0);
        }
        return s;
    }

    void adam_step(std::span<Tensor *const> params, AdamState &state, double learning_rate)
    {
        if (state.first_moment.size() != params.size() || state.second_moment.size() != params.size())
            throw ShapeError("adam_step: optimizer state does not match the parameter list");
        ++state.step_count;
        const double t = static_cast<double>(state.step_count);
        const double c1 = 1.0 - std::pow(state.beta1, t);
        const double c2 = 1.0 - std::pow(state.beta2, t);
        for (std::size_t p = 0; p < params.size(); ++p)
        {
            Tensor &param = *params[p];
            if (!param.has_grad())
                continue;
            auto &m = state.first_moment[p];
            auto &v = state.second_moment[p];
            if (m.size() != param.size())
                throw ShapeError("adam_step: moment buffer size mismatch");
            auto g = param.grad();
            auto x = param.values();
            for (std::size_t i = 0; i < x.size(); ++i)
            {
                m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g[i];
                v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g[i] * g[i];
                const double mhat = m[i] / c1;
                const double vhat = v[i] / c2;
                x[i] -= learning_rate * mhat / (std::sqrt(vhat) + state.epsilon);
            }
        }
    }

    double lr_schedule(int epoch, double initial_rate, double alpha)
    {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw ParameterError("lr_schedule: decay factor must lie in (0, 1]");
        if (epoch < 0)
            throw ParameterError("lr_schedule: epoch must be non-negative");
        return initial_rate * std::pow(alpha, epoch);
    }

} // namespace nfloc::nn
