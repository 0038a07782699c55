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

#ifndef NFLOC_NN_OPTIM_HPP
#define NFLOC_NN_OPTIM_HPP

#include "nfloc/nn/tensor.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nfloc::nn
{
    struct AdamState
    {
        std::vector<std::vector<double>> first_moment;  // one buffer per parameter tensor
        std::vector<std::vector<double>> second_moment;
        std::int64_t step_count = 0;
        double beta1 = 0.9;
        double beta2 = 0.999;
        double epsilon = 1e-8;

        // Zero moments shaped like `params`.
        static AdamState for_parameters(std::span<const Tensor *const> params);
    };

    // One bias-corrected Adam update using each parameter's grad buffer.
    void adam_step(std::span<Tensor *const> params, AdamState &state, double learning_rate);

    // w0 * alpha^epoch; alpha must lie in (0, 1].
    double lr_schedule(int epoch, double initial_rate, double alpha);

} // namespace nfloc::nn

#endif
