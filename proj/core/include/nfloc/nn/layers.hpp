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

#ifndef NFLOC_NN_LAYERS_HPP
#define NFLOC_NN_LAYERS_HPP

#include "nfloc/nn/tensor.hpp"

#include <cstddef>
#include <vector>

namespace nfloc::nn
{
    // Layer primitives. Inputs are batched, (N, C, L) for the 1D ops and (N, F) for
    // linear; an unbatched (C, L) / (F) input is accepted and the output keeps its rank.
    // Backward functions accumulate parameter gradients into the parameter tensors'
    // grad buffers (which must have been zeroed) and return the gradient w.r.t. the input.

    // Valid cross-correlation, stride 1:
    // out[n, c, t] = bias[c] + sum_{ic, k} kernel[c, ic, k] * in[n, ic, t + k]
    Tensor conv1d_forward(const Tensor &input, const Tensor &kernel, const Tensor &bias);
    Tensor conv1d_backward(const Tensor &input, Tensor &kernel, Tensor &bias, const Tensor &grad_output);

    // Exact x * Phi(x).
    double gelu(double x);
    double gelu_derivative(double x);
    Tensor gelu(const Tensor &input);
    Tensor gelu_backward(const Tensor &input, const Tensor &grad_output);

    // Non-overlapping max over the last axis; the trailing remainder is dropped.
    // `argmax` (optional) receives the flat input index chosen for every output element.
    Tensor maxpool1d(const Tensor &input, std::size_t window, std::vector<std::size_t> *argmax = nullptr);
    Tensor maxpool1d_backward(const std::vector<std::size_t> &input_shape, const std::vector<std::size_t> &argmax,
                              const Tensor &grad_output);

    // weight (out, in), bias (out): y = W x + b.
    Tensor linear_forward(const Tensor &input, const Tensor &weight, const Tensor &bias);
    Tensor linear_backward(const Tensor &input, Tensor &weight, Tensor &bias, const Tensor &grad_output);

} // namespace nfloc::nn

#endif
