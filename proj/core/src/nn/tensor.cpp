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

#include "nfloc/nn/tensor.hpp"
#include "nfloc/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace nfloc::nn
{
    std::size_t element_count(const std::vector<std::size_t> &shape)
    {
        return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
    }

    Tensor::Tensor(std::vector<std::size_t> shape, double fill)
        : shape_(std::move(shape)), values_(element_count(shape_), fill)
    {
        if (std::find(shape_.begin(), shape_.end(), std::size_t{0}) != shape_.end())
            throw ShapeError("tensor dimensions must be positive");
    }

    Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> values)
        : shape_(std::move(shape)), values_(std::move(values))
    {
        if (values_.size() != element_count(shape_))
            throw ShapeError("tensor value count " + std::to_string(values_.size()) + " does not match shape " +
                             shape_string());
    }

    void Tensor::zero_grad()
    {
        if (grad_.size() != values_.size())
            grad_.assign(values_.size(), 0.0);
        else
            std::fill(grad_.begin(), grad_.end(), 0.0);
    }

    Tensor Tensor::reshaped(std::vector<std::size_t> shape) const
    {
        return Tensor(std::move(shape), values_);
    }

    std::string Tensor::shape_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < shape_.size(); ++i)
        {
            if (i)
                s += ", ";
            s += std::to_string(shape_[i]);
        }
        return s + ")";
    }

} // namespace nfloc::nn
