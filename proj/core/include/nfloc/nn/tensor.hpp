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

#ifndef NFLOC_NN_TENSOR_HPP
#define NFLOC_NN_TENSOR_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace nfloc::nn
{
    // Dense row-major real tensor with an optional gradient buffer of the same size.
    class Tensor
    {
    public:
        Tensor() = default;
        explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
        Tensor(std::vector<std::size_t> shape, std::vector<double> values);

        const std::vector<std::size_t> &shape() const { return shape_; }
        std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
        std::size_t rank() const { return shape_.size(); }
        std::size_t size() const { return values_.size(); }

        double *data() { return values_.data(); }
        const double *data() const { return values_.data(); }
        std::span<double> values() { return values_; }
        std::span<const double> values() const { return values_; }
        double &operator[](std::size_t i) { return values_[i]; }
        double operator[](std::size_t i) const { return values_[i]; }

        bool has_grad() const { return !grad_.empty(); }
        std::span<double> grad() { return grad_; }
        std::span<const double> grad() const { return grad_; }
        void zero_grad(); // allocates on first use

        // Same values, new shape with equal element count.
        Tensor reshaped(std::vector<std::size_t> shape) const;

        std::string shape_string() const;

    private:
        std::vector<std::size_t> shape_;
        std::vector<double> values_;
        std::vector<double> grad_;
    };

    std::size_t element_count(const std::vector<std::size_t> &shape);

} // namespace nfloc::nn

#endif
