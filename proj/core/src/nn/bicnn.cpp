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

#include "nfloc/nn/bicnn.hpp"
#include "nfloc/errors.hpp"
#include "nfloc/nn/layers.hpp"

#include <cmath>
#include <random>

namespace nfloc::nn
{
    void BiCnnArchitecture::validate() const
    {
        if (input_channels != 2)
            throw ShapeError("BiCNN input must have exactly two channels");
        if (kernel_width == 0 || conv_channels == 0 || pool_window == 0)
            throw ParameterError("BiCNN layer sizes must be positive");
        if (input_length < kernel_width || conv_length() < pool_window)
            throw ShapeError("BiCNN input length " + std::to_string(input_length) + " is too short");
        for (std::size_t h : hidden)
            if (h == 0)
                throw ParameterError("BiCNN hidden widths must be positive");
    }

    namespace
    {
        void init_uniform(Tensor &t, std::size_t fan_in, std::mt19937_64 &rng)
        {
            const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
            std::uniform_real_distribution<double> dist(-bound, bound);
            for (double &v : t.values())
                v = dist(rng);
        }
    } // namespace

    BiCnnModel::BiCnnModel(BiCnnArchitecture arch, BiCnnHyper hyper, std::uint64_t init_seed)
        : arch_(std::move(arch)), hyper_(hyper), init_seed_(init_seed)
    {
        arch_.validate();
        std::mt19937_64 rng(init_seed);
        conv_kernel_ = Tensor({arch_.conv_channels, arch_.input_channels, arch_.kernel_width});
        conv_bias_ = Tensor({arch_.conv_channels});
        init_uniform(conv_kernel_, arch_.input_channels * arch_.kernel_width, rng);

        std::size_t in = arch_.feature_size();
        std::vector<std::size_t> widths = arch_.hidden;
        widths.push_back(2);
        for (std::size_t out : widths)
        {
            LinearLayer layer{Tensor({out, in}), Tensor({out})};
            init_uniform(layer.weight, in, rng);
            decoder_.push_back(std::move(layer));
            in = out;
        }
    }

    std::vector<Tensor *> BiCnnModel::parameters()
    {
        std::vector<Tensor *> p{&conv_kernel_, &conv_bias_};
        for (auto &layer : decoder_)
        {
            p.push_back(&layer.weight);
            p.push_back(&layer.bias);
        }
        return p;
    }

    std::vector<const Tensor *> BiCnnModel::parameters() const
    {
        std::vector<const Tensor *> p{&conv_kernel_, &conv_bias_};
        for (const auto &layer : decoder_)
        {
            p.push_back(&layer.weight);
            p.push_back(&layer.bias);
        }
        return p;
    }

    std::size_t BiCnnModel::parameter_count() const
    {
        std::size_t n = 0;
        for (const Tensor *t : parameters())
            n += t->size();
        return n;
    }

    void BiCnnModel::zero_grad()
    {
        for (Tensor *t : parameters())
            t->zero_grad();
    }

    namespace
    {
        void check_batch(const Tensor &batch, const BiCnnArchitecture &arch)
        {
            if (batch.rank() != 3 || batch.dim(1) != arch.input_channels || batch.dim(2) != arch.input_length)
                throw ShapeError("BiCNN expects (N, 2, " + std::to_string(arch.input_length) + ") input, got " +
                                 batch.shape_string());
        }
    } // namespace

    Tensor BiCnnModel::forward(const Tensor &batch) const
    {
        check_batch(batch, arch_);
        const std::size_t n = batch.dim(0);
        Tensor h = maxpool1d(gelu(conv1d_forward(batch, conv_kernel_, conv_bias_)), arch_.pool_window);
        h = h.reshaped({n, arch_.feature_size()});
        for (std::size_t i = 0; i < decoder_.size(); ++i)
        {
            h = linear_forward(h, decoder_[i].weight, decoder_[i].bias);
            if (i + 1 < decoder_.size())
                h = gelu(h);
        }
        return h;
    }

    double BiCnnModel::loss(const Tensor &batch, const Tensor &targets) const
    {
        const Tensor out = forward(batch);
        return huber_loss_batch(targets, out, hyper_.huber_delta) +
               l2_penalty(parameters(), hyper_.l2_weight, hyper_.penalty);
    }

    double BiCnnModel::loss_and_gradient(const Tensor &batch, const Tensor &targets)
    {
        check_batch(batch, arch_);
        const std::size_t n = batch.dim(0);
        zero_grad();

        // Forward with every intermediate kept for the backward pass.
        const Tensor conv = conv1d_forward(batch, conv_kernel_, conv_bias_);
        const Tensor act = gelu(conv);
        std::vector<std::size_t> argmax;
        const Tensor pooled = maxpool1d(act, arch_.pool_window, &argmax);

        std::vector<Tensor> lin_in;  // input of each linear layer
        std::vector<Tensor> lin_out; // pre-activation output of each linear layer
        lin_in.push_back(pooled.reshaped({n, arch_.feature_size()}));
        for (std::size_t i = 0; i < decoder_.size(); ++i)
        {
            lin_out.push_back(linear_forward(lin_in.back(), decoder_[i].weight, decoder_[i].bias));
            if (i + 1 < decoder_.size())
                lin_in.push_back(gelu(lin_out.back()));
        }

        Tensor grad;
        const double data_loss = huber_loss_batch(targets, lin_out.back(), hyper_.huber_delta, &grad);

        for (std::size_t i = decoder_.size(); i-- > 0;)
        {
            if (i + 1 < decoder_.size())
                grad = gelu_backward(lin_out[i], grad);
            grad = linear_backward(lin_in[i], decoder_[i].weight, decoder_[i].bias, grad);
        }
        grad = maxpool1d_backward(act.shape(), argmax, grad.reshaped(pooled.shape()));
        grad = gelu_backward(conv, grad);
        conv1d_backward(batch, conv_kernel_, conv_bias_, grad);

        const auto params = parameters();
        add_l2_gradient(params, hyper_.l2_weight, hyper_.penalty);
        return data_loss + l2_penalty(std::vector<const Tensor *>(params.begin(), params.end()), hyper_.l2_weight,
                                      hyper_.penalty);
    }

    Eigen::Vector2d BiCnnModel::predict(const Eigen::MatrixXd &stacked) const
    {
        if (stacked.rows() != 2 || static_cast<std::size_t>(stacked.cols()) != arch_.input_length)
            throw ShapeError("BiCNN expects a 2 x " + std::to_string(arch_.input_length) + " observation");
        const Tensor out = forward(make_batch({&stacked}));
        return scaler_.destandardize(Eigen::Vector2d(out[0], out[1]));
    }

    Eigen::Vector2d bicnn_forward(const BiCnnModel &model, const Observation &obs)
    {
        return model.predict(obs.stacked);
    }

    Tensor make_batch(const std::vector<const Eigen::MatrixXd *> &stacked)
    {
        if (stacked.empty())
            throw ShapeError("make_batch: empty batch");
        const std::size_t len = static_cast<std::size_t>(stacked.front()->cols());
        Tensor batch({stacked.size(), 2, len});
        double *out = batch.data();
        for (const Eigen::MatrixXd *m : stacked)
        {
            if (m->rows() != 2 || static_cast<std::size_t>(m->cols()) != len)
                throw ShapeError("make_batch: observations must all be 2 x M");
            for (Eigen::Index r = 0; r < 2; ++r)
                for (Eigen::Index c = 0; c < m->cols(); ++c)
                    *out++ = (*m)(r, c);
        }
        return batch;
    }

} // namespace nfloc::nn
