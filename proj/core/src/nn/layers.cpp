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

#include "nfloc/nn/layers.hpp"
#include "nfloc/errors.hpp"

#include <Eigen/Core>

#include <cmath>

namespace nfloc::nn
{
    namespace
    {
        using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        using MapRow = Eigen::Map<RowMatrix>;
        using ConstMapRow = Eigen::Map<const RowMatrix>;

        struct Dims3
        {
            std::size_t n, c, l;
            bool batched;
        };

        Dims3 dims3(const Tensor &t, const char *what)
        {
            if (t.rank() == 3)
                return {t.dim(0), t.dim(1), t.dim(2), true};
            if (t.rank() == 2)
                return {1, t.dim(0), t.dim(1), false};
            throw ShapeError(std::string(what) + ": expected (N, C, L) or (C, L), got " + t.shape_string());
        }

        std::vector<std::size_t> shape3(const Dims3 &d, std::size_t c, std::size_t l)
        {
            if (d.batched)
                return {d.n, c, l};
            return {c, l};
        }

        constexpr double kInvSqrt2 = 0.70710678118654752440;
        constexpr double kInvSqrt2Pi = 0.39894228040143267794;
    } // namespace

    Tensor conv1d_forward(const Tensor &input, const Tensor &kernel, const Tensor &bias)
    {
        const Dims3 in = dims3(input, "conv1d");
        if (kernel.rank() != 3 || kernel.dim(1) != in.c)
            throw ShapeError("conv1d: kernel " + kernel.shape_string() + " does not match input " +
                             input.shape_string());
        const std::size_t out_c = kernel.dim(0);
        const std::size_t width = kernel.dim(2);
        if (bias.size() != out_c)
            throw ShapeError("conv1d: bias length must equal output channels");
        if (in.l < width)
            throw ShapeError("conv1d: input length " + std::to_string(in.l) + " is shorter than the kernel");
        const std::size_t out_l = in.l - width + 1;

        Tensor out(shape3(in, out_c, out_l));
        const double *x = input.data();
        const double *w = kernel.data();
        double *y = out.data();
        for (std::size_t n = 0; n < in.n; ++n)
            for (std::size_t oc = 0; oc < out_c; ++oc)
            {
                double *yrow = y + (n * out_c + oc) * out_l;
                for (std::size_t t = 0; t < out_l; ++t)
                    yrow[t] = bias[oc];
                for (std::size_t ic = 0; ic < in.c; ++ic)
                {
                    const double *xrow = x + (n * in.c + ic) * in.l;
                    for (std::size_t k = 0; k < width; ++k)
                    {
                        const double wk = w[(oc * in.c + ic) * width + k];
                        for (std::size_t t = 0; t < out_l; ++t)
                            yrow[t] += wk * xrow[t + k];
                    }
                }
            }
        return out;
    }

    Tensor conv1d_backward(const Tensor &input, Tensor &kernel, Tensor &bias, const Tensor &grad_output)
    {
        const Dims3 in = dims3(input, "conv1d_backward");
        const std::size_t out_c = kernel.dim(0);
        const std::size_t width = kernel.dim(2);
        const std::size_t out_l = in.l - width + 1;
        if (grad_output.size() != in.n * out_c * out_l)
            throw ShapeError("conv1d_backward: gradient shape mismatch");
        if (!kernel.has_grad())
            kernel.zero_grad();
        if (!bias.has_grad())
            bias.zero_grad();

        Tensor grad_in(input.shape());
        const double *x = input.data();
        const double *w = kernel.data();
        const double *gy = grad_output.data();
        double *gx = grad_in.data();
        auto gw = kernel.grad();
        auto gb = bias.grad();
        for (std::size_t n = 0; n < in.n; ++n)
            for (std::size_t oc = 0; oc < out_c; ++oc)
            {
                const double *grow = gy + (n * out_c + oc) * out_l;
                double bsum = 0.0;
                for (std::size_t t = 0; t < out_l; ++t)
                    bsum += grow[t];
                gb[oc] += bsum;
                for (std::size_t ic = 0; ic < in.c; ++ic)
                {
                    const double *xrow = x + (n * in.c + ic) * in.l;
                    double *gxrow = gx + (n * in.c + ic) * in.l;
                    for (std::size_t k = 0; k < width; ++k)
                    {
                        const std::size_t widx = (oc * in.c + ic) * width + k;
                        double acc = 0.0;
                        for (std::size_t t = 0; t < out_l; ++t)
                        {
                            acc += grow[t] * xrow[t + k];
                            gxrow[t + k] += grow[t] * w[widx];
                        }
                        gw[widx] += acc;
                    }
                }
            }
        return grad_in;
    }

    double gelu(double x)
    {
        return 0.5 * x * (1.0 + std::erf(x * kInvSqrt2));
    }

    double gelu_derivative(double x)
    {
        return 0.5 * (1.0 + std::erf(x * kInvSqrt2)) + x * kInvSqrt2Pi * std::exp(-0.5 * x * x);
    }

    Tensor gelu(const Tensor &input)
    {
        Tensor out(input.shape());
        for (std::size_t i = 0; i < input.size(); ++i)
            out[i] = gelu(input[i]);
        return out;
    }

    Tensor gelu_backward(const Tensor &input, const Tensor &grad_output)
    {
        if (grad_output.size() != input.size())
            throw ShapeError("gelu_backward: gradient shape mismatch");
        Tensor out(input.shape());
        for (std::size_t i = 0; i < input.size(); ++i)
            out[i] = grad_output[i] * gelu_derivative(input[i]);
        return out;
    }

    Tensor maxpool1d(const Tensor &input, std::size_t window, std::vector<std::size_t> *argmax)
    {
        if (window == 0)
            throw ParameterError("maxpool1d: window must be at least 1");
        const Dims3 in = dims3(input, "maxpool1d");
        const std::size_t out_l = in.l / window;
        if (out_l == 0)
            throw ShapeError("maxpool1d: input shorter than the window");

        Tensor out(shape3(in, in.c, out_l));
        if (argmax)
            argmax->assign(out.size(), 0);
        const double *x = input.data();
        for (std::size_t row = 0; row < in.n * in.c; ++row)
            for (std::size_t t = 0; t < out_l; ++t)
            {
                std::size_t best = row * in.l + t * window;
                for (std::size_t k = 1; k < window; ++k)
                {
                    const std::size_t idx = row * in.l + t * window + k;
                    if (x[idx] > x[best])
                        best = idx;
                }
                out[row * out_l + t] = x[best];
                if (argmax)
                    (*argmax)[row * out_l + t] = best;
            }
        return out;
    }

    Tensor maxpool1d_backward(const std::vector<std::size_t> &input_shape, const std::vector<std::size_t> &argmax,
                              const Tensor &grad_output)
    {
        if (argmax.size() != grad_output.size())
            throw ShapeError("maxpool1d_backward: argmax and gradient sizes differ");
        Tensor grad_in(input_shape);
        for (std::size_t i = 0; i < argmax.size(); ++i)
            grad_in[argmax[i]] += grad_output[i];
        return grad_in;
    }

    Tensor linear_forward(const Tensor &input, const Tensor &weight, const Tensor &bias)
    {
        if (weight.rank() != 2)
            throw ShapeError("linear: weight must be (out, in)");
        const std::size_t out_f = weight.dim(0);
        const std::size_t in_f = weight.dim(1);
        if (bias.size() != out_f)
            throw ShapeError("linear: bias length must equal output features");
        const bool batched = input.rank() == 2;
        if (!(batched || input.rank() == 1) || input.shape().back() != in_f)
            throw ShapeError("linear: input " + input.shape_string() + " does not match weight " +
                             weight.shape_string());
        const std::size_t n = batched ? input.dim(0) : 1;

        Tensor out(batched ? std::vector<std::size_t>{n, out_f} : std::vector<std::size_t>{out_f});
        ConstMapRow X(input.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(in_f));
        ConstMapRow W(weight.data(), static_cast<Eigen::Index>(out_f), static_cast<Eigen::Index>(in_f));
        Eigen::Map<const Eigen::RowVectorXd> b(bias.data(), static_cast<Eigen::Index>(out_f));
        MapRow Y(out.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(out_f));
        Y.noalias() = X * W.transpose();
        Y.rowwise() += b;
        return out;
    }

    Tensor linear_backward(const Tensor &input, Tensor &weight, Tensor &bias, const Tensor &grad_output)
    {
        const std::size_t out_f = weight.dim(0);
        const std::size_t in_f = weight.dim(1);
        const std::size_t n = input.rank() == 2 ? input.dim(0) : 1;
        if (grad_output.size() != n * out_f)
            throw ShapeError("linear_backward: gradient shape mismatch");
        if (!weight.has_grad())
            weight.zero_grad();
        if (!bias.has_grad())
            bias.zero_grad();

        ConstMapRow X(input.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(in_f));
        ConstMapRow W(weight.data(), static_cast<Eigen::Index>(out_f), static_cast<Eigen::Index>(in_f));
        ConstMapRow G(grad_output.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(out_f));
        MapRow GW(weight.grad().data(), static_cast<Eigen::Index>(out_f), static_cast<Eigen::Index>(in_f));
        Eigen::Map<Eigen::RowVectorXd> GB(bias.grad().data(), static_cast<Eigen::Index>(out_f));
        GW.noalias() += G.transpose() * X;
        GB += G.colwise().sum();

        Tensor grad_in(input.shape());
        MapRow GX(grad_in.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(in_f));
        GX.noalias() = G * W;
        return grad_in;
    }

} // namespace nfloc::nn
