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

#include <doctest.h>

#include "gradcheck.hpp"

#include "nfloc/binary_io.hpp"
#include "nfloc/errors.hpp"
#include "nfloc/nn/checkpoint.hpp"
#include "nfloc/nn/training.hpp"

#include <filesystem>

using namespace nfloc;
using namespace nfloc::nn;

namespace
{
    std::vector<LabeledSample> synthetic_samples(std::size_t m, std::size_t n)
    {
        std::vector<LabeledSample> out;
        std::mt19937_64 gen(8);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t i = 0; i < n; ++i)
        {
            LabeledSample s;
            s.index = i;
            s.split = i % 10 < 7 ? Split::kTrain : (i % 10 < 9 ? Split::kValidation : Split::kTest);
            const double pos = u(gen);
            s.binary.assign(m, 0);
            const auto c = static_cast<std::size_t>(pos * static_cast<double>(m - 4));
            for (std::size_t k = c; k < c + 4; ++k)
                s.binary[k] = 1;
            s.truth_xz = {10.0 * pos - 5.0, 20.0};
            out.push_back(std::move(s));
        }
        return out;
    }
} // namespace

TEST_CASE("scaler fits mean and standard deviation")
{
    const TargetScaler s = fit_scaler({{0, 10}, {2, 10}, {4, 10}});
    CHECK(s.mean.x() == doctest::Approx(2.0));
    CHECK(s.scale.x() == doctest::Approx(std::sqrt(8.0 / 3.0)));
    CHECK(s.scale.y() > 0.0);
    const Eigen::Vector2d v(3.0, 10.0);
    CHECK((s.destandardize(s.standardize(v)) - v).norm() < 1e-12);
}

TEST_CASE("sample set batches stacked observations")
{
    const auto samples = synthetic_samples(12, 20);
    const SampleSet train(samples, Split::kTrain);
    CHECK(train.size() == 14);
    const std::size_t idx[] = {0, 3};
    const Tensor b = train.batch(idx);
    CHECK(b.shape() == std::vector<std::size_t>{2, 2, 12});
    for (std::size_t k = 0; k < 12; ++k)
        CHECK(b[k] == b[2 * 12 - 1 - k]);
}

TEST_CASE("training reduces the validation error and is deterministic")
{
    const auto samples = synthetic_samples(24, 300);
    TrainingConfig cfg;
    cfg.epochs = 15;
    cfg.batch_size = 16;
    cfg.hidden = {16};
    cfg.hyper.learning_rate = 3e-3;
    std::vector<EpochStats> seen;
    const TrainingResult a = train(samples, cfg, [&](const EpochStats &s) { seen.push_back(s); });
    REQUIRE(a.history.size() == 15);
    CHECK(seen.size() == 15);
    CHECK(a.history.back().learning_rate == doctest::Approx(3e-3 * std::pow(0.98, 14)));
    CHECK(a.history.back().validation_rmse_m < a.history.front().validation_rmse_m);
    CHECK(a.best_epoch >= 0);

    const TrainingResult b = train(samples, cfg);
    CHECK(encode_checkpoint(a.model, cfg.hash()) == encode_checkpoint(b.model, cfg.hash()));
}

TEST_CASE("training rejects inconsistent inputs")
{
    TrainingConfig cfg;
    cfg.batch_size = 0;
    CHECK_THROWS(cfg.validate());
    CHECK_THROWS(train({}, TrainingConfig{}));
}

TEST_CASE("checkpoint round trip preserves predictions exactly")
{
    BiCnnArchitecture arch;
    arch.input_length = 21;
    arch.hidden = {5, 4};
    BiCnnHyper hyper;
    hyper.penalty = PenaltyForm::kLinear;
    BiCnnModel model(arch, hyper, 77);
    TargetScaler s;
    s.mean = {0.5, 21.0};
    s.scale = {4.0, 7.0};
    model.set_scaler(s);

    const auto bytes = encode_checkpoint(model, 0xabcdef);
    const Checkpoint back = decode_checkpoint(bytes);
    CHECK(back.config_hash == 0xabcdef);
    CHECK(back.model.architecture().hidden == arch.hidden);
    CHECK(back.model.hyper().penalty == PenaltyForm::kLinear);
    CHECK(encode_checkpoint(back.model, 0xabcdef) == bytes);

    std::mt19937_64 gen(2);
    Eigen::MatrixXd stacked(2, 21);
    for (Eigen::Index i = 0; i < stacked.size(); ++i)
        stacked.data()[i] = static_cast<double>(gen() % 2);
    CHECK(model.predict(stacked) == back.model.predict(stacked));

    const auto path = std::filesystem::temp_directory_path() / "nfloc_test.nfck";
    save_checkpoint(path, model, 1);
    CHECK(load_checkpoint(path).model.parameter_count() == model.parameter_count());
    std::filesystem::remove(path);
}

TEST_CASE("corrupted checkpoints are rejected")
{
    BiCnnArchitecture arch;
    arch.input_length = 9;
    arch.hidden = {3};
    const auto bytes = encode_checkpoint(BiCnnModel(arch, {}, 1), 0);
    auto flipped = bytes;
    flipped[flipped.size() / 2] ^= 1;
    CHECK_THROWS_AS(decode_checkpoint(flipped), FormatError);
    auto cut = bytes;
    cut.resize(cut.size() - 3);
    CHECK_THROWS_AS(decode_checkpoint(cut), FormatError);
    auto version = bytes;
    version[4] = 2;
    CHECK_THROWS_AS(decode_checkpoint(version), FormatError);
}
