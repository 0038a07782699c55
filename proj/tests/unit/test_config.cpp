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

#include "nfloc/config.hpp"
#include "nfloc/errors.hpp"

using namespace nfloc;

TEST_CASE("defaults when no keys are given")
{
    const ExperimentConfig c = parse_experiment_config("");
    CHECK(c.system.num_antennas == 511);
    CHECK(c.dataset.sample_count() == 8611);
    CHECK(c.training.epochs == 50);
    CHECK(c.eval.music_grids == std::vector<std::size_t>{10, 100, 1000});
}

TEST_CASE("sections override defaults")
{
    const ExperimentConfig c = parse_experiment_config(R"(
[system]
num_antennas = 127
transmit_power_dbm = 50

[dataset]
angle_step = 0.05
noise_enabled = false

[training]
epochs = 3
hidden = 64, 32
l2_form = linear

[eval]
trials = 7
music_grids = 10,100
grid_mode = total
)");
    CHECK(c.system.num_antennas == 127);
    CHECK(c.system.transmit_power_dbm == 50.0);
    CHECK(c.dataset.angle_step == 0.05);
    CHECK_FALSE(c.dataset.noise_enabled);
    CHECK(c.training.epochs == 3);
    CHECK(c.training.hidden == std::vector<std::size_t>{64, 32});
    CHECK(c.training.hyper.penalty == nn::PenaltyForm::kLinear);
    CHECK(c.eval.trials == 7);
    CHECK(c.eval.grid_mode == "total");
}

TEST_CASE("invalid configurations")
{
    CHECK_THROWS_AS(parse_experiment_config("[system]\nnum_antennas = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("[system]\nnum_antenas = 5\n"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("[bogus]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("[training]\nepochs = many\n"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("[training]\nl2_form = cubic\n"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("[eval]\ngrid_mode = diagonal\n"), ConfigError);
    CHECK_THROWS_AS(load_experiment_config("/nonexistent/nfloc.ini"), ConfigError);
}

TEST_CASE("system-only files accept top-level keys")
{
    const SystemConfig s = parse_system_config("num_antennas = 31\ncarrier_frequency_hz = 30e9\n");
    CHECK(s.num_antennas == 31);
    CHECK(s.carrier_frequency_hz == 30e9);
}

TEST_CASE("to_ini round trips and hashes are stable")
{
    ExperimentConfig c = parse_experiment_config("[training]\nepochs = 9\nhidden = 16\n");
    const ExperimentConfig back = parse_experiment_config(to_ini(c));
    CHECK(back.training.epochs == 9);
    CHECK(back.training.hidden == std::vector<std::size_t>{16});
    CHECK(back.hash() == c.hash());
    c.training.epochs = 10;
    CHECK(back.hash() != c.hash());
}

TEST_CASE("shipped configs parse")
{
    const ExperimentConfig desk = load_experiment_config(NFLOC_SOURCE_DIR "/configs/desk.ini");
    CHECK(desk.dataset.sample_count() == 8611);
    CHECK(desk.training.hyper.learning_rate == 0.001);
    CHECK(desk.training.hyper.lr_decay == 0.98);
    CHECK(desk.training.hyper.l2_weight == 1e-5);
    CHECK(desk.training.hyper.huber_delta == 1.0);
    const ExperimentConfig full = load_experiment_config(NFLOC_SOURCE_DIR "/configs/full.ini");
    CHECK(full.dataset.sample_count() == 158u * 2701u);
    CHECK(desk.hash() != full.hash());
}
