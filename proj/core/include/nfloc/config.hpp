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

#ifndef NFLOC_CONFIG_HPP
#define NFLOC_CONFIG_HPP

#include "nfloc/dataset.hpp"
#include "nfloc/geometry.hpp"
#include "nfloc/nn/training.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace nfloc
{
    struct EvalSettings
    {
        int trials = 100;
        std::uint64_t seed = 4242;
        int snapshots = 1;
        std::vector<std::size_t> music_grids{10, 100, 1000};
        std::string grid_mode = "per-dim"; // or "total"
        double bicnn_rmse_limit_m = 1.0;   // --check threshold
        double runtime_ratio_limit = 0.1;  // BiCNN / MUSIC(100) --check threshold
    };

    struct ExperimentConfig
    {
        SystemConfig system{};
        DatasetSpec dataset = DatasetSpec::desk();
        nn::TrainingConfig training{};
        EvalSettings eval{};

        std::uint64_t hash() const;
    };

    // Plain-text key/value file, INI style. Sections [system], [dataset], [training], [eval];
    // keys match the field names (see configs/desk.ini). Missing keys keep their defaults;
    // unknown keys are rejected with ConfigError.
    ExperimentConfig parse_experiment_config(const std::string &text);
    ExperimentConfig load_experiment_config(const std::filesystem::path &path);

    // Reads only [system] (or top-level keys when the file has no sections).
    SystemConfig parse_system_config(const std::string &text);
    SystemConfig load_system_config(const std::filesystem::path &path);

    std::string to_ini(const ExperimentConfig &config);

} // namespace nfloc

#endif
