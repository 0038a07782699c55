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

#ifndef NFLOC_NN_CHECKPOINT_HPP
#define NFLOC_NN_CHECKPOINT_HPP

#include "nfloc/nn/bicnn.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace nfloc::nn
{
    // Checkpoint layout (version 1), little-endian:
    //   "NFCK" | u8 version | u8 penalty form | u16 reserved
    //   u32 M | u32 input channels | u32 conv channels | u32 kernel width | u32 pool window
    //   u32 hidden count | u32 hidden widths...
    //   f64 huber delta | f64 l2 weight | f64 learning rate | f64 lr decay
    //   u64 init seed | u64 training config hash
    //   f64 target mean (x, z) | f64 target scale (x, z)
    //   u32 tensor count | per tensor: u32 rank, u32 dims..., f64 values
    //   u32 crc32 of all preceding bytes
    inline constexpr std::uint8_t kCheckpointVersion = 1;

    struct Checkpoint
    {
        BiCnnModel model;
        std::uint64_t config_hash = 0;
    };

    std::vector<std::uint8_t> encode_checkpoint(const BiCnnModel &model, std::uint64_t config_hash);
    Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes);

    void save_checkpoint(const std::filesystem::path &path, const BiCnnModel &model, std::uint64_t config_hash);
    Checkpoint load_checkpoint(const std::filesystem::path &path);

} // namespace nfloc::nn

#endif
