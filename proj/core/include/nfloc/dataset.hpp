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

#ifndef NFLOC_DATASET_HPP
#define NFLOC_DATASET_HPP

#include "nfloc/scene.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

namespace nfloc
{
    // Cartesian (theta, r) sampling region. Angles are half-open [min, max), distances closed [min, max].
    struct DatasetSpec
    {
        double angle_min = kPi / 4.0;
        double angle_max = 3.0 * kPi / 4.0;
        double angle_step = 0.02;
        double distance_min = 8.0;
        double distance_max = 35.0;
        double distance_step = 0.25;
        bool noise_enabled = true;
        bool pathloss_enabled = true;
        std::uint64_t seed = 20240501;
        std::array<double, 3> split_fractions{0.7, 0.2, 0.1}; // train, validation, test

        // ~79 x 109 = 8611 samples.
        static DatasetSpec desk();
        // 0.01 rad x 0.01 m: ~158 x 2701 = 426758 samples.
        static DatasetSpec full();

        std::size_t angle_count() const;
        std::size_t distance_count() const;
        std::size_t sample_count() const { return angle_count() * distance_count(); }
        double angle_at(std::size_t i) const;
        double distance_at(std::size_t j) const;
        void validate() const;
    };

    enum class Split : std::uint8_t
    {
        kTrain = 0,
        kValidation = 1,
        kTest = 2,
    };

    const char *split_name(Split s);

    struct LabeledSample
    {
        std::uint64_t index = 0;
        Split split = Split::kTrain;
        std::vector<std::uint8_t> binary; // o, M entries of 0/1
        Eigen::Vector2d truth_xz = Eigen::Vector2d::Zero();
        double theta = 0.0;
        double range = 0.0;

        // O = [o; reverse(o)]
        Eigen::MatrixXd stacked() const;
    };

    // Dataset file (version 1), little-endian:
    //   header (40 bytes): "NFDS" | u8 version | u8 flags (bit0 noise, bit1 pathloss) | u16 reserved
    //                      | u32 M | u64 sample count | u64 spec hash | u64 seed | u32 reserved
    //   records: u8 split | ceil(2M / 8) bytes of the 2 x M stack, row-major, LSB-first
    //            | f64 x | f64 z | f64 theta | f64 r
    //   trailer: u32 crc32 over header and records
    inline constexpr std::uint8_t kDatasetVersion = 1;
    inline constexpr std::size_t kDatasetHeaderSize = 40;

    struct DatasetHeader
    {
        std::uint8_t version = kDatasetVersion;
        bool noise_enabled = true;
        bool pathloss_enabled = true;
        std::uint32_t num_antennas = 0;
        std::uint64_t sample_count = 0;
        std::uint64_t spec_hash = 0;
        std::uint64_t seed = 0;

        std::size_t record_size() const;
    };

    struct GenerateSummary
    {
        DatasetHeader header;
        std::array<std::size_t, 3> split_counts{};
    };

    // Hash of everything that determines the file contents.
    std::uint64_t dataset_hash(const DatasetSpec &spec, const SystemConfig &config);

    // Seeded 70/20/10-style shuffle; counts are rounded and the remainder goes to test.
    std::vector<Split> assign_splits(std::size_t n, const std::array<double, 3> &fractions, std::uint64_t seed);

    // Runs channel -> echo -> combine -> normalise for grid cell `index` (angle-major).
    LabeledSample make_sample(const DatasetSpec &spec, const Scene &scene, std::uint64_t index);

    // Parallel over cells (threads = 0 picks the hardware count); output is independent of
    // the thread count. Throws ParameterError when the spec yields no samples.
    GenerateSummary generate(const DatasetSpec &spec, const Scene &scene, const std::filesystem::path &path,
                             unsigned threads = 0);

    // Streams records from a dataset file. The checksum is verified on open, before any
    // record is handed out.
    class DatasetReader
    {
    public:
        explicit DatasetReader(const std::filesystem::path &path);

        const DatasetHeader &header() const { return header_; }
        bool next(LabeledSample &sample);
        void rewind();

    private:
        std::ifstream in_;
        DatasetHeader header_;
        std::uint64_t cursor_ = 0;
        std::vector<std::uint8_t> buffer_;
    };

    std::vector<LabeledSample> load_dataset(const std::filesystem::path &path);

    // One row per sample: index, split, x, z, theta, r, then the M binary digits.
    void export_csv(const std::filesystem::path &dataset, const std::filesystem::path &csv);

} // namespace nfloc

#endif
