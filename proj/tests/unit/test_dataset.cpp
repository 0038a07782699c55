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

#include "nfloc/binary_io.hpp"
#include "nfloc/dataset.hpp"
#include "nfloc/errors.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

using namespace nfloc;
namespace fs = std::filesystem;

namespace
{
    SystemConfig small_system()
    {
        SystemConfig c;
        c.num_antennas = 127;
        return c;
    }

    DatasetSpec tiny_spec()
    {
        DatasetSpec s;
        s.angle_step = 0.5;     // 4 angles
        s.distance_step = 9.0;  // 8, 17, 26, 35
        return s;
    }

    fs::path temp_path(const std::string &name)
    {
        return fs::temp_directory_path() / ("nfloc_test_" + name);
    }
} // namespace

TEST_CASE("desk and full sample counts")
{
    const DatasetSpec desk = DatasetSpec::desk();
    CHECK(desk.angle_count() == 79);
    CHECK(desk.distance_count() == 109);
    CHECK(desk.sample_count() == 8611);
    const DatasetSpec full = DatasetSpec::full();
    CHECK(full.angle_count() == 158);
    CHECK(full.distance_count() == 2701);
    CHECK(desk.angle_at(78) < 3 * kPi / 4);
    CHECK(desk.distance_at(108) == doctest::Approx(35.0));
}

TEST_CASE("degenerate specs are rejected")
{
    DatasetSpec s = tiny_spec();
    s.angle_max = s.angle_min;
    CHECK_THROWS_AS(s.validate(), ParameterError);
    const Scene scene(small_system());
    CHECK_THROWS_AS(generate(s, scene, temp_path("empty.nfds"), 1), ParameterError);
    DatasetSpec t = tiny_spec();
    t.split_fractions = {0.5, 0.2, 0.1};
    CHECK_THROWS_AS(t.validate(), ParameterError);
}

TEST_CASE("splits are disjoint, exhaustive and sized by the fractions")
{
    const auto splits = assign_splits(1000, {0.7, 0.2, 0.1}, 7);
    std::array<std::size_t, 3> counts{};
    for (Split s : splits)
        ++counts[static_cast<std::size_t>(s)];
    CHECK(counts[0] == 700);
    CHECK(counts[1] == 200);
    CHECK(counts[2] == 100);
    CHECK(assign_splits(1000, {0.7, 0.2, 0.1}, 7) == splits);
    CHECK(assign_splits(1000, {0.7, 0.2, 0.1}, 8) != splits);
}

TEST_CASE("make_sample is angle-major and matches the scene pipeline")
{
    const DatasetSpec spec = tiny_spec();
    const Scene scene(small_system());
    const LabeledSample s = make_sample(spec, scene, 6); // angle 1, distance 2
    CHECK(s.theta == doctest::Approx(spec.angle_at(1)));
    CHECK(s.range == doctest::Approx(26.0));
    CHECK(s.truth_xz.x() == doctest::Approx(26.0 * std::cos(s.theta)));
    CHECK(s.truth_xz.y() == doctest::Approx(26.0 * std::sin(s.theta)));
    REQUIRE(s.binary.size() == 127);
    const Eigen::MatrixXd st = s.stacked();
    for (int i = 0; i < 127; ++i)
    {
        CHECK(st(0, i) == s.binary[static_cast<std::size_t>(i)]);
        CHECK(st(1, i) == s.binary[static_cast<std::size_t>(126 - i)]);
    }
}

TEST_CASE("dataset file round trip and layout")
{
    const DatasetSpec spec = tiny_spec();
    const Scene scene(small_system());
    const fs::path path = temp_path("roundtrip.nfds");
    const GenerateSummary summary = generate(spec, scene, path, 2);
    CHECK(summary.header.sample_count == 16);
    CHECK(summary.split_counts[0] + summary.split_counts[1] + summary.split_counts[2] == 16);

    const std::size_t record = 1 + (2 * 127 + 7) / 8 + 32;
    CHECK(summary.header.record_size() == record);
    CHECK(fs::file_size(path) == kDatasetHeaderSize + 16 * record + 4);

    const auto loaded = load_dataset(path);
    REQUIRE(loaded.size() == 16);
    std::set<std::uint64_t> indices;
    for (const LabeledSample &s : loaded)
    {
        indices.insert(s.index);
        const LabeledSample direct = make_sample(spec, scene, s.index);
        CHECK(s.binary == direct.binary);
        CHECK(s.truth_xz == direct.truth_xz);
    }
    CHECK(indices.size() == 16);

    DatasetReader reader(path);
    CHECK(reader.header().num_antennas == 127);
    CHECK(reader.header().spec_hash == dataset_hash(spec, scene.config()));
    LabeledSample s;
    std::size_t n = 0;
    while (reader.next(s))
        ++n;
    CHECK(n == 16);
    reader.rewind();
    CHECK(reader.next(s));
    CHECK(s.index == loaded.front().index);
    fs::remove(path);
}

TEST_CASE("generation is independent of the thread count")
{
    const DatasetSpec spec = tiny_spec();
    const Scene scene(small_system());
    const fs::path a = temp_path("t1.nfds");
    const fs::path b = temp_path("t3.nfds");
    generate(spec, scene, a, 1);
    generate(spec, scene, b, 3);
    CHECK(read_file(a) == read_file(b));
    fs::remove(a);
    fs::remove(b);
}

TEST_CASE("corrupted datasets are rejected before any record is read")
{
    const DatasetSpec spec = tiny_spec();
    const Scene scene(small_system());
    const fs::path path = temp_path("corrupt.nfds");
    generate(spec, scene, path, 1);
    auto bytes = read_file(path);

    SUBCASE("flipped payload byte")
    {
        bytes[kDatasetHeaderSize + 5] ^= 0x10;
        write_file(path, bytes);
        CHECK_THROWS_AS(DatasetReader{path}, FormatError);
    }
    SUBCASE("truncated file")
    {
        bytes.resize(bytes.size() - 10);
        write_file(path, bytes);
        CHECK_THROWS_AS(load_dataset(path), FormatError);
    }
    SUBCASE("bad magic")
    {
        bytes[0] = 'X';
        write_file(path, bytes);
        CHECK_THROWS_AS(load_dataset(path), FormatError);
    }
    SUBCASE("empty file")
    {
        write_file(path, std::vector<std::uint8_t>{});
        CHECK_THROWS_AS(load_dataset(path), FormatError);
    }
    fs::remove(path);
}

TEST_CASE("csv export has one row per sample")
{
    const DatasetSpec spec = tiny_spec();
    const Scene scene(small_system());
    const fs::path path = temp_path("csv.nfds");
    const fs::path csv = temp_path("csv.csv");
    generate(spec, scene, path, 1);
    export_csv(path, csv);
    std::ifstream in(csv);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line))
        ++lines;
    CHECK(lines == 17);
    fs::remove(path);
    fs::remove(csv);
}

TEST_CASE("valid header with zero records reads as empty")
{
    ByteWriter w;
    w.magic("NFDS");
    w.u8(kDatasetVersion);
    w.u8(3);
    w.u16(0);
    w.u32(127);
    w.u64(0);
    w.u64(0);
    w.u64(0);
    w.u32(0);
    REQUIRE(w.bytes().size() == kDatasetHeaderSize);
    w.u32(crc32(w.bytes()));
    const fs::path path = temp_path("zero.nfds");
    write_file(path, w.bytes());
    DatasetReader reader(path);
    LabeledSample s;
    CHECK_FALSE(reader.next(s));
    CHECK(load_dataset(path).empty());
    fs::remove(path);
}

TEST_CASE("same spec and seed give byte-identical files; a new seed changes them")
{
    DatasetSpec spec = tiny_spec();
    const Scene scene(small_system());
    const fs::path a = temp_path("seed_a.nfds");
    const fs::path b = temp_path("seed_b.nfds");
    generate(spec, scene, a, 1);
    generate(spec, scene, b, 1);
    CHECK(read_file(a) == read_file(b));
    spec.seed += 1;
    generate(spec, scene, b, 1);
    CHECK(read_file(a) != read_file(b));
    fs::remove(a);
    fs::remove(b);
}
