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

#include "nfloc/dataset.hpp"
#include "nfloc/binary_io.hpp"
#include "nfloc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace nfloc
{
    DatasetSpec DatasetSpec::desk()
    {
        return DatasetSpec{};
    }

    DatasetSpec DatasetSpec::full()
    {
        DatasetSpec s;
        s.angle_step = 0.01;
        s.distance_step = 0.01;
        return s;
    }

    std::size_t DatasetSpec::angle_count() const
    {
        // Half-open range: every min + i * step < max.
        const double n = (angle_max - angle_min) / angle_step;
        const double r = std::round(n);
        return static_cast<std::size_t>(std::abs(n - r) < 1e-9 ? r : std::ceil(n));
    }

    std::size_t DatasetSpec::distance_count() const
    {
        const double n = (distance_max - distance_min) / distance_step;
        return static_cast<std::size_t>(std::floor(n + 1e-9)) + 1;
    }

    double DatasetSpec::angle_at(std::size_t i) const
    {
        return angle_min + static_cast<double>(i) * angle_step;
    }

    double DatasetSpec::distance_at(std::size_t j) const
    {
        return distance_min + static_cast<double>(j) * distance_step;
    }

    void DatasetSpec::validate() const
    {
        if (!(angle_step > 0.0) || !(distance_step > 0.0))
            throw ParameterError("dataset steps must be positive");
        if (!(angle_max > angle_min) || !(distance_max >= distance_min))
            throw ParameterError("dataset ranges are degenerate");
        if (!(angle_min > 0.0 && angle_max <= kPi))
            throw ParameterError("dataset angles must lie in (0, pi]");
        if (!(distance_min > 0.0))
            throw ParameterError("dataset distances must be positive");
        double total = 0.0;
        for (double f : split_fractions)
        {
            if (!(f > 0.0))
                throw ParameterError("split fractions must be positive");
            total += f;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw ParameterError("split fractions must sum to 1");
    }

    const char *split_name(Split s)
    {
        switch (s)
        {
        case Split::kTrain:
            return "train";
        case Split::kValidation:
            return "validation";
        case Split::kTest:
            return "test";
        }
        return "unknown";
    }

    Eigen::MatrixXd LabeledSample::stacked() const
    {
        const Eigen::Index m = static_cast<Eigen::Index>(binary.size());
        Eigen::MatrixXd out(2, m);
        for (Eigen::Index i = 0; i < m; ++i)
        {
            out(0, i) = binary[static_cast<std::size_t>(i)];
            out(1, m - 1 - i) = binary[static_cast<std::size_t>(i)];
        }
        return out;
    }

    std::size_t DatasetHeader::record_size() const
    {
        return 1 + (2 * static_cast<std::size_t>(num_antennas) + 7) / 8 + 4 * sizeof(double);
    }

    std::uint64_t dataset_hash(const DatasetSpec &spec, const SystemConfig &config)
    {
        std::ostringstream s;
        s.precision(17);
        s << "dataset-v" << int(kDatasetVersion) << ';' << spec.angle_min << ';' << spec.angle_max << ';'
          << spec.angle_step << ';' << spec.distance_min << ';' << spec.distance_max << ';' << spec.distance_step
          << ';' << spec.noise_enabled << ';' << spec.pathloss_enabled << ';' << spec.seed << ';'
          << spec.split_fractions[0] << ';' << spec.split_fractions[1] << ';' << spec.split_fractions[2] << ';'
          << config.carrier_frequency_hz << ';' << config.bandwidth_hz << ';' << config.num_antennas << ';'
          << config.transmit_power_dbm << ';' << config.noise_psd_dbm_hz << ';' << config.tx_gain << ';'
          << config.rx_gain;
        return fnv1a64(s.str());
    }

    std::vector<Split> assign_splits(std::size_t n, const std::array<double, 3> &fractions, std::uint64_t seed)
    {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::mt19937_64 rng(mix_seed(seed, 0x5B117));
        std::shuffle(order.begin(), order.end(), rng);

        const auto n_train = static_cast<std::size_t>(std::floor(fractions[0] * static_cast<double>(n) + 0.5));
        const auto n_val = std::min(n - std::min(n, n_train),
                                    static_cast<std::size_t>(std::floor(fractions[1] * static_cast<double>(n) + 0.5)));
        std::vector<Split> splits(n, Split::kTest);
        for (std::size_t k = 0; k < n; ++k)
        {
            if (k < n_train)
                splits[order[k]] = Split::kTrain;
            else if (k < n_train + n_val)
                splits[order[k]] = Split::kValidation;
        }
        return splits;
    }

    LabeledSample make_sample(const DatasetSpec &spec, const Scene &scene, std::uint64_t index)
    {
        const std::size_t nd = spec.distance_count();
        LabeledSample s;
        s.index = index;
        s.theta = spec.angle_at(static_cast<std::size_t>(index / nd));
        s.range = spec.distance_at(static_cast<std::size_t>(index % nd));
        const TargetPosition target = TargetPosition::from_polar(s.range, s.theta);
        s.truth_xz = target.xz();

        SynthesisOptions options;
        options.noise = spec.noise_enabled;
        options.pathloss = spec.pathloss_enabled;
        const EchoSignal echo = scene.synthesize(target, mix_seed(spec.seed, index), options);
        const Binarized b = normalize(combine_echo(echo, scene.wtm()));
        s.binary.resize(static_cast<std::size_t>(b.values.size()));
        for (Eigen::Index i = 0; i < b.values.size(); ++i)
            s.binary[static_cast<std::size_t>(i)] = b.values[i] > 0.5 ? 1 : 0;
        return s;
    }

    namespace
    {
        void put_header(ByteWriter &w, const DatasetHeader &h)
        {
            w.magic("NFDS");
            w.u8(h.version);
            w.u8(static_cast<std::uint8_t>((h.noise_enabled ? 1 : 0) | (h.pathloss_enabled ? 2 : 0)));
            w.u16(0);
            w.u32(h.num_antennas);
            w.u64(h.sample_count);
            w.u64(h.spec_hash);
            w.u64(h.seed);
            w.u32(0);
        }

        DatasetHeader get_header(ByteReader &r)
        {
            r.expect_magic("NFDS");
            DatasetHeader h;
            h.version = r.u8();
            if (h.version != kDatasetVersion)
                throw FormatError("unsupported dataset version " + std::to_string(h.version));
            const std::uint8_t flags = r.u8();
            h.noise_enabled = flags & 1;
            h.pathloss_enabled = flags & 2;
            r.u16();
            h.num_antennas = r.u32();
            h.sample_count = r.u64();
            h.spec_hash = r.u64();
            h.seed = r.u64();
            r.u32();
            return h;
        }

        void put_record(ByteWriter &w, const LabeledSample &s)
        {
            const std::size_t m = s.binary.size();
            w.u8(static_cast<std::uint8_t>(s.split));
            std::vector<std::uint8_t> packed((2 * m + 7) / 8, 0);
            for (std::size_t i = 0; i < m; ++i)
            {
                if (s.binary[i])
                {
                    packed[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
                    const std::size_t j = m + (m - 1 - i); // row 1 holds the flipped copy
                    packed[j / 8] |= static_cast<std::uint8_t>(1u << (j % 8));
                }
            }
            w.raw(packed);
            w.f64(s.truth_xz.x());
            w.f64(s.truth_xz.y());
            w.f64(s.theta);
            w.f64(s.range);
        }

        void get_record(ByteReader &r, std::size_t m, LabeledSample &s)
        {
            const std::uint8_t split = r.u8();
            if (split > 2)
                throw FormatError("invalid split tag in dataset record");
            s.split = static_cast<Split>(split);
            const auto packed = r.raw((2 * m + 7) / 8);
            s.binary.resize(m);
            for (std::size_t i = 0; i < m; ++i)
                s.binary[i] = (packed[i / 8] >> (i % 8)) & 1u;
            s.truth_xz.x() = r.f64();
            s.truth_xz.y() = r.f64();
            s.theta = r.f64();
            s.range = r.f64();
        }
    } // namespace

    GenerateSummary generate(const DatasetSpec &spec, const Scene &scene, const std::filesystem::path &path,
                             unsigned threads)
    {
        spec.validate();
        const std::size_t n = spec.sample_count();
        if (n == 0)
            throw ParameterError("dataset spec produces zero samples");
        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());

        GenerateSummary summary;
        DatasetHeader &h = summary.header;
        h.noise_enabled = spec.noise_enabled;
        h.pathloss_enabled = spec.pathloss_enabled;
        h.num_antennas = static_cast<std::uint32_t>(scene.num_antennas());
        h.sample_count = n;
        h.spec_hash = dataset_hash(spec, scene.config());
        h.seed = spec.seed;

        const std::vector<Split> splits = assign_splits(n, spec.split_fractions, spec.seed);

        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw FormatError("cannot create " + path.string());
        ByteWriter w;
        put_header(w, h);
        std::uint32_t crc = 0;
        auto flush = [&] {
            crc = crc32(w.bytes(), crc);
            out.write(reinterpret_cast<const char *>(w.bytes().data()), static_cast<std::streamsize>(w.bytes().size()));
            w.clear();
        };
        flush();

        constexpr std::size_t kChunk = 4096;
        std::vector<LabeledSample> chunk;
        for (std::size_t begin = 0; begin < n; begin += kChunk)
        {
            const std::size_t count = std::min(kChunk, n - begin);
            chunk.assign(count, LabeledSample{});
            auto work = [&](std::size_t t) {
                for (std::size_t k = t; k < count; k += threads)
                    chunk[k] = make_sample(spec, scene, begin + k);
            };
            if (threads == 1)
                work(0);
            else
            {
                std::vector<std::jthread> pool;
                for (unsigned t = 0; t < threads; ++t)
                    pool.emplace_back(work, t);
            }
            for (LabeledSample &s : chunk)
            {
                s.split = splits[s.index];
                ++summary.split_counts[static_cast<std::size_t>(s.split)];
                put_record(w, s);
            }
            flush();
        }
        w.u32(crc);
        out.write(reinterpret_cast<const char *>(w.bytes().data()), 4);
        if (!out)
            throw FormatError("write failed for " + path.string());
        return summary;
    }

    DatasetReader::DatasetReader(const std::filesystem::path &path) : in_(path, std::ios::binary)
    {
        if (!in_)
            throw FormatError("cannot open dataset " + path.string());
        std::vector<std::uint8_t> head(kDatasetHeaderSize);
        in_.read(reinterpret_cast<char *>(head.data()), static_cast<std::streamsize>(head.size()));
        if (in_.gcount() != static_cast<std::streamsize>(head.size()))
            throw FormatError("dataset header is truncated");
        ByteReader hr(head);
        header_ = get_header(hr);

        const auto file_size = std::filesystem::file_size(path);
        const auto expected = kDatasetHeaderSize + header_.sample_count * header_.record_size() + 4;
        if (file_size != expected)
            throw FormatError("dataset size " + std::to_string(file_size) + " does not match header (expected " +
                              std::to_string(expected) + "); truncated file?");

        // Verify the checksum in one streaming pass before handing out anything.
        std::uint32_t crc = crc32(head);
        std::vector<std::uint8_t> block(1 << 20);
        std::uint64_t left = file_size - kDatasetHeaderSize - 4;
        while (left > 0)
        {
            const auto take = static_cast<std::size_t>(std::min<std::uint64_t>(left, block.size()));
            in_.read(reinterpret_cast<char *>(block.data()), static_cast<std::streamsize>(take));
            crc = crc32(std::span<const std::uint8_t>(block.data(), take), crc);
            left -= take;
        }
        std::uint8_t tail[4];
        in_.read(reinterpret_cast<char *>(tail), 4);
        ByteReader tr(tail);
        if (!in_ || tr.u32() != crc)
            throw FormatError("dataset checksum mismatch");
        rewind();
    }

    void DatasetReader::rewind()
    {
        in_.clear();
        in_.seekg(static_cast<std::streamoff>(kDatasetHeaderSize));
        cursor_ = 0;
    }

    bool DatasetReader::next(LabeledSample &sample)
    {
        if (cursor_ >= header_.sample_count)
            return false;
        buffer_.resize(header_.record_size());
        in_.read(reinterpret_cast<char *>(buffer_.data()), static_cast<std::streamsize>(buffer_.size()));
        if (in_.gcount() != static_cast<std::streamsize>(buffer_.size()))
            throw FormatError("dataset record is truncated");
        ByteReader r(buffer_);
        sample.index = cursor_++;
        get_record(r, header_.num_antennas, sample);
        return true;
    }

    std::vector<LabeledSample> load_dataset(const std::filesystem::path &path)
    {
        DatasetReader reader(path);
        std::vector<LabeledSample> out;
        out.reserve(reader.header().sample_count);
        LabeledSample s;
        while (reader.next(s))
            out.push_back(s);
        return out;
    }

    void export_csv(const std::filesystem::path &dataset, const std::filesystem::path &csv)
    {
        DatasetReader reader(dataset);
        std::ofstream out(csv);
        if (!out)
            throw FormatError("cannot create " + csv.string());
        out.precision(17);
        out << "index,split,x,z,theta,r";
        for (std::uint32_t i = 0; i < reader.header().num_antennas; ++i)
            out << ",o" << i;
        out << '\n';
        LabeledSample s;
        while (reader.next(s))
        {
            out << s.index << ',' << split_name(s.split) << ',' << s.truth_xz.x() << ',' << s.truth_xz.y() << ','
                << s.theta << ',' << s.range;
            for (std::uint8_t b : s.binary)
                out << ',' << int(b);
            out << '\n';
        }
    }

} // namespace nfloc
