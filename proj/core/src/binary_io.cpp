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

#include "nfloc/binary_io.hpp"
#include "nfloc/errors.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <fstream>

namespace nfloc
{
    void ByteWriter::u16(std::uint16_t v)
    {
        for (int i = 0; i < 2; ++i)
            bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void ByteWriter::u32(std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i)
            bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void ByteWriter::u64(std::uint64_t v)
    {
        for (int i = 0; i < 8; ++i)
            bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void ByteWriter::f64(double v)
    {
        u64(std::bit_cast<std::uint64_t>(v));
    }

    void ByteReader::need(std::size_t n) const
    {
        if (n > remaining())
            throw FormatError("unexpected end of data (truncated file?)");
    }

    std::uint8_t ByteReader::u8()
    {
        need(1);
        return data_[pos_++];
    }

    std::uint16_t ByteReader::u16()
    {
        need(2);
        std::uint16_t v = 0;
        for (int i = 0; i < 2; ++i)
            v |= static_cast<std::uint16_t>(data_[pos_++]) << (8 * i);
        return v;
    }

    std::uint32_t ByteReader::u32()
    {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(data_[pos_++]) << (8 * i);
        return v;
    }

    std::uint64_t ByteReader::u64()
    {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(data_[pos_++]) << (8 * i);
        return v;
    }

    double ByteReader::f64()
    {
        return std::bit_cast<double>(u64());
    }

    std::span<const std::uint8_t> ByteReader::raw(std::size_t n)
    {
        need(n);
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    void ByteReader::expect_magic(std::string_view tag)
    {
        const auto got = raw(tag.size());
        if (!std::equal(got.begin(), got.end(), tag.begin()))
            throw FormatError("bad magic, expected \"" + std::string(tag) + "\"");
    }

    std::uint32_t crc32(std::span<const std::uint8_t> data, std::uint32_t running)
    {
        uLong crc = running;
        std::size_t offset = 0;
        while (offset < data.size())
        {
            const auto chunk = static_cast<uInt>(std::min<std::size_t>(data.size() - offset, 1u << 30));
            crc = ::crc32(crc, data.data() + offset, chunk);
            offset += chunk;
        }
        return static_cast<std::uint32_t>(crc);
    }

    std::uint64_t fnv1a64(std::string_view text)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : text)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::vector<std::uint8_t> read_file(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw FormatError("cannot open " + path.string());
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw FormatError("cannot create " + path.string());
        out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw FormatError("write failed for " + path.string());
    }

    namespace
    {
        enum class Kind : std::uint8_t
        {
            kMatrix = 0,
            kSnapshot = 1,
            kEcho = 2,
        };

        void put_header(ByteWriter &w, Kind kind, Eigen::Index rows, Eigen::Index cols)
        {
            w.magic("NFCM");
            w.u8(kChannelFormatVersion);
            w.u8(static_cast<std::uint8_t>(kind));
            w.u16(0);
            w.u32(static_cast<std::uint32_t>(rows));
            w.u32(static_cast<std::uint32_t>(cols));
        }

        void put_entries(ByteWriter &w, const CMatrix &m)
        {
            for (Eigen::Index r = 0; r < m.rows(); ++r)
                for (Eigen::Index c = 0; c < m.cols(); ++c)
                    w.c128(m(r, c));
        }

        struct Header
        {
            Kind kind;
            Eigen::Index rows, cols;
        };

        Header get_header(ByteReader &r, Kind expected)
        {
            r.expect_magic("NFCM");
            const std::uint8_t version = r.u8();
            if (version != kChannelFormatVersion)
                throw FormatError("unsupported channel format version " + std::to_string(version));
            const auto kind = static_cast<Kind>(r.u8());
            if (kind != expected)
                throw FormatError("channel file holds a different record kind");
            r.u16();
            const Eigen::Index rows = r.u32();
            const Eigen::Index cols = r.u32();
            return {kind, rows, cols};
        }

        CMatrix get_entries(ByteReader &r, Eigen::Index rows, Eigen::Index cols)
        {
            if (static_cast<std::size_t>(rows * cols) * 16 != r.remaining())
                throw FormatError("channel file size does not match its header");
            CMatrix m(rows, cols);
            for (Eigen::Index i = 0; i < rows; ++i)
                for (Eigen::Index j = 0; j < cols; ++j)
                    m(i, j) = r.c128();
            return m;
        }
    } // namespace

    std::vector<std::uint8_t> encode_matrix(const CMatrix &m)
    {
        ByteWriter w;
        put_header(w, Kind::kMatrix, m.rows(), m.cols());
        put_entries(w, m);
        return std::move(w.bytes());
    }

    std::vector<std::uint8_t> encode_snapshot(const ChannelSnapshot &s)
    {
        ByteWriter w;
        put_header(w, Kind::kSnapshot, s.matrix.rows(), s.matrix.cols());
        w.c128(s.gain);
        for (int i = 0; i < 3; ++i)
            w.f64(s.truth.coordinates()[i]);
        put_entries(w, s.matrix);
        return std::move(w.bytes());
    }

    std::vector<std::uint8_t> encode_echo(const EchoSignal &e)
    {
        ByteWriter w;
        put_header(w, Kind::kEcho, e.received.size(), 1);
        w.c128(e.probe_symbol);
        w.f64(e.noise_power);
        put_entries(w, e.received);
        return std::move(w.bytes());
    }

    CMatrix decode_matrix(std::span<const std::uint8_t> bytes)
    {
        ByteReader r(bytes);
        const Header h = get_header(r, Kind::kMatrix);
        return get_entries(r, h.rows, h.cols);
    }

    ChannelSnapshot decode_snapshot(std::span<const std::uint8_t> bytes)
    {
        ByteReader r(bytes);
        const Header h = get_header(r, Kind::kSnapshot);
        ChannelSnapshot s;
        s.gain = r.c128();
        const double x = r.f64();
        r.f64(); // y is pinned to zero
        const double z = r.f64();
        s.truth = TargetPosition::from_xz(x, z);
        s.matrix = get_entries(r, h.rows, h.cols);
        return s;
    }

    EchoSignal decode_echo(std::span<const std::uint8_t> bytes)
    {
        ByteReader r(bytes);
        const Header h = get_header(r, Kind::kEcho);
        if (h.cols != 1)
            throw FormatError("echo record must have one column");
        EchoSignal e;
        e.probe_symbol = r.c128();
        e.noise_power = r.f64();
        e.received = get_entries(r, h.rows, 1);
        return e;
    }

    void write_matrix(const std::filesystem::path &path, const CMatrix &m)
    {
        write_file(path, encode_matrix(m));
    }

    void write_snapshot(const std::filesystem::path &path, const ChannelSnapshot &s)
    {
        write_file(path, encode_snapshot(s));
    }

    void write_echo(const std::filesystem::path &path, const EchoSignal &e)
    {
        write_file(path, encode_echo(e));
    }

    CMatrix read_matrix(const std::filesystem::path &path)
    {
        return decode_matrix(read_file(path));
    }

    ChannelSnapshot read_snapshot(const std::filesystem::path &path)
    {
        return decode_snapshot(read_file(path));
    }

    EchoSignal read_echo(const std::filesystem::path &path)
    {
        return decode_echo(read_file(path));
    }

} // namespace nfloc
