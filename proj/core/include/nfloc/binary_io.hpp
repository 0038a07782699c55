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

#ifndef NFLOC_BINARY_IO_HPP
#define NFLOC_BINARY_IO_HPP

#include "nfloc/channel.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nfloc
{
    // Little-endian byte buffer builder.
    class ByteWriter
    {
    public:
        void u8(std::uint8_t v) { bytes_.push_back(v); }
        void u16(std::uint16_t v);
        void u32(std::uint32_t v);
        void u64(std::uint64_t v);
        void f64(double v);
        void c128(Complex v)
        {
            f64(v.real());
            f64(v.imag());
        }
        void raw(std::span<const std::uint8_t> data) { bytes_.insert(bytes_.end(), data.begin(), data.end()); }
        void magic(std::string_view tag) { bytes_.insert(bytes_.end(), tag.begin(), tag.end()); }

        const std::vector<std::uint8_t> &bytes() const { return bytes_; }
        std::vector<std::uint8_t> &bytes() { return bytes_; }
        void clear() { bytes_.clear(); }

    private:
        std::vector<std::uint8_t> bytes_;
    };

    // Little-endian cursor over a byte span; throws FormatError on overrun.
    class ByteReader
    {
    public:
        explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

        std::uint8_t u8();
        std::uint16_t u16();
        std::uint32_t u32();
        std::uint64_t u64();
        double f64();
        Complex c128()
        {
            const double re = f64();
            return {re, f64()};
        }
        std::span<const std::uint8_t> raw(std::size_t n);
        void expect_magic(std::string_view tag);

        std::size_t position() const { return pos_; }
        std::size_t remaining() const { return data_.size() - pos_; }

    private:
        void need(std::size_t n) const;
        std::span<const std::uint8_t> data_;
        std::size_t pos_ = 0;
    };

    std::uint32_t crc32(std::span<const std::uint8_t> data, std::uint32_t running = 0);
    std::uint64_t fnv1a64(std::string_view text);

    std::vector<std::uint8_t> read_file(const std::filesystem::path &path);
    void write_file(const std::filesystem::path &path, std::span<const std::uint8_t> bytes);

    // Channel cache format (version 1), all little-endian:
    //   "NFCM" | u8 version | u8 kind | u16 reserved | u32 rows | u32 cols | kind payload | rows*cols (re, im) f64
    // kind 0 (matrix): no payload, e.g. H_a dumps
    // kind 1 (snapshot): gain (re, im), truth (x, y, z)
    // kind 2 (echo): probe symbol (re, im), noise power; cols = 1
    // Matrix entries are stored row-major.
    inline constexpr std::uint8_t kChannelFormatVersion = 1;

    std::vector<std::uint8_t> encode_matrix(const CMatrix &m);
    std::vector<std::uint8_t> encode_snapshot(const ChannelSnapshot &s);
    std::vector<std::uint8_t> encode_echo(const EchoSignal &e);
    CMatrix decode_matrix(std::span<const std::uint8_t> bytes);
    ChannelSnapshot decode_snapshot(std::span<const std::uint8_t> bytes);
    EchoSignal decode_echo(std::span<const std::uint8_t> bytes);

    void write_matrix(const std::filesystem::path &path, const CMatrix &m);
    void write_snapshot(const std::filesystem::path &path, const ChannelSnapshot &s);
    void write_echo(const std::filesystem::path &path, const EchoSignal &e);
    CMatrix read_matrix(const std::filesystem::path &path);
    ChannelSnapshot read_snapshot(const std::filesystem::path &path);
    EchoSignal read_echo(const std::filesystem::path &path);

} // namespace nfloc

#endif
