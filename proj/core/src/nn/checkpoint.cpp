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

#include "nfloc/nn/checkpoint.hpp"
#include "nfloc/binary_io.hpp"
#include "nfloc/errors.hpp"

namespace nfloc::nn
{
    std::vector<std::uint8_t> encode_checkpoint(const BiCnnModel &model, std::uint64_t config_hash)
    {
        const BiCnnArchitecture &arch = model.architecture();
        const BiCnnHyper &hyper = model.hyper();
        ByteWriter w;
        w.magic("NFCK");
        w.u8(kCheckpointVersion);
        w.u8(static_cast<std::uint8_t>(hyper.penalty));
        w.u16(0);
        w.u32(static_cast<std::uint32_t>(arch.input_length));
        w.u32(static_cast<std::uint32_t>(arch.input_channels));
        w.u32(static_cast<std::uint32_t>(arch.conv_channels));
        w.u32(static_cast<std::uint32_t>(arch.kernel_width));
        w.u32(static_cast<std::uint32_t>(arch.pool_window));
        w.u32(static_cast<std::uint32_t>(arch.hidden.size()));
        for (std::size_t h : arch.hidden)
            w.u32(static_cast<std::uint32_t>(h));
        w.f64(hyper.huber_delta);
        w.f64(hyper.l2_weight);
        w.f64(hyper.learning_rate);
        w.f64(hyper.lr_decay);
        w.u64(model.init_seed());
        w.u64(config_hash);
        const TargetScaler &s = model.scaler();
        w.f64(s.mean.x());
        w.f64(s.mean.y());
        w.f64(s.scale.x());
        w.f64(s.scale.y());

        const auto params = model.parameters();
        w.u32(static_cast<std::uint32_t>(params.size()));
        for (const Tensor *t : params)
        {
            w.u32(static_cast<std::uint32_t>(t->rank()));
            for (std::size_t d : t->shape())
                w.u32(static_cast<std::uint32_t>(d));
            for (double v : t->values())
                w.f64(v);
        }
        w.u32(crc32(w.bytes()));
        return std::move(w.bytes());
    }

    Checkpoint decode_checkpoint(std::span<const std::uint8_t> bytes)
    {
        if (bytes.size() < 8)
            throw FormatError("checkpoint is truncated");
        const auto body = bytes.first(bytes.size() - 4);
        ByteReader tail(bytes.last(4));
        if (tail.u32() != crc32(body))
            throw FormatError("checkpoint checksum mismatch");

        ByteReader r(body);
        r.expect_magic("NFCK");
        const std::uint8_t version = r.u8();
        if (version != kCheckpointVersion)
            throw FormatError("unsupported checkpoint version " + std::to_string(version));
        BiCnnHyper hyper;
        const std::uint8_t penalty = r.u8();
        if (penalty > 1)
            throw FormatError("unknown penalty form in checkpoint");
        hyper.penalty = static_cast<PenaltyForm>(penalty);
        r.u16();

        BiCnnArchitecture arch;
        arch.input_length = r.u32();
        arch.input_channels = r.u32();
        arch.conv_channels = r.u32();
        arch.kernel_width = r.u32();
        arch.pool_window = r.u32();
        arch.hidden.resize(r.u32());
        for (auto &h : arch.hidden)
            h = r.u32();
        hyper.huber_delta = r.f64();
        hyper.l2_weight = r.f64();
        hyper.learning_rate = r.f64();
        hyper.lr_decay = r.f64();
        const std::uint64_t seed = r.u64();

        Checkpoint ck;
        ck.config_hash = r.u64();
        TargetScaler scaler;
        scaler.mean.x() = r.f64();
        scaler.mean.y() = r.f64();
        scaler.scale.x() = r.f64();
        scaler.scale.y() = r.f64();

        ck.model = BiCnnModel(arch, hyper, seed);
        ck.model.set_scaler(scaler);
        auto params = ck.model.parameters();
        if (r.u32() != params.size())
            throw FormatError("checkpoint parameter count does not match its architecture");
        for (Tensor *t : params)
        {
            const std::uint32_t rank = r.u32();
            if (rank != t->rank())
                throw FormatError("checkpoint tensor rank mismatch");
            for (std::size_t d : t->shape())
                if (r.u32() != d)
                    throw FormatError("checkpoint tensor shape mismatch");
            for (double &v : t->values())
                v = r.f64();
        }
        if (r.remaining() != 0)
            throw FormatError("trailing bytes in checkpoint");
        return ck;
    }

    void save_checkpoint(const std::filesystem::path &path, const BiCnnModel &model, std::uint64_t config_hash)
    {
        write_file(path, encode_checkpoint(model, config_hash));
    }

    Checkpoint load_checkpoint(const std::filesystem::path &path)
    {
        return decode_checkpoint(read_file(path));
    }

} // namespace nfloc::nn
