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

#include "nfloc/bench.hpp"
#include "nfloc/music.hpp"
#include "nfloc/nn/bicnn.hpp"
#include "nfloc/nn/training.hpp"
#include "nfloc/scene.hpp"
#include "nfloc/wavenumber.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace nfloc;

namespace
{
    SystemConfig system_with(int m)
    {
        SystemConfig c;
        c.num_antennas = m;
        return c;
    }

    const Scene &reference_scene()
    {
        static const Scene scene(SystemConfig{});
        return scene;
    }

    EchoSignal reference_echo()
    {
        return reference_scene().synthesize(TargetPosition::from_polar(20.0, 1.3), 1);
    }
} // namespace

static void BM_BuildWtm(benchmark::State &state)
{
    const ArrayGeometry g = build_geometry(system_with(static_cast<int>(state.range(0))));
    const WavenumberGrid grid = build_grid(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_wtm(grid, g));
}
BENCHMARK(BM_BuildWtm)->Arg(31)->Arg(127)->Arg(511)->Unit(benchmark::kMillisecond);

static void BM_SynthesizeAndObserve(benchmark::State &state)
{
    const Scene &scene = reference_scene();
    std::uint64_t seed = 0;
    for (auto _ : state)
    {
        const EchoSignal e = scene.synthesize(TargetPosition::from_polar(20.0, 1.3), ++seed);
        benchmark::DoNotOptimize(scene.observe(e));
    }
}
BENCHMARK(BM_SynthesizeAndObserve)->Unit(benchmark::kMicrosecond);

static void BM_BiCnnInference(benchmark::State &state)
{
    const Scene &scene = reference_scene();
    const nn::BiCnnModel model(nn::BiCnnArchitecture{}, nn::BiCnnHyper{}, 7);
    const EchoSignal e = reference_echo();
    BiCnnEstimator est(scene, model);
    for (auto _ : state)
        benchmark::DoNotOptimize(est.estimate({&e, 1}));
}
BENCHMARK(BM_BiCnnInference)->Unit(benchmark::kMicrosecond);

static void BM_TrainingStep(benchmark::State &state)
{
    nn::BiCnnModel model(nn::BiCnnArchitecture{}, nn::BiCnnHyper{}, 7);
    const auto n = static_cast<std::size_t>(state.range(0));
    nn::Tensor batch({n, 2, 511});
    nn::Tensor targets({n, 2});
    std::mt19937_64 gen(3);
    for (double &v : batch.values())
        v = static_cast<double>(gen() & 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(model.loss_and_gradient(batch, targets));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_TrainingStep)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_Eigendecompose(benchmark::State &state)
{
    const int m = static_cast<int>(state.range(0));
    const Scene scene(system_with(m));
    const std::vector<EchoSignal> e{scene.synthesize(TargetPosition::from_polar(20.0, 1.3), 1)};
    const CMatrix r = sample_covariance(e);
    for (auto _ : state)
        benchmark::DoNotOptimize(eigendecompose(r));
}
BENCHMARK(BM_Eigendecompose)->Arg(127)->Arg(511)->Unit(benchmark::kMillisecond);

static void BM_MusicSpectrum(benchmark::State &state)
{
    const Scene &scene = reference_scene();
    const std::vector<EchoSignal> e{reference_echo()};
    const SubspaceDecomposition d = eigendecompose(sample_covariance(e));
    const MusicGridConfig grid = MusicGridConfig::per_dimension(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(music_spectrum(d, grid, scene.geometry()));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_MusicSpectrum)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_MusicLocate(benchmark::State &state)
{
    const Scene &scene = reference_scene();
    const EchoSignal e = reference_echo();
    MusicEstimator est(scene, MusicGridConfig::per_dimension(static_cast<std::size_t>(state.range(0))),
                       static_cast<std::size_t>(state.range(0)), "per-dim");
    for (auto _ : state)
        benchmark::DoNotOptimize(est.estimate({&e, 1}));
}
BENCHMARK(BM_MusicLocate)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
