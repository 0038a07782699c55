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

#include "gradcheck.hpp"

#include "nfloc/bench.hpp"
#include "nfloc/binary_io.hpp"
#include "nfloc/dataset.hpp"
#include "nfloc/music.hpp"
#include "nfloc/nn/checkpoint.hpp"
#include "nfloc/nn/training.hpp"
#include "nfloc/scene.hpp"
#include "nfloc/wavenumber.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace nfloc;

namespace
{
    // Tolerances and budgets, one block per criterion.
    constexpr double kUnitarityTol = 1e-10;
    constexpr double kUnitarityBudgetS = 10.0;
    constexpr int kRoundTripTargets = 50;
    constexpr double kRoundTripTol = 1e-10;
    constexpr double kRoundTripBudgetS = 30.0;
    constexpr double kPhenomenologyBudgetS = 60.0;
    constexpr int kGradDraws = 20;
    constexpr double kGradStep = 1e-5;
    constexpr double kGradTol = 1e-4;
    constexpr double kGradFloor = 1e-6;
    constexpr double kGradBudgetS = 60.0;
    constexpr int kOffNodeTargets = 20;
    constexpr double kMusicOracleBudgetS = 120.0;
    constexpr double kTargetMusicRmse[3] = {3.8925, 0.6786, 0.2109};
    constexpr double kTargetFactor = 3.0;
    constexpr int kTrendTrials = 100;
    constexpr double kTrendBudgetS = 1800.0;
    constexpr double kBiCnnRmseLimit = 1.0;
    constexpr int kMaxEpochs = 50;
    constexpr double kTrainBudgetS = 7200.0;
    constexpr double kRuntimeRatio = 0.1;
    constexpr int kRuntimeTrials = 100;
    constexpr double kRuntimeBudgetS = 600.0;
    constexpr double kHighPowerDbm = 50.0;
    constexpr double kPowerBudgetS = 600.0;
    constexpr double kDeterminismBudgetS = 900.0;

    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    SystemConfig system_with(int m)
    {
        SystemConfig c;
        c.num_antennas = m;
        return c;
    }

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    // ---- 1 ----
    Outcome wtm_unitarity()
    {
        double worst = 0.0;
        std::string per;
        for (int m : {3, 31, 127, 511})
        {
            const ArrayGeometry g = build_geometry(system_with(m));
            const CMatrix a = build_wtm(build_grid(g), g).matrix;
            const double e = (a.adjoint() * a - CMatrix::Identity(a.cols(), a.cols())).norm();
            worst = std::max(worst, e);
            per += fmt(" M=%d:%.2e", m, e);
        }
        return {worst < kUnitarityTol, fmt("max ||A^H A - I||_F = %.3e (tol %.0e);", worst, kUnitarityTol) + per};
    }

    // ---- 2 ----
    Outcome wavenumber_round_trip()
    {
        const SystemConfig cfg = system_with(127);
        const ArrayGeometry g = build_geometry(cfg);
        const WavenumberTransform wtm = build_wtm(build_grid(g), g);
        std::mt19937_64 rng(2027);
        std::uniform_real_distribution<double> theta(kPi / 4, 3 * kPi / 4);
        std::uniform_real_distribution<double> range(8.0, 35.0);
        double worst = 0.0;
        for (int t = 0; t < kRoundTripTargets; ++t)
        {
            const double th = theta(rng);
            const ChannelSnapshot s = round_trip_channel(TargetPosition::from_polar(range(rng), th), g, cfg);
            const CMatrix back = from_wavenumber(to_wavenumber(s, wtm), wtm);
            worst = std::max(worst, (back - s.matrix).norm() / s.matrix.norm());
        }
        return {worst < kRoundTripTol,
                fmt("%d targets at M=127, max relative error %.3e (tol %.0e)", kRoundTripTargets, worst, kRoundTripTol)};
    }

    // ---- 3 ----
    Outcome phenomenology()
    {
        const Scene scene(system_with(511));
        const SynthesisOptions noiseless{false, true, RegionPolicy::kStrict};
        const double thetas[3] = {kPi / 3, kPi / 2, 2 * kPi / 3};
        const double ranges[2] = {10.0, 30.0};
        double centroid[2][3], width[2][3];
        for (int ri = 0; ri < 2; ++ri)
            for (int ti = 0; ti < 3; ++ti)
            {
                const Observation o =
                    scene.observe(scene.synthesize(TargetPosition::from_polar(ranges[ri], thetas[ti]), 0, noiseless));
                double n = 0.0, sum = 0.0;
                for (Eigen::Index i = 0; i < o.binary.size(); ++i)
                    if (o.binary[i] > 0.5)
                    {
                        n += 1.0;
                        sum += static_cast<double>(i);
                    }
                width[ri][ti] = n;
                centroid[ri][ti] = n > 0 ? sum / n : -1.0;
            }
        bool ok = true;
        for (int ri = 0; ri < 2; ++ri)
            ok &= centroid[ri][0] < centroid[ri][1] && centroid[ri][1] < centroid[ri][2];
        for (int ti = 0; ti < 3; ++ti)
            ok &= width[1][ti] < width[0][ti];
        std::string d = "centroid (pi/3, pi/2, 2pi/3):";
        for (int ri = 0; ri < 2; ++ri)
            d += fmt(" r=%g [%.1f %.1f %.1f]", ranges[ri], centroid[ri][0], centroid[ri][1], centroid[ri][2]);
        d += "; width r=10 vs 30:";
        for (int ti = 0; ti < 3; ++ti)
            d += fmt(" %g>%g", width[0][ti], width[1][ti]);
        return {ok, d};
    }

    // ---- 4 ----
    Outcome gradient_check()
    {
        double worst = 0.0;
        std::size_t checked = 0;
        for (int draw = 0; draw < kGradDraws; ++draw)
        {
            nn::BiCnnArchitecture arch;
            arch.input_length = 16;
            nn::BiCnnModel model(arch, nn::BiCnnHyper{}, 1000 + static_cast<std::uint64_t>(draw));
            std::mt19937_64 gen(mix_seed(77, static_cast<std::uint64_t>(draw)));
            const nn::Tensor batch = testing::gaussian_tensor({4, 2, 16}, gen);
            const nn::Tensor truth = testing::gaussian_tensor({4, 2}, gen, 2.0);
            const auto r = testing::check_model_gradient(model, batch, truth, kGradStep, kGradFloor);
            worst = std::max(worst, r.max_relative_error);
            checked += r.checked;
        }
        return {worst < kGradTol, fmt("%d draws, %zu partials, h=%.0e, max relative error %.3e (tol %.0e)", kGradDraws,
                                      checked, kGradStep, worst, kGradTol)};
    }

    // ---- 5 ----
    Outcome music_oracle()
    {
        const Scene scene(system_with(511));
        const SynthesisOptions noiseless{false, true, RegionPolicy::kStrict};
        const MusicGridConfig grid = MusicGridConfig::per_dimension(100);
        const auto angles = grid.angles();
        const auto dists = grid.distances();

        // (pi/2, 20 m) is node (50, 44) of the 100 x 100 grid.
        const TargetPosition on_node = TargetPosition::from_polar(dists[44], angles[50]);
        const std::vector<EchoSignal> e0{scene.synthesize(on_node, 0, noiseless)};
        const TargetPosition est0 = music_locate(e0, grid, scene.geometry());
        const bool exact = est0.angle() == angles[50] && est0.range() == dists[44];

        const double dtheta = grid.angle_spacing();
        const double dr = grid.distance_spacing();
        std::mt19937_64 rng(555);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int within = 0;
        double worst = 0.0;
        for (int t = 0; t < kOffNodeTargets; ++t)
        {
            // Strictly between nodes in both dimensions.
            const std::size_t i = static_cast<std::size_t>(u(rng) * 98.0);
            const std::size_t j = static_cast<std::size_t>(u(rng) * 98.0);
            const double th = angles[i] + (0.1 + 0.8 * u(rng)) * dtheta;
            const double r = dists[j] + (0.1 + 0.8 * u(rng)) * dr;
            const TargetPosition truth = TargetPosition::from_polar(r, th);
            const std::vector<EchoSignal> e{scene.synthesize(truth, 0, noiseless)};
            const TargetPosition est = music_locate(e, grid, scene.geometry());
            // Cell diagonal in metres at the target's range.
            const double diagonal = std::hypot(dr, r * dtheta);
            const double err = (est.xz() - truth.xz()).norm();
            worst = std::max(worst, err / diagonal);
            within += err <= diagonal;
        }
        return {exact && within == kOffNodeTargets,
                fmt("on-node (pi/2, 20 m) exact=%s; off-node within one cell diagonal: %d/%d (worst %.1f diagonals)",
                    exact ? "yes" : "no", within, kOffNodeTargets, worst)};
    }

    // ---- 6 ----
    Outcome music_trend(std::vector<EvalReport> &reports)
    {
        const Scene scene(system_with(511));
        MonteCarloConfig mc;
        mc.num_trials = kTrendTrials;
        TargetSampler sampler;
        sampler.seed = mix_seed(mc.seed, 0x7A26E7);
        const std::size_t grids[3] = {10, 100, 1000};
        double rmse[3];
        for (int k = 0; k < 3; ++k)
        {
            MusicEstimator est(scene, MusicGridConfig::per_dimension(grids[k]), grids[k], "per-dim");
            reports.push_back(run_monte_carlo(est, scene, mc, sampler));
            rmse[k] = reports.back().rmse_m;
            std::fprintf(stderr, "  music %zu: rmse %.4f m, %.3f s/trial\n", grids[k], rmse[k],
                         reports.back().mean_runtime_s);
        }
        const bool decreasing = rmse[1] < rmse[0] && rmse[2] < rmse[1];
        bool banded = true;
        std::string d = fmt("decreasing=%s;", decreasing ? "yes" : "no");
        for (int k = 0; k < 3; ++k)
        {
            const double ratio = rmse[k] / kTargetMusicRmse[k];
            const bool in = ratio <= kTargetFactor && ratio >= 1.0 / kTargetFactor;
            banded &= in;
            d += fmt(" %zu: %.4f m vs %.4f m (x%.2f%s)", grids[k], rmse[k], kTargetMusicRmse[k], ratio,
                     in ? "" : ", outside x3");
        }
        return {decreasing && banded, d};
    }

    struct Pipeline
    {
        fs::path workdir;
        DatasetSpec spec = DatasetSpec::desk();
        std::optional<nn::BiCnnModel> model;
        std::vector<LabeledSample> samples;
        nn::TrainingConfig training;
        int epochs_run = 0;
        double train_seconds = 0.0;

        void ensure_trained()
        {
            if (model)
                return;
            const Scene scene(SystemConfig{});
            const fs::path data = workdir / "desk.nfds";
            generate(spec, scene, data, 1);
            samples = load_dataset(data);
            training.epochs = kMaxEpochs;
            const auto t0 = std::chrono::steady_clock::now();
            nn::TrainingResult r = nn::train(samples, training, [&](const nn::EpochStats &s) {
                ++epochs_run;
                if (s.epoch % 10 == 9)
                    std::fprintf(stderr, "  epoch %d: val rmse %.4f m\n", s.epoch + 1, s.validation_rmse_m);
            });
            train_seconds = seconds_since(t0);
            model = std::move(r.model);
        }

        // Test split re-synthesised at the given power; same targets and noise seeds.
        double test_rmse(double power_dbm) const
        {
            SystemConfig cfg;
            cfg.transmit_power_dbm = power_dbm;
            const Scene scene(cfg);
            double sq = 0.0;
            std::size_t n = 0;
            for (const LabeledSample &s : samples)
                if (s.split == Split::kTest)
                {
                    const LabeledSample fresh = make_sample(spec, scene, s.index);
                    sq += (model->predict(fresh.stacked()) - fresh.truth_xz).squaredNorm();
                    ++n;
                }
            return std::sqrt(sq / static_cast<double>(n));
        }
    };

    // ---- 7 ----
    Outcome bicnn_end_to_end(Pipeline &p)
    {
        p.ensure_trained();
        const double rmse = p.test_rmse(30.0);

        // Noiseless probe at (pi/2, 20 m).
        const Scene scene(SystemConfig{});
        const TargetPosition probe = TargetPosition::from_polar(20.0, kPi / 2);
        const Observation o = scene.observe(scene.synthesize(probe, 0, SynthesisOptions{false, true, RegionPolicy::kStrict}));
        const double probe_err = (nn::bicnn_forward(*p.model, o) - probe.xz()).norm();

        const bool ok = rmse < kBiCnnRmseLimit && probe_err < kBiCnnRmseLimit && p.epochs_run <= kMaxEpochs;
        return {ok, fmt("%zu samples, %d epochs in %.0f s, test rmse %.4f m (limit %.1f m), noiseless (pi/2, 20 m) "
                        "error %.4f m",
                        p.samples.size(), p.epochs_run, p.train_seconds, rmse, kBiCnnRmseLimit, probe_err)};
    }

    // ---- 8 ----
    Outcome runtime_ratio(Pipeline &p)
    {
        p.ensure_trained();
        const Scene scene(SystemConfig{});
        MonteCarloConfig mc;
        mc.num_trials = kRuntimeTrials;
        TargetSampler sampler;
        BiCnnEstimator bicnn(scene, *p.model);
        MusicEstimator music(scene, MusicGridConfig::per_dimension(100), 100, "per-dim");
        const EvalReport b = run_monte_carlo(bicnn, scene, mc, sampler);
        const EvalReport m = run_monte_carlo(music, scene, mc, sampler);
        const double ratio = b.mean_runtime_s / m.mean_runtime_s;
        return {ratio <= kRuntimeRatio, fmt("BiCNN %.3e s vs MUSIC(100x100) %.3e s per trial, ratio %.2e (limit %.1f)",
                                            b.mean_runtime_s, m.mean_runtime_s, ratio, kRuntimeRatio)};
    }

    // ---- 9 ----
    Outcome power_trend(Pipeline &p)
    {
        p.ensure_trained();
        const double low = p.test_rmse(30.0);
        const double high = p.test_rmse(kHighPowerDbm);
        return {high <= low, fmt("test rmse %.6f m at 50 dBm vs %.6f m at 30 dBm", high, low)};
    }

    // ---- 10 ----
    std::string strip_runtime(std::vector<EvalReport> reports)
    {
        for (EvalReport &r : reports)
            r.mean_runtime_s = 0.0;
        return reports_to_json(reports);
    }

    Outcome determinism(Pipeline &p)
    {
        const Scene scene(SystemConfig{});
        const fs::path a = p.workdir / "det_a.nfds";
        const fs::path b = p.workdir / "det_b.nfds";
        generate(p.spec, scene, a, 1);
        generate(p.spec, scene, b, 3);
        const bool data_same = read_file(a) == read_file(b);

        const auto samples = load_dataset(a);
        nn::TrainingConfig one = p.training;
        one.epochs = 1;
        const auto ck1 = nn::encode_checkpoint(nn::train(samples, one).model, one.hash());
        const auto ck2 = nn::encode_checkpoint(nn::train(samples, one).model, one.hash());
        const bool ck_same = ck1 == ck2;

        p.ensure_trained();
        auto reports = [&] {
            MonteCarloConfig mc;
            mc.num_trials = 20;
            TargetSampler sampler;
            BiCnnEstimator bicnn(scene, *p.model);
            MusicEstimator music(scene, MusicGridConfig::per_dimension(10), 10, "per-dim");
            return std::vector<EvalReport>{run_monte_carlo(bicnn, scene, mc, sampler),
                                           run_monte_carlo(music, scene, mc, sampler)};
        };
        const bool reports_same = strip_runtime(reports()) == strip_runtime(reports());
        fs::remove(a);
        fs::remove(b);
        return {data_same && ck_same && reports_same,
                fmt("dataset bytes (1 vs 3 threads) %s, 1-epoch checkpoint bytes %s, reports without runtime %s",
                    data_same ? "identical" : "DIFFER", ck_same ? "identical" : "DIFFER",
                    reports_same ? "identical" : "DIFFER")};
    }

    std::set<int> parse_ids(const std::string &s)
    {
        std::set<int> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.insert(std::stoi(item));
        return out;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"nfloc acceptance criteria"};
    std::string only, known_red, workdir, report_path;
    app.add_option("--only", only, "comma-separated criterion ids");
    app.add_option("--known-red", known_red,
                   "criteria whose failure is documented; they still print FAIL but do not set the exit status");
    app.add_option("--workdir", workdir, "scratch directory");
    app.add_option("--report", report_path, "write the MUSIC Monte Carlo reports of criterion 6 here");
    CLI11_PARSE(app, argc, argv);

    const std::set<int> selected = parse_ids(only);
    const std::set<int> red = parse_ids(known_red);
    Pipeline pipeline;
    pipeline.workdir = workdir.empty() ? fs::temp_directory_path() / "nfloc_acceptance" : fs::path(workdir);
    fs::create_directories(pipeline.workdir);
    std::vector<EvalReport> music_reports;

    struct Criterion
    {
        int id;
        const char *name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "wtm-semi-unitary", kUnitarityBudgetS, wtm_unitarity},
        {2, "wavenumber-round-trip", kRoundTripBudgetS, wavenumber_round_trip},
        {3, "observation-phenomenology", kPhenomenologyBudgetS, phenomenology},
        {4, "bicnn-gradient", kGradBudgetS, gradient_check},
        {5, "music-oracle", kMusicOracleBudgetS, music_oracle},
        {6, "music-grid-trend", kTrendBudgetS, [&] { return music_trend(music_reports); }},
        {7, "bicnn-desk-rmse", kTrainBudgetS, [&] { return bicnn_end_to_end(pipeline); }},
        {8, "runtime-ratio", kRuntimeBudgetS, [&] { return runtime_ratio(pipeline); }},
        {9, "power-trend", kPowerBudgetS, [&] { return power_trend(pipeline); }},
        {10, "determinism", kDeterminismBudgetS, [&] { return determinism(pipeline); }},
    };

    int unexpected = 0;
    int failed = 0;
    for (const Criterion &c : criteria)
    {
        if (!selected.empty() && !selected.count(c.id))
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = seconds_since(t0);
        const bool in_budget = secs < c.budget_s;
        const bool pass = o.pass && in_budget;
        std::printf("%s %2d %-26s %s; %.1f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.budget_s, !pass && red.count(c.id) ? " [known red]" : "");
        std::fflush(stdout);
        if (!pass)
        {
            ++failed;
            if (!red.count(c.id))
                ++unexpected;
        }
    }
    if (!report_path.empty() && !music_reports.empty())
        write_reports(report_path, music_reports);
    std::printf("%d failed, %d unexpected\n", failed, unexpected);
    return unexpected == 0 ? 0 : 1;
}
