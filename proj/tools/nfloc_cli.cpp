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
#include "nfloc/config.hpp"
#include "nfloc/dataset.hpp"
#include "nfloc/errors.hpp"
#include "nfloc/nn/checkpoint.hpp"
#include "nfloc/nn/training.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace nfloc;

namespace
{
    struct Common
    {
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::optional<double> power_dbm;
        bool check = false;
    };

    ExperimentConfig load_config(const Common &c)
    {
        ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig{} : load_experiment_config(c.config_path);
        if (c.power_dbm)
            cfg.system.transmit_power_dbm = *c.power_dbm;
        cfg.system.validate();
        return cfg;
    }

    void ensure_parent(const fs::path &p)
    {
        if (p.has_parent_path())
            fs::create_directories(p.parent_path());
    }

    MonteCarloConfig monte_carlo(const ExperimentConfig &cfg, const Common &c, std::optional<int> trials)
    {
        MonteCarloConfig mc;
        mc.num_trials = trials.value_or(cfg.eval.trials);
        mc.snapshots = cfg.eval.snapshots;
        mc.seed = c.seed.value_or(cfg.eval.seed);
        mc.synthesis.noise = cfg.dataset.noise_enabled;
        mc.synthesis.pathloss = cfg.dataset.pathloss_enabled;
        return mc;
    }

    TargetSampler sampler_for(const ExperimentConfig &cfg, const MonteCarloConfig &mc)
    {
        TargetSampler s;
        s.angle_min = cfg.dataset.angle_min;
        s.angle_max = cfg.dataset.angle_max;
        s.distance_min = cfg.dataset.distance_min;
        s.distance_max = cfg.dataset.distance_max;
        s.seed = mix_seed(mc.seed, 0x7A26E7);
        return s;
    }

    MusicGridConfig music_grid(const ExperimentConfig &cfg, std::size_t n, const std::string &mode)
    {
        MusicGridConfig g = mode == "total" ? MusicGridConfig::total_cells(n) : MusicGridConfig::per_dimension(n);
        g.angle_min = cfg.dataset.angle_min;
        g.angle_max = cfg.dataset.angle_max;
        g.distance_min = cfg.dataset.distance_min;
        g.distance_max = cfg.dataset.distance_max;
        return g;
    }

    void print_report(const EvalReport &r)
    {
        std::printf("%s%s: rmse %.4f m, mean runtime %.6f s over %d trials [%s]\n", r.method.c_str(),
                    r.grid_per_dim ? (" " + std::to_string(*r.grid_per_dim)).c_str() : "", r.rmse_m,
                    r.mean_runtime_s, r.num_trials, r.config_hash.c_str());
    }

    // Threshold checks shared by eval-* and compare. Returns the number of violations.
    int check_reports(const std::vector<EvalReport> &reports, const ExperimentConfig &cfg)
    {
        int violations = 0;
        std::vector<const EvalReport *> music;
        const EvalReport *bicnn = nullptr;
        for (const EvalReport &r : reports)
        {
            if (r.method == "music")
                music.push_back(&r);
            else if (r.method == "bicnn")
                bicnn = &r;
        }
        std::sort(music.begin(), music.end(),
                  [](const EvalReport *a, const EvalReport *b) { return a->grid_per_dim < b->grid_per_dim; });
        for (std::size_t i = 1; i < music.size(); ++i)
            if (!(music[i]->rmse_m < music[i - 1]->rmse_m))
            {
                std::fprintf(stderr, "check failed: MUSIC RMSE does not decrease from grid %zu to %zu\n",
                             *music[i - 1]->grid_per_dim, *music[i]->grid_per_dim);
                ++violations;
            }
        if (bicnn)
        {
            if (!(bicnn->rmse_m < cfg.eval.bicnn_rmse_limit_m))
            {
                std::fprintf(stderr, "check failed: BiCNN RMSE %.4f m >= %.4f m\n", bicnn->rmse_m,
                             cfg.eval.bicnn_rmse_limit_m);
                ++violations;
            }
            for (const EvalReport *m : music)
                if (m->grid_per_dim == 100u && bicnn->mean_runtime_s > cfg.eval.runtime_ratio_limit * m->mean_runtime_s)
                {
                    std::fprintf(stderr, "check failed: BiCNN runtime %.3g s > %.3g x MUSIC(100) %.3g s\n",
                                 bicnn->mean_runtime_s, cfg.eval.runtime_ratio_limit, m->mean_runtime_s);
                    ++violations;
                }
        }
        return violations;
    }

    int finish(const std::vector<EvalReport> &reports, const std::string &out, const ExperimentConfig &cfg,
               bool check)
    {
        if (!out.empty())
        {
            ensure_parent(out);
            write_reports(out, reports);
            std::printf("wrote %s\n", out.c_str());
        }
        if (check && check_reports(reports, cfg) > 0)
            return 3;
        return 0;
    }

    int cmd_gen_data(const Common &c, const std::string &out, const std::string &csv, const std::string &scale,
                     unsigned threads)
    {
        ExperimentConfig cfg = load_config(c);
        if (scale == "full")
            cfg.dataset = DatasetSpec::full();
        else if (scale == "desk")
            cfg.dataset = DatasetSpec::desk();
        if (c.seed)
            cfg.dataset.seed = *c.seed;
        cfg.dataset.validate();
        const Scene scene(cfg.system);
        ensure_parent(out);
        const auto t0 = std::chrono::steady_clock::now();
        const GenerateSummary s = generate(cfg.dataset, scene, out, threads);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("wrote %s: %llu samples (train %zu, validation %zu, test %zu), M = %u, %.1f s\n", out.c_str(),
                    static_cast<unsigned long long>(s.header.sample_count), s.split_counts[0], s.split_counts[1],
                    s.split_counts[2], s.header.num_antennas, secs);
        if (!csv.empty())
        {
            ensure_parent(csv);
            export_csv(out, csv);
            std::printf("wrote %s\n", csv.c_str());
        }
        return 0;
    }

    int cmd_train(const Common &c, const std::string &data, const std::string &out, const std::string &history,
                  std::optional<int> epochs)
    {
        ExperimentConfig cfg = load_config(c);
        if (c.seed)
            cfg.training.seed = *c.seed;
        if (epochs)
            cfg.training.epochs = *epochs;
        cfg.training.validate();
        const std::vector<LabeledSample> samples = load_dataset(data);
        std::printf("loaded %zu samples from %s\n", samples.size(), data.c_str());

        std::ofstream hist;
        if (!history.empty())
        {
            ensure_parent(history);
            hist.open(history);
            hist << "epoch,learning_rate,train_loss,validation_loss,validation_rmse_m\n";
        }
        const nn::TrainingResult result = nn::train(samples, cfg.training, [&](const nn::EpochStats &s) {
            std::printf("epoch %3d  lr %.3e  train %.5f  val %.5f  val rmse %.4f m\n", s.epoch, s.learning_rate,
                        s.train_loss, s.validation_loss, s.validation_rmse_m);
            std::fflush(stdout);
            if (hist)
                hist << s.epoch << ',' << s.learning_rate << ',' << s.train_loss << ',' << s.validation_loss << ','
                     << s.validation_rmse_m << '\n';
        });

        const nn::SampleSet test(samples, Split::kTest);
        if (test.size() > 0)
            std::printf("test rmse %.4f m (%zu samples, best epoch %d)\n", nn::evaluate_rmse(result.model, test),
                        test.size(), result.best_epoch);
        ensure_parent(out);
        nn::save_checkpoint(out, result.model, cfg.training.hash());
        std::printf("wrote %s\n", out.c_str());
        if (c.check && test.size() > 0 && !(nn::evaluate_rmse(result.model, test) < cfg.eval.bicnn_rmse_limit_m))
        {
            std::fprintf(stderr, "check failed: test RMSE above %.4f m\n", cfg.eval.bicnn_rmse_limit_m);
            return 3;
        }
        return 0;
    }

    EvalReport evaluate_on_split(const nn::BiCnnModel &model, const Scene &scene, const DatasetSpec &spec,
                                 const std::string &data)
    {
        // Re-synthesises the test targets of `data` under the current system config so the
        // transmit power can differ from the one the file was generated with.
        std::vector<LabeledSample> samples = load_dataset(data);
        double sq = 0.0;
        double secs = 0.0;
        int n = 0;
        for (const LabeledSample &s : samples)
        {
            if (s.split != Split::kTest)
                continue;
            const LabeledSample fresh = make_sample(spec, scene, s.index);
            const Eigen::MatrixXd stacked = fresh.stacked();
            const auto t0 = std::chrono::steady_clock::now();
            const Eigen::Vector2d est = model.predict(stacked);
            secs += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            sq += (est - fresh.truth_xz).squaredNorm();
            ++n;
        }
        if (n == 0)
            throw ParameterError(data + " has no test samples");
        EvalReport r;
        r.method = "bicnn";
        r.rmse_m = std::sqrt(sq / n);
        r.mean_runtime_s = secs / n;
        r.num_trials = n;
        r.config_hash = format_hash(dataset_hash(spec, scene.config()));
        return r;
    }

    int cmd_eval_bicnn(const Common &c, const std::string &checkpoint, const std::string &data,
                       std::optional<int> trials, const std::string &out)
    {
        const ExperimentConfig cfg = load_config(c);
        const nn::Checkpoint ck = nn::load_checkpoint(checkpoint);
        const Scene scene(cfg.system);
        EvalReport r;
        if (!data.empty())
        {
            DatasetSpec spec = cfg.dataset;
            spec.seed = DatasetReader(data).header().seed;
            r = evaluate_on_split(ck.model, scene, spec, data);
        }
        else
        {
            const MonteCarloConfig mc = monte_carlo(cfg, c, trials);
            BiCnnEstimator est(scene, ck.model);
            r = run_monte_carlo(est, scene, mc, sampler_for(cfg, mc));
        }
        print_report(r);
        return finish({r}, out, cfg, c.check);
    }

    std::vector<EvalReport> run_music(const ExperimentConfig &cfg, const Common &c, const Scene &scene,
                                      const std::vector<std::size_t> &grids, const std::string &mode,
                                      std::optional<int> trials)
    {
        const MonteCarloConfig mc = monte_carlo(cfg, c, trials);
        std::vector<EvalReport> reports;
        for (std::size_t n : grids)
        {
            MusicEstimator est(scene, music_grid(cfg, n, mode), n, mode);
            reports.push_back(run_monte_carlo(est, scene, mc, sampler_for(cfg, mc)));
            print_report(reports.back());
            std::fflush(stdout);
        }
        return reports;
    }

    int cmd_eval_music(const Common &c, std::vector<std::size_t> grids, std::string mode, std::optional<int> trials,
                       const std::string &out)
    {
        const ExperimentConfig cfg = load_config(c);
        if (grids.empty())
            grids = cfg.eval.music_grids;
        if (mode.empty())
            mode = cfg.eval.grid_mode;
        const Scene scene(cfg.system);
        return finish(run_music(cfg, c, scene, grids, mode, trials), out, cfg, c.check);
    }

    int cmd_compare(const Common &c, const std::vector<std::string> &inputs, const std::string &checkpoint,
                    std::vector<std::size_t> grids, std::optional<int> trials, const std::string &out,
                    const std::string &table_path)
    {
        const ExperimentConfig cfg = load_config(c);
        std::vector<EvalReport> reports;
        if (!inputs.empty())
        {
            for (const std::string &p : inputs)
                for (EvalReport &r : read_reports(p))
                    reports.push_back(std::move(r));
        }
        else
        {
            if (checkpoint.empty())
                throw ParameterError("compare needs --checkpoint or --reports");
            if (grids.empty())
                grids = cfg.eval.music_grids;
            const Scene scene(cfg.system);
            reports = run_music(cfg, c, scene, grids, cfg.eval.grid_mode, trials);
            const nn::Checkpoint ck = nn::load_checkpoint(checkpoint);
            const MonteCarloConfig mc = monte_carlo(cfg, c, trials);
            BiCnnEstimator est(scene, ck.model);
            reports.push_back(run_monte_carlo(est, scene, mc, sampler_for(cfg, mc)));
            print_report(reports.back());
        }
        const ComparisonTable table = compare_table(reports);
        std::printf("\n%s", table.text.c_str());
        if (!table_path.empty())
        {
            ensure_parent(table_path);
            std::ofstream(table_path) << table.text;
        }
        return finish(table.rows, out, cfg, c.check);
    }

    void add_common(CLI::App *sub, Common &c)
    {
        sub->add_option("-c,--config", c.config_path, "experiment config (INI)")->check(CLI::ExistingFile);
        sub->add_option("-s,--seed", c.seed, "override the seed of this stage");
        sub->add_option("--power-dbm", c.power_dbm, "override the transmit power");
        sub->add_flag("--check", c.check, "exit with status 3 when a threshold is violated");
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"nfloc: near-field localization with BiCNN and 2D MUSIC"};
    app.require_subcommand(1);
    Common common;

    std::string out, csv, data, history, checkpoint, table_path, mode;
    std::string scale;
    unsigned threads = 0;
    std::optional<int> epochs, trials;
    std::vector<std::size_t> grids;
    std::vector<std::string> inputs;

    auto *gen = app.add_subcommand("gen-data", "synthesise a binary observation dataset");
    add_common(gen, common);
    gen->add_option("-o,--out", out, "dataset file")->required();
    gen->add_option("--csv", csv, "also export the dataset as CSV");
    gen->add_option("--scale", scale, "desk or full preset region, replacing [dataset] grid settings")
        ->check(CLI::IsMember({"desk", "full"}));
    gen->add_option("-j,--threads", threads, "worker threads (0 = hardware)");

    auto *tr = app.add_subcommand("train", "train the BiCNN on a dataset file");
    add_common(tr, common);
    tr->add_option("-d,--data", data, "dataset file")->required()->check(CLI::ExistingFile);
    tr->add_option("-o,--out", out, "checkpoint file")->required();
    tr->add_option("--history", history, "per-epoch CSV");
    tr->add_option("--epochs", epochs, "override the epoch count");

    auto *eb = app.add_subcommand("eval-bicnn", "Monte Carlo or test-split evaluation of a checkpoint");
    add_common(eb, common);
    eb->add_option("-m,--checkpoint", checkpoint, "checkpoint file")->required()->check(CLI::ExistingFile);
    eb->add_option("-d,--data", data, "evaluate on the test split of this dataset instead")->check(CLI::ExistingFile);
    eb->add_option("-n,--trials", trials, "Monte Carlo trials");
    eb->add_option("-o,--out", out, "report (.json or .csv)");

    auto *em = app.add_subcommand("eval-music", "Monte Carlo evaluation of 2D MUSIC");
    add_common(em, common);
    em->add_option("-g,--grids", grids, "grid counts, e.g. 10 100 1000");
    em->add_option("--grid-mode", mode, "per-dim or total")->check(CLI::IsMember({"per-dim", "total"}));
    em->add_option("-n,--trials", trials, "Monte Carlo trials");
    em->add_option("-o,--out", out, "report (.json or .csv)");

    auto *cmp = app.add_subcommand("compare", "BiCNN vs MUSIC table");
    add_common(cmp, common);
    cmp->add_option("-r,--reports", inputs, "existing report files to merge instead of running")
        ->check(CLI::ExistingFile);
    cmp->add_option("-m,--checkpoint", checkpoint, "checkpoint file")->check(CLI::ExistingFile);
    cmp->add_option("-g,--grids", grids, "MUSIC grid counts");
    cmp->add_option("-n,--trials", trials, "Monte Carlo trials");
    cmp->add_option("-o,--out", out, "table (.csv or .json)");
    cmp->add_option("--table", table_path, "plain-text table");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*gen)
            return cmd_gen_data(common, out, csv, scale, threads);
        if (*tr)
            return cmd_train(common, data, out, history, epochs);
        if (*eb)
            return cmd_eval_bicnn(common, checkpoint, data, trials, out);
        if (*em)
            return cmd_eval_music(common, grids, mode, trials, out);
        if (*cmp)
            return cmd_compare(common, inputs, checkpoint, grids, trials, out, table_path);
    }
    catch (const nfloc::Error &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
