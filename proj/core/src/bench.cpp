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
#include "nfloc/binary_io.hpp"
#include "nfloc/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace nfloc
{
    Eigen::Vector2d BiCnnEstimator::estimate(std::span<const EchoSignal> echoes)
    {
        if (echoes.empty())
            throw ParameterError("bicnn: no echo to process");
        const Observation obs = scene_.observe(echoes.front());
        return nn::bicnn_forward(model_, obs);
    }

    std::string MusicEstimator::describe() const
    {
        return "music:" + mode_ + ":" + std::to_string(grid_.angle_count) + "x" + std::to_string(grid_.distance_count);
    }

    Eigen::Vector2d MusicEstimator::estimate(std::span<const EchoSignal> echoes)
    {
        return music_locate(echoes, grid_, scene_.geometry()).xz();
    }

    TargetPosition TargetSampler::target(std::size_t trial) const
    {
        std::mt19937_64 rng(mix_seed(seed, trial));
        if (mode == Mode::kGridAligned)
        {
            std::uniform_int_distribution<std::size_t> ai(0, grid.angle_count - 1);
            std::uniform_int_distribution<std::size_t> di(0, grid.distance_count - 1);
            const std::size_t i = ai(rng);
            const std::size_t j = di(rng);
            return TargetPosition::from_polar(grid.distances()[j], grid.angles()[i]);
        }
        std::uniform_real_distribution<double> angle(angle_min, angle_max);
        std::uniform_real_distribution<double> dist(distance_min, distance_max);
        const double theta = angle(rng);
        const double r = dist(rng);
        return TargetPosition::from_polar(r, theta);
    }

    std::vector<EchoSignal> trial_echoes(const Scene &scene, const MonteCarloConfig &config,
                                         const TargetPosition &target, std::size_t trial)
    {
        std::vector<EchoSignal> echoes;
        const int snapshots = std::max(1, config.snapshots);
        for (int l = 0; l < snapshots; ++l)
            echoes.push_back(scene.synthesize(
                target, mix_seed(config.seed, trial * static_cast<std::size_t>(snapshots) + static_cast<std::size_t>(l)),
                config.synthesis));
        return echoes;
    }

    std::string format_hash(std::uint64_t h)
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    EvalReport run_monte_carlo(Estimator &estimator, const Scene &scene, const MonteCarloConfig &config,
                               const TargetSampler &sampler)
    {
        if (config.num_trials < 1)
            throw ParameterError("run_monte_carlo: need at least one trial");
        using Clock = std::chrono::steady_clock;
        double sq = 0.0;
        double seconds = 0.0;
        for (int t = 0; t < config.num_trials; ++t)
        {
            const auto trial = static_cast<std::size_t>(t);
            const TargetPosition target = sampler.target(trial);
            const std::vector<EchoSignal> echoes = trial_echoes(scene, config, target, trial);

            const auto start = Clock::now();
            const Eigen::Vector2d est = estimator.estimate(echoes);
            const auto stop = Clock::now();

            seconds += std::chrono::duration<double>(stop - start).count();
            sq += (est - target.xz()).squaredNorm();
        }

        const SystemConfig &sys = scene.config();
        std::ostringstream desc;
        desc.precision(17);
        desc << estimator.describe() << ';' << config.num_trials << ';' << config.snapshots << ';' << config.seed << ';'
             << config.synthesis.noise << ';' << config.synthesis.pathloss << ';' << int(sampler.mode) << ';'
             << sampler.seed << ';' << sys.carrier_frequency_hz << ';' << sys.num_antennas << ';'
             << sys.transmit_power_dbm << ';' << sys.noise_psd_dbm_hz << ';' << sys.bandwidth_hz;

        EvalReport report;
        report.method = estimator.method();
        report.grid_per_dim = estimator.grid_per_dim();
        report.grid_mode = estimator.grid_mode();
        report.num_trials = config.num_trials;
        report.rmse_m = std::sqrt(sq / config.num_trials);
        report.mean_runtime_s = seconds / config.num_trials;
        report.config_hash = format_hash(fnv1a64(desc.str()));
        return report;
    }

    namespace
    {
        int method_rank(const EvalReport &r)
        {
            if (r.method == "music")
                return 0;
            if (r.method == "bicnn")
                return 1;
            return 2;
        }

        std::string grid_label(const EvalReport &r)
        {
            return r.grid_per_dim ? std::to_string(*r.grid_per_dim) : std::string("N/A");
        }

        std::string fixed(double v, int digits)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*f", digits, v);
            return buf;
        }
    } // namespace

    ComparisonTable compare_table(std::vector<EvalReport> reports)
    {
        if (reports.empty())
            throw ParameterError("compare_table: no reports");
        std::stable_sort(reports.begin(), reports.end(), [](const EvalReport &a, const EvalReport &b) {
            if (method_rank(a) != method_rank(b))
                return method_rank(a) < method_rank(b);
            return a.grid_per_dim.value_or(0) < b.grid_per_dim.value_or(0);
        });

        ComparisonTable table;
        table.rows = reports;
        std::ostringstream text, csv;
        text << "Method   # Grids   RMSE          Avg. Run Time\n";
        text << "-------  --------  ------------  -------------\n";
        csv << "method,grids,grid_mode,rmse_m,mean_runtime_s,num_trials,config_hash\n";
        for (const EvalReport &r : table.rows)
        {
            const std::string rmse = fixed(r.rmse_m, 4);
            const std::string rt = fixed(r.mean_runtime_s, 4);
            char line[160];
            std::snprintf(line, sizeof line, "%-7s  %-8s  %10s m  %11s s\n", r.method == "bicnn" ? "BiCNN" : r.method == "music" ? "MUSIC" : r.method.c_str(),
                          grid_label(r).c_str(), rmse.c_str(), rt.c_str());
            text << line;
            csv << r.method << ',' << grid_label(r) << ',' << r.grid_mode << ',' << rmse << ',' << rt << ','
                << r.num_trials << ',' << r.config_hash << '\n';
        }
        table.text = text.str();
        table.csv = csv.str();
        return table;
    }

    std::string reports_to_json(const std::vector<EvalReport> &reports)
    {
        nlohmann::json arr = nlohmann::json::array();
        for (const EvalReport &r : reports)
        {
            nlohmann::json j;
            j["method"] = r.method;
            j["grid_per_dim"] = r.grid_per_dim ? nlohmann::json(*r.grid_per_dim) : nlohmann::json(nullptr);
            j["grid_mode"] = r.grid_mode;
            j["rmse_m"] = r.rmse_m;
            j["mean_runtime_s"] = r.mean_runtime_s;
            j["num_trials"] = r.num_trials;
            j["config_hash"] = r.config_hash;
            arr.push_back(std::move(j));
        }
        return arr.dump(2) + "\n";
    }

    std::vector<EvalReport> reports_from_json(const std::string &text)
    {
        std::vector<EvalReport> out;
        try
        {
            const nlohmann::json arr = nlohmann::json::parse(text);
            for (const auto &j : arr)
            {
                EvalReport r;
                r.method = j.at("method").get<std::string>();
                if (!j.at("grid_per_dim").is_null())
                    r.grid_per_dim = j.at("grid_per_dim").get<std::size_t>();
                r.grid_mode = j.value("grid_mode", "");
                r.rmse_m = j.at("rmse_m").get<double>();
                r.mean_runtime_s = j.at("mean_runtime_s").get<double>();
                r.num_trials = j.at("num_trials").get<int>();
                r.config_hash = j.value("config_hash", "");
                out.push_back(std::move(r));
            }
        }
        catch (const nlohmann::json::exception &e)
        {
            throw FormatError(std::string("malformed report JSON: ") + e.what());
        }
        return out;
    }

    void write_reports(const std::filesystem::path &path, const std::vector<EvalReport> &reports)
    {
        std::ofstream out(path);
        if (!out)
            throw FormatError("cannot create " + path.string());
        if (path.extension() == ".csv")
            out << compare_table(reports).csv;
        else
            out << reports_to_json(reports);
    }

    std::vector<EvalReport> reports_from_csv(const std::string &text)
    {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line.rfind("method,", 0) != 0)
            throw FormatError("report CSV: missing header");
        std::vector<EvalReport> out;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            std::vector<std::string> cols;
            std::stringstream row(line);
            std::string cell;
            while (std::getline(row, cell, ','))
                cols.push_back(cell);
            if (!line.empty() && line.back() == ',')
                cols.emplace_back();
            if (cols.size() != 7)
                throw FormatError("report CSV: expected 7 columns in \"" + line + "\"");
            try
            {
                EvalReport r;
                r.method = cols[0];
                if (cols[1] != "N/A")
                    r.grid_per_dim = std::stoull(cols[1]);
                r.grid_mode = cols[2];
                r.rmse_m = std::stod(cols[3]);
                r.mean_runtime_s = std::stod(cols[4]);
                r.num_trials = std::stoi(cols[5]);
                r.config_hash = cols[6];
                out.push_back(std::move(r));
            }
            catch (const std::logic_error &)
            {
                throw FormatError("report CSV: bad value in \"" + line + "\"");
            }
        }
        return out;
    }

    std::vector<EvalReport> read_reports(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw FormatError("cannot open " + path.string());
        std::stringstream ss;
        ss << in.rdbuf();
        if (path.extension() == ".csv")
            return reports_from_csv(ss.str());
        return reports_from_json(ss.str());
    }

} // namespace nfloc
