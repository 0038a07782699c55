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

#include "nfloc/config.hpp"
#include "nfloc/binary_io.hpp"
#include "nfloc/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace nfloc
{
    namespace
    {
        namespace pt = boost::property_tree;

        pt::ptree parse_ini(const std::string &text)
        {
            pt::ptree tree;
            std::istringstream in(text);
            try
            {
                pt::read_ini(in, tree);
            }
            catch (const pt::ini_parser_error &e)
            {
                throw ConfigError(std::string("config parse error: ") + e.what());
            }
            return tree;
        }

        std::string read_text(const std::filesystem::path &path)
        {
            std::ifstream in(path);
            if (!in)
                throw ConfigError("cannot open config " + path.string());
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }

        // Reads typed keys from one section and remembers which ones were consumed.
        class Section
        {
        public:
            Section(const pt::ptree *node, std::string name) : node_(node), name_(std::move(name)) {}

            template <typename T>
            void get(const char *key, T &out)
            {
                known_.insert(key);
                if (!node_)
                    return;
                const auto child = node_->get_child_optional(key);
                if (!child)
                    return;
                try
                {
                    out = child->get_value<T>();
                }
                catch (const pt::ptree_bad_data &)
                {
                    throw ConfigError("config [" + name_ + "] " + key + ": cannot parse \"" + child->data() + "\"");
                }
            }

            void get_bool(const char *key, bool &out)
            {
                std::string v = out ? "true" : "false";
                get(key, v);
                if (v == "true" || v == "1" || v == "yes" || v == "on")
                    out = true;
                else if (v == "false" || v == "0" || v == "no" || v == "off")
                    out = false;
                else
                    throw ConfigError("config [" + name_ + "] " + key + ": expected a boolean");
            }

            void get_list(const char *key, std::vector<std::size_t> &out)
            {
                std::string v;
                get(key, v);
                if (v.empty())
                    return;
                out.clear();
                std::stringstream ss(v);
                std::string item;
                while (std::getline(ss, item, ','))
                {
                    try
                    {
                        out.push_back(static_cast<std::size_t>(std::stoull(item)));
                    }
                    catch (const std::exception &)
                    {
                        throw ConfigError("config [" + name_ + "] " + key + ": bad list item \"" + item + "\"");
                    }
                }
            }

            void reject_unknown() const
            {
                if (!node_)
                    return;
                for (const auto &kv : *node_)
                    if (kv.second.empty() && !known_.count(kv.first))
                        throw ConfigError("config [" + name_ + "]: unknown key \"" + kv.first + "\"");
            }

        private:
            const pt::ptree *node_;
            std::string name_;
            std::set<std::string> known_;
        };

        const pt::ptree *section(const pt::ptree &tree, const char *name)
        {
            const auto child = tree.get_child_optional(name);
            return child ? &*child : nullptr;
        }

        void read_system(Section s, SystemConfig &c)
        {
            s.get("carrier_frequency_hz", c.carrier_frequency_hz);
            s.get("bandwidth_hz", c.bandwidth_hz);
            s.get("num_antennas", c.num_antennas);
            s.get("transmit_power_dbm", c.transmit_power_dbm);
            s.get("noise_psd_dbm_hz", c.noise_psd_dbm_hz);
            s.get("tx_gain", c.tx_gain);
            s.get("rx_gain", c.rx_gain);
            s.reject_unknown();
            c.validate();
        }
    } // namespace

    SystemConfig parse_system_config(const std::string &text)
    {
        const pt::ptree tree = parse_ini(text);
        SystemConfig c;
        const pt::ptree *sys = section(tree, "system");
        if (sys)
            read_system(Section(sys, "system"), c);
        else
            read_system(Section(&tree, "system"), c);
        return c;
    }

    SystemConfig load_system_config(const std::filesystem::path &path)
    {
        return parse_system_config(read_text(path));
    }

    ExperimentConfig parse_experiment_config(const std::string &text)
    {
        const pt::ptree tree = parse_ini(text);
        for (const auto &kv : tree)
        {
            static const std::set<std::string> sections{"system", "dataset", "training", "eval"};
            if (!sections.count(kv.first))
                throw ConfigError("config: unknown section or top-level key \"" + kv.first + "\"");
        }

        ExperimentConfig c;
        read_system(Section(section(tree, "system"), "system"), c.system);

        Section ds(section(tree, "dataset"), "dataset");
        ds.get("angle_min", c.dataset.angle_min);
        ds.get("angle_max", c.dataset.angle_max);
        ds.get("angle_step", c.dataset.angle_step);
        ds.get("distance_min", c.dataset.distance_min);
        ds.get("distance_max", c.dataset.distance_max);
        ds.get("distance_step", c.dataset.distance_step);
        ds.get_bool("noise_enabled", c.dataset.noise_enabled);
        ds.get_bool("pathloss_enabled", c.dataset.pathloss_enabled);
        ds.get("seed", c.dataset.seed);
        ds.get("train_fraction", c.dataset.split_fractions[0]);
        ds.get("validation_fraction", c.dataset.split_fractions[1]);
        ds.get("test_fraction", c.dataset.split_fractions[2]);
        ds.reject_unknown();
        c.dataset.validate();

        Section tr(section(tree, "training"), "training");
        tr.get("epochs", c.training.epochs);
        tr.get("batch_size", c.training.batch_size);
        tr.get("learning_rate", c.training.hyper.learning_rate);
        tr.get("lr_decay", c.training.hyper.lr_decay);
        tr.get("huber_delta", c.training.hyper.huber_delta);
        tr.get("l2_weight", c.training.hyper.l2_weight);
        std::string penalty = c.training.hyper.penalty == nn::PenaltyForm::kSquared ? "squared" : "linear";
        tr.get("l2_form", penalty);
        if (penalty == "squared")
            c.training.hyper.penalty = nn::PenaltyForm::kSquared;
        else if (penalty == "linear")
            c.training.hyper.penalty = nn::PenaltyForm::kLinear;
        else
            throw ConfigError("config [training] l2_form: expected squared or linear");
        tr.get("pool_window", c.training.pool_window);
        tr.get_list("hidden", c.training.hidden);
        tr.get("seed", c.training.seed);
        tr.get_bool("keep_best_validation", c.training.keep_best_validation);
        tr.reject_unknown();
        try
        {
            c.training.validate();
        }
        catch (const ParameterError &e)
        {
            throw ConfigError(std::string("config [training]: ") + e.what());
        }

        Section ev(section(tree, "eval"), "eval");
        ev.get("trials", c.eval.trials);
        ev.get("seed", c.eval.seed);
        ev.get("snapshots", c.eval.snapshots);
        ev.get_list("music_grids", c.eval.music_grids);
        ev.get("grid_mode", c.eval.grid_mode);
        ev.get("bicnn_rmse_limit_m", c.eval.bicnn_rmse_limit_m);
        ev.get("runtime_ratio_limit", c.eval.runtime_ratio_limit);
        ev.reject_unknown();
        if (c.eval.grid_mode != "per-dim" && c.eval.grid_mode != "total")
            throw ConfigError("config [eval] grid_mode: expected per-dim or total");
        if (c.eval.trials < 1 || c.eval.snapshots < 1)
            throw ConfigError("config [eval]: trials and snapshots must be positive");
        return c;
    }

    ExperimentConfig load_experiment_config(const std::filesystem::path &path)
    {
        return parse_experiment_config(read_text(path));
    }

    std::string to_ini(const ExperimentConfig &c)
    {
        std::ostringstream s;
        s.precision(17);
        s << "[system]\n"
          << "carrier_frequency_hz = " << c.system.carrier_frequency_hz << '\n'
          << "bandwidth_hz = " << c.system.bandwidth_hz << '\n'
          << "num_antennas = " << c.system.num_antennas << '\n'
          << "transmit_power_dbm = " << c.system.transmit_power_dbm << '\n'
          << "noise_psd_dbm_hz = " << c.system.noise_psd_dbm_hz << '\n'
          << "tx_gain = " << c.system.tx_gain << '\n'
          << "rx_gain = " << c.system.rx_gain << "\n\n";
        s << "[dataset]\n"
          << "angle_min = " << c.dataset.angle_min << '\n'
          << "angle_max = " << c.dataset.angle_max << '\n'
          << "angle_step = " << c.dataset.angle_step << '\n'
          << "distance_min = " << c.dataset.distance_min << '\n'
          << "distance_max = " << c.dataset.distance_max << '\n'
          << "distance_step = " << c.dataset.distance_step << '\n'
          << "noise_enabled = " << (c.dataset.noise_enabled ? "true" : "false") << '\n'
          << "pathloss_enabled = " << (c.dataset.pathloss_enabled ? "true" : "false") << '\n'
          << "seed = " << c.dataset.seed << '\n'
          << "train_fraction = " << c.dataset.split_fractions[0] << '\n'
          << "validation_fraction = " << c.dataset.split_fractions[1] << '\n'
          << "test_fraction = " << c.dataset.split_fractions[2] << "\n\n";
        s << "[training]\n"
          << "epochs = " << c.training.epochs << '\n'
          << "batch_size = " << c.training.batch_size << '\n'
          << "learning_rate = " << c.training.hyper.learning_rate << '\n'
          << "lr_decay = " << c.training.hyper.lr_decay << '\n'
          << "huber_delta = " << c.training.hyper.huber_delta << '\n'
          << "l2_weight = " << c.training.hyper.l2_weight << '\n'
          << "l2_form = " << (c.training.hyper.penalty == nn::PenaltyForm::kSquared ? "squared" : "linear") << '\n'
          << "pool_window = " << c.training.pool_window << '\n'
          << "hidden = ";
        for (std::size_t i = 0; i < c.training.hidden.size(); ++i)
            s << (i ? "," : "") << c.training.hidden[i];
        s << '\n'
          << "seed = " << c.training.seed << '\n'
          << "keep_best_validation = " << (c.training.keep_best_validation ? "true" : "false") << "\n\n";
        s << "[eval]\n"
          << "trials = " << c.eval.trials << '\n'
          << "seed = " << c.eval.seed << '\n'
          << "snapshots = " << c.eval.snapshots << '\n'
          << "music_grids = ";
        for (std::size_t i = 0; i < c.eval.music_grids.size(); ++i)
            s << (i ? "," : "") << c.eval.music_grids[i];
        s << '\n'
          << "grid_mode = " << c.eval.grid_mode << '\n'
          << "bicnn_rmse_limit_m = " << c.eval.bicnn_rmse_limit_m << '\n'
          << "runtime_ratio_limit = " << c.eval.runtime_ratio_limit << '\n';
        return s.str();
    }

    std::uint64_t ExperimentConfig::hash() const
    {
        return fnv1a64(to_ini(*this));
    }

} // namespace nfloc
