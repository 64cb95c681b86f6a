// SPDX-License-Identifier: Apache-2.0
//
// nfisac: near-field sensing and communication simulation library
// Copyright (C) 2026 The nfisac authors
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

// Command line front end for the experiment runners.
//
//   nfisac <dof|correlation|beampattern|tradeoff|power|music|channels>
//          --scenario <file.json|paper-default> --out <dir> [--seed <int>]

#include "nfisac/errors.hpp"
#include "nfisac/experiments.hpp"
#include "nfisac/scenario.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <optional>

namespace
{
    struct CommonOptions
    {
        std::string scenario = "paper-default";
        std::string out = ".";
        std::optional<std::uint64_t> seed;
    };

    void add_common(CLI::App *cmd, CommonOptions &opts)
    {
        cmd->add_option("--scenario", opts.scenario, "Scenario JSON file, or paper-default")->capture_default_str();
        cmd->add_option("--out", opts.out, "Output directory")->capture_default_str();
        cmd->add_option("--seed", opts.seed, "Override the scenario rng_seed");
    }

    nfisac::Scenario resolve(const CommonOptions &opts)
    {
        nfisac::Scenario s = nfisac::load_scenario(opts.scenario);
        if (opts.seed)
            s.rng_seed = *opts.seed;
        return s;
    }
}

int main(int argc, char **argv)
{
    using namespace nfisac;

    CLI::App app{"nfisac: near-field ISAC experiment runners"};
    app.require_subcommand(1);

    CommonOptions opts;
    double snr_db = 20.0;
    int snapshots = 200;
    bool snr_set = false, snapshots_set = false;

    std::vector<std::pair<CLI::App *, std::function<std::vector<OutputFile>(const Scenario &)>>> commands;

    auto *dof = app.add_subcommand("dof", "Spatial DoF of a point-to-point link versus distance");
    commands.emplace_back(dof, [](const Scenario &s)
                          { return run_dof(s, default_dof_distances(s)); });

    auto *corr = app.add_subcommand("correlation", "Two-user channel correlation versus antenna count");
    commands.emplace_back(corr, [](const Scenario &s)
                          { return run_correlation(s, s.sweeps.antenna_counts); });

    auto *beam = app.add_subcommand("beampattern", "Transmit beampatterns over angle and range");
    commands.emplace_back(beam, [](const Scenario &s)
                          { return run_beampattern(s, s.sweeps.beampattern_rho, s.models); });

    auto *trade = app.add_subcommand("tradeoff", "Sum rate versus RCRB frontier");
    commands.emplace_back(trade, [](const Scenario &s)
                          { return run_tradeoff(s, s.sweeps.tradeoff_rho, s.sweeps.tradeoff_target_ranges_m); });

    auto *power = app.add_subcommand("power", "Minimum transmit power versus SINR threshold");
    commands.emplace_back(power, [](const Scenario &s)
                          { return run_power(s); });

    auto *music = app.add_subcommand("music", "2D-MUSIC localization on simulated echoes");
    music->add_option("--snr-db", snr_db, "Per-element SNR in dB (default from scenario)");
    music->add_option("--snapshots", snapshots, "Number of snapshots (default from scenario)");
    commands.emplace_back(music, [&](const Scenario &s)
                          {
                              snr_set = music->count("--snr-db") > 0;
                              snapshots_set = music->count("--snapshots") > 0;
                              return run_music(s, snr_set ? snr_db : s.music.snr_db,
                                               snapshots_set ? snapshots : s.music.snapshots); });

    auto *chan = app.add_subcommand("channels", "Export user channel vectors and paths");
    commands.emplace_back(chan, [](const Scenario &s)
                          { return run_channels(s); });

    for (auto &[cmd, _] : commands)
        add_common(cmd, opts);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ErrorCategory::invalid_argument);
    }

    for (auto &[cmd, runner] : commands)
    {
        if (!cmd->parsed())
            continue;
        try
        {
            const Scenario scenario = resolve(opts);
            const auto files = runner(scenario);
            write_outputs(opts.out, files);
            for (const auto &f : files)
                std::cout << opts.out << "/" << f.name << "\n";
            return 0;
        }
        catch (const Error &e)
        {
            std::cerr << "error[" << category_name(e.category()) << "] " << cmd->get_name() << ": " << e.what()
                      << "\n";
            return static_cast<int>(e.category());
        }
        catch (const std::exception &e)
        {
            std::cerr << "error[internal] " << cmd->get_name() << ": " << e.what() << "\n";
            return 1;
        }
    }
    return 0;
}
