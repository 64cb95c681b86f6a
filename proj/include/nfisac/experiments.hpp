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

#ifndef NFISAC_EXPERIMENTS_HPP
#define NFISAC_EXPERIMENTS_HPP

#include "nfisac/beamforming.hpp"
#include "nfisac/power_control.hpp"
#include "nfisac/scenario.hpp"
#include "nfisac/sensing.hpp"

#include <span>
#include <string>
#include <vector>

namespace nfisac
{
    struct OutputFile
    {
        std::string name;
        std::string contents;
    };

    // Writes every file into `dir` (created if missing). Throws IoError.
    void write_outputs(const std::string &dir, std::span<const OutputFile> files);

    // ---- spatial DoF of a point-to-point link versus separation

    struct DofPoint
    {
        double distance_m = 0.0;
        int dof = 0;
    };

    // Log-spaced from sweeps.dof_distance_min_m to dof_distance_max_m (default 10x Rayleigh).
    std::vector<double> default_dof_distances(const Scenario &scenario);
    std::vector<DofPoint> dof_curve(const Scenario &scenario, std::span<const double> distances);
    std::vector<OutputFile> run_dof(const Scenario &scenario, std::span<const double> distances);

    // ---- squared correlation of two LoS-only users versus array size

    struct CorrelationPoint
    {
        int num_antennas = 0;
        double plane = 0.0;
        double spherical = 0.0;
    };

    // Uses the first two scenario users.
    std::vector<CorrelationPoint> correlation_curve(const Scenario &scenario, std::span<const int> antenna_counts);
    std::vector<OutputFile> run_correlation(const Scenario &scenario, std::span<const int> antenna_counts);

    // ---- transmit beampatterns

    struct BeampatternPanel
    {
        BeamDesign model = BeamDesign::nfbf;
        double rho = 0.0;
        BeampatternGrid grid;
    };

    std::vector<BeampatternPanel> beampattern_panels(const Scenario &scenario, std::span<const double> rho_list,
                                                     std::span<const BeamDesign> models);
    std::vector<OutputFile> run_beampattern(const Scenario &scenario, std::span<const double> rho_list,
                                            std::span<const BeamDesign> models);

    // ---- rate versus RCRB trade-off

    struct FrontierPoint
    {
        double rho = 0.0;
        double sum_rate = 0.0;   // bit/s/Hz
        double rcrb_angle = 0.0; // rad
        double rcrb_range = 0.0; // m
        bool identifiable = false;
    };

    struct Frontier
    {
        BeamDesign model = BeamDesign::nfbf;
        double target_range_m = 0.0;
        std::vector<FrontierPoint> points; // in rho order
    };

    // One frontier per (model, target range); the target keeps the scenario angle.
    std::vector<Frontier> tradeoff_frontiers(const Scenario &scenario, std::span<const double> rho_grid,
                                             std::span<const double> target_ranges);
    std::vector<OutputFile> run_tradeoff(const Scenario &scenario, std::span<const double> rho_grid,
                                         std::span<const double> target_ranges);

    // ---- minimum transmit power versus SINR threshold

    struct PowerTableRow
    {
        double gamma_db = 0.0;
        double total_nfbf = 0.0;
        double total_ffbf = 0.0;
        bool feasible_nfbf = false;
        bool feasible_ffbf = false;
    };

    std::vector<PowerTableRow> power_table(const Scenario &scenario);
    std::vector<OutputFile> run_power(const Scenario &scenario);

    // ---- channel export

    // channels.csv: one row per element, user and design model, complex entries as (re, im) pairs.
    std::vector<OutputFile> run_channels(const Scenario &scenario);

    // ---- 2D-MUSIC localization

    struct MusicRun
    {
        PolarGrid grid;
        std::vector<PolarPoint> sources;
        MusicResult result;
    };

    // Sources default to the scenario target. Noise drawn from (rng_seed, trial).
    MusicRun music_run(const Scenario &scenario, double snr_db, int snapshots, std::uint64_t trial = 0);
    std::vector<OutputFile> run_music(const Scenario &scenario, double snr_db, int snapshots);
}

#endif
