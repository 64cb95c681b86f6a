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

#ifndef NFISAC_SCENARIO_HPP
#define NFISAC_SCENARIO_HPP

#include "nfisac/beamforming.hpp"
#include "nfisac/channel.hpp"
#include "nfisac/geometry.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nfisac
{
    struct ArraySpec
    {
        int num_elements = 256;
        std::optional<double> spacing_m; // half wavelength when empty
    };

    struct UserSpec
    {
        PolarPoint location;
        int num_scatterers = 2;             // placed at random when `scatterers` is empty
        std::vector<PolarPoint> scatterers; // explicit placement
    };

    // Sweep grids used by the experiment runners when the caller does not override them.
    struct SweepSpec
    {
        double dof_distance_min_m = 1.0;
        std::optional<double> dof_distance_max_m; // 10x Rayleigh distance when empty
        int dof_points = 30;
        std::vector<int> antenna_counts = {16, 32, 64, 128, 256, 512, 1024};
        std::vector<double> beampattern_rho = {0.0, 0.5, 1.0};
        int beampattern_angle_count = 181;
        int beampattern_range_count = 60;
        double beampattern_r_min_m = 1.0;
        double beampattern_r_max_m = 100.0;
        std::vector<double> tradeoff_rho = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
        std::vector<double> tradeoff_target_ranges_m = {5.0, 10.0, 20.0};
    };

    struct MusicSpec
    {
        double snr_db = 20.0;
        int snapshots = 200;
        int angle_count = 256;
        int range_count = 32;
        double r_min_m = 2.0;
        std::vector<PolarPoint> sources; // the scenario target when empty
    };

    struct Scenario
    {
        double carrier_freq_hz = 30e9;
        ArraySpec tx_array;
        ArraySpec rx_array;
        std::vector<UserSpec> users;
        double scatterer_power_db = -10.0;
        PolarPoint target;
        std::complex<double> reflection_gain{1.0, 0.0};
        double total_power_w = 1.0;
        double noise_power_w = 1.0;
        double rho = 0.5;
        std::vector<double> gamma_db;
        std::optional<double> target_power_floor_w; // 0.1 * noise * N_t when empty
        int snapshots = 64;                         // CRB snapshots
        double dof_threshold_db = -10.0;
        bool amplitude_aware = false;
        std::vector<BeamDesign> models = {BeamDesign::nfbf, BeamDesign::ffbf};
        std::uint64_t rng_seed = 1;
        SweepSpec sweeps;
        MusicSpec music;

        ArrayGeometry tx_geometry() const;
        ArrayGeometry rx_geometry() const;
        double target_power_floor() const;

        // Throws ValidationError naming the offending key.
        void validate() const;
    };

    // 256 + 256 element ULAs at 30 GHz, users at (0 deg, 5 m) and (0 deg, 15 m) with two scatterers each,
    // target at (45 deg, 5 m).
    Scenario paper_default_scenario();

    // Reads a JSON scenario; "paper-default" selects the built-in one. Unknown keys are rejected.
    // Throws NotFoundError, ParseError or ValidationError.
    Scenario load_scenario(const std::string &path);
    Scenario parse_scenario(const std::string &json_text);
    std::string scenario_to_json(const Scenario &scenario);

    // FNV-1a 64 of the canonical JSON form.
    std::uint64_t scenario_hash(const Scenario &scenario);

    // Scatterer angles uniform in +-(10..60) deg with a 5 deg guard around every placed path,
    // ranges uniform in [5, 50] m. Deterministic in rng_seed.
    std::vector<std::vector<PolarPoint>> place_scatterers(const Scenario &scenario);

    // True (near-field) user channels of the scenario.
    std::vector<UserChannel> build_user_channels(const Scenario &scenario);
}

#endif
