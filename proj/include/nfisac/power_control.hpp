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

#ifndef NFISAC_POWER_CONTROL_HPP
#define NFISAC_POWER_CONTROL_HPP

#include "nfisac/beamforming.hpp"
#include "nfisac/channel.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nfisac
{
    // Fixed beam directions; only stream powers are optimized.
    // gains(k, j) = |h_k^H w_j|^2 for users k < K, gains(K, j) = |a_nf(target)^H w_j|^2.
    // Column K is the sensing stream.
    struct PowerProblem
    {
        Eigen::MatrixXd gains;
        double sinr_threshold = 1.0;     // linear
        double target_power_floor = 0.0; // W
        double noise_power = 1.0;        // W

        int num_users() const { return int(gains.rows()) - 1; }
        int num_streams() const { return int(gains.cols()); }

        void validate() const;
    };

    struct Infeasibility
    {
        double spectral_radius = 0.0; // of gamma * D^-1 * (user cross-gain matrix)
        int row = -1;                 // constraint that cannot be met
        std::string constraint;
    };

    struct PowerSolution
    {
        Eigen::VectorXd powers; // K user streams then the sensing stream
        double total = 0.0;
        bool feasible = false;
        std::vector<std::string> binding;
        std::optional<Infeasibility> certificate;
    };

    // Gains against the true near-field channels; beam directions are ZF (under `model`) plus the sensing beam.
    PowerProblem build_power_problem(const ArrayGeometry &geom, std::span<const UserChannel> true_channels,
                                     const PolarPoint &target, BeamDesign model, double sinr_threshold,
                                     double target_power_floor, double noise_power, bool amplitude_aware = false);

    // Gains for arbitrary beams (columns), evaluated against `true_channels` and the target response.
    Eigen::MatrixXd stream_gains(std::span<const cvec> true_channels, const cvec &target_response, const cmat &beams);

    // Minimizes sum(p) s.t. p_k G_kk - gamma sum_{j!=k} p_j G_kj >= gamma sigma^2, sum_j p_j G_Kj >= Gamma, p >= 0.
    // Exact: enumerates every vertex of the feasible polyhedron.
    PowerSolution min_power(const PowerProblem &problem);

    // Max |eigenvalue| of gamma * D^-1 * F over the user block (F = off-diagonal user gains).
    double interference_spectral_radius(const PowerProblem &problem);

    struct PowerSweepRow
    {
        double gamma_db = 0.0;
        double total_power = 0.0;
        bool feasible = false;
    };

    std::vector<PowerSweepRow> power_sweep(const ArrayGeometry &geom, std::span<const UserChannel> true_channels,
                                           const PolarPoint &target, BeamDesign model,
                                           std::span<const double> gamma_db, double target_power_floor,
                                           double noise_power, bool amplitude_aware = false);
}

#endif
