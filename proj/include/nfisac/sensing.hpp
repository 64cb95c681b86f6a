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

#ifndef NFISAC_SENSING_HPP
#define NFISAC_SENSING_HPP

#include "nfisac/beamforming.hpp"
#include "nfisac/geometry.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nfisac
{
    struct FocusingDerivatives
    {
        cvec d_angle; // da/dtheta
        cvec d_range; // da/dr
    };

    // Analytic derivatives of the phase-only focusing vector.
    FocusingDerivatives focusing_derivatives(const ArrayGeometry &geom, const PolarPoint &p);

    // Monostatic echo: Y = beta b(p) a(p)^H X + Z with known waveform X, X X^H / L = R.
    struct EchoModel
    {
        PolarPoint target;
        std::complex<double> reflection_gain{1.0, 0.0};
        int snapshots = 1;
        double noise_power = 1.0;
        TransmitCovariance tx_covariance;
        ArrayGeometry tx_geom;
        ArrayGeometry rx_geom;
    };

    // Fisher information over (angle, range, Re beta, Im beta).
    struct FimResult
    {
        Eigen::Matrix4d fim = Eigen::Matrix4d::Zero();
        bool identifiable = false;
        double rcrb_angle = INFINITY; // rad
        double rcrb_range = INFINITY; // m
    };

    // FIM_ij = (2L / sigma^2) Re tr(dG_i^H dG_j R). A numerically singular FIM is reported with
    // identifiable = false and infinite bounds.
    FimResult fisher_information(const EchoModel &model);

    enum class RangeSampling
    {
        uniform_range,
        inverse_range
    };

    struct PolarGrid
    {
        std::vector<double> angles; // rad, uniform in sin(angle)
        std::vector<double> ranges; // m, strictly increasing; inverse_range ends with +inf
        RangeSampling sampling = RangeSampling::inverse_range;
    };

    // Angles at the midpoints of angle_count equal cells of sin(angle) in [-1, 1].
    // Ranges from r_min to r_max (default: Rayleigh distance), uniform in r or in 1/r.
    // Inverse sampling appends one plane-wave entry at infinite range.
    PolarGrid polar_grid(const ArrayGeometry &geom, int angle_count, int range_count, double r_min,
                         RangeSampling sampling, std::optional<double> r_max = std::nullopt);

    struct GridPeak
    {
        int row = 0;
        int col = 0;
        double value = 0.0;
    };

    // Local maxima over 3x3 neighborhoods, strongest first. Ties go to the larger value,
    // then to the lexicographically smaller (row, col).
    std::vector<GridPeak> find_peaks(const Eigen::MatrixXd &values, int max_peaks);

    struct MusicResult
    {
        std::vector<PolarPoint> estimates;
        std::vector<GridPeak> peaks;
        Eigen::MatrixXd spectrum; // angles x ranges
        std::vector<std::string> warnings;
    };

    // 2D-MUSIC over a polar grid.
    MusicResult music_2d(const cmat &snapshots, int num_sources, const PolarGrid &grid, const ArrayGeometry &geom);

    // Snapshots of uncorrelated unit-power sources, x = sum_k sqrt(N) a(p_k) s_k + n, with
    // per-element SNR snr_db. Deterministic in (seed, stream).
    cmat simulate_snapshots(const ArrayGeometry &geom, std::span<const PolarPoint> sources, double snr_db,
                            int snapshots, std::uint64_t seed, std::uint64_t stream = 0);
}

#endif
