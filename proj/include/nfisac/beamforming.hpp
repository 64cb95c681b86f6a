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

#ifndef NFISAC_BEAMFORMING_HPP
#define NFISAC_BEAMFORMING_HPP

#include "nfisac/channel.hpp"
#include "nfisac/geometry.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace nfisac
{
    // Which propagation model the transmitter designs its beams with.
    enum class BeamDesign
    {
        nfbf, // near-field (spherical wave)
        ffbf  // far-field (plane wave)
    };

    std::string_view to_string(BeamDesign design);
    BeamDesign beam_design_from_string(std::string_view tag);

    // Channel model the transmitter believes in under a given design.
    inline ChannelModel design_channel_model(BeamDesign d)
    {
        return d == BeamDesign::nfbf ? ChannelModel::near_field : ChannelModel::far_field;
    }

    struct Precoder
    {
        cmat columns;                         // N_t x K, unit-norm columns, one per user
        std::vector<double> power_allocation; // watts per column
        BeamDesign model = BeamDesign::nfbf;

        int num_streams() const { return int(columns.cols()); }
    };

    // Zero-forcing precoder: normalized columns of the right pseudo-inverse of [h_1^H; ...; h_K^H],
    // equal power split of `total_power`.
    // Throws SingularChannelError when the stack has condition number >= 1e10.
    Precoder zf_precoder(std::span<const cvec> channels, BeamDesign model = BeamDesign::nfbf,
                         double total_power = 1.0);
    Precoder zf_precoder(std::span<const UserChannel> channels, BeamDesign model = BeamDesign::nfbf,
                         double total_power = 1.0);

    // NFBF focuses on the target point, FFBF steers toward its angle only.
    cvec sensing_beam(const ArrayGeometry &geom, const PolarPoint &target, BeamDesign model);

    // Positive semidefinite transmit covariance kept together with a factor F (R = F F^H).
    class TransmitCovariance
    {
    public:
        TransmitCovariance() = default;

        static TransmitCovariance from_factor(cmat factor);

        // Checks Hermitian symmetry and PSD (tolerance 1e-10 relative to the largest eigenvalue).
        static TransmitCovariance from_matrix(const cmat &matrix);

        const cmat &matrix() const { return matrix_; }
        const cmat &factor() const { return factor_; }
        double total_power() const { return matrix_.trace().real(); }
        int size() const { return int(matrix_.rows()); }

        // a^H R a
        double power_toward(const cvec &a) const { return (factor_.adjoint() * a).squaredNorm(); }

        TransmitCovariance scaled(double c) const;

    private:
        cmat factor_;
        cmat matrix_;
    };

    // R = (1 - rho) R_comm + rho P s s^H, with R_comm the precoder's equal-power covariance at budget P.
    TransmitCovariance isac_covariance(const Precoder &precoder, const cvec &sense, double rho, double total_power);

    struct BeampatternGrid
    {
        std::vector<double> angles; // rad
        std::vector<double> ranges; // m
        Eigen::MatrixXd power;      // angles x ranges, peak normalized to 1
    };

    // Power a_nf^H R a_nf on the angle x range lattice, always with the exact near-field response.
    BeampatternGrid beampattern(const TransmitCovariance &cov, const ArrayGeometry &geom,
                                std::span<const double> angles, std::span<const double> ranges,
                                bool amplitude_aware = false);

    struct LinkBudget
    {
        std::vector<double> sinr;
        double sum_rate = 0.0; // bit/s/Hz
    };

    // SINR_k = p_k |h_k^H w_k|^2 / (sum_{j!=k} p_j |h_k^H w_j|^2 + rho P |h_k^H s|^2 + sigma^2),
    // p_k = (1 - rho) P / K. `channels` are the true channels seen by the users.
    LinkBudget sinr_and_rate(std::span<const cvec> channels, const Precoder &precoder, const cvec &sense,
                             double rho, double total_power, double noise_power);
}

#endif
