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

#include "nfisac/beamforming.hpp"
#include "nfisac/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <string>

namespace nfisac
{
    std::string_view to_string(BeamDesign design)
    {
        return design == BeamDesign::nfbf ? "NFBF" : "FFBF";
    }

    BeamDesign beam_design_from_string(std::string_view tag)
    {
        if (tag == "NFBF" || tag == "nfbf")
            return BeamDesign::nfbf;
        if (tag == "FFBF" || tag == "ffbf")
            return BeamDesign::ffbf;
        throw InvalidArgument("unknown beam design '" + std::string(tag) + "' (expected NFBF or FFBF)");
    }

    namespace
    {
        void check_unit_norm(const cvec &v, const char *what)
        {
            if (std::abs(v.norm() - 1.0) > 1e-9)
                throw InvalidArgument(std::string(what) + " must have unit norm");
        }
    }

    Precoder zf_precoder(std::span<const cvec> channels, BeamDesign model, double total_power)
    {
        const int k_users = int(channels.size());
        if (k_users == 0)
            throw InvalidArgument("zf_precoder: no channels");
        const int n_t = int(channels[0].size());
        if (k_users > n_t)
            throw InvalidArgument("zf_precoder: more users than transmit antennas");

        cmat stack(k_users, n_t);
        for (int k = 0; k < k_users; ++k)
        {
            if (channels[k].size() != n_t)
                throw InvalidArgument("zf_precoder: channel length mismatch");
            stack.row(k) = channels[k].adjoint();
        }

        const Eigen::VectorXd sv = Eigen::JacobiSVD<cmat>(stack).singularValues();
        const double cond = sv(k_users - 1) > 0.0 ? sv(0) / sv(k_users - 1) : INFINITY;
        if (!(cond < 1e10))
        {
            double worst = 0.0;
            int wi = 0, wj = 0;
            for (int i = 0; i < k_users; ++i)
                for (int j = i + 1; j < k_users; ++j)
                {
                    const double c = channel_correlation(channels[i], channels[j]);
                    if (c > worst)
                        worst = c, wi = i, wj = j;
                }
            std::ostringstream msg;
            msg << "zf_precoder: stacked channel matrix is singular (condition number " << cond << "); users " << wi
                << " and " << wj << " have squared channel correlation " << worst;
            throw SingularChannelError(msg.str(), worst);
        }

        const cmat gram = stack * stack.adjoint();
        cmat w = stack.adjoint() * gram.ldlt().solve(cmat::Identity(k_users, k_users));
        for (int k = 0; k < k_users; ++k)
            w.col(k).normalize();

        return {std::move(w), std::vector<double>(k_users, total_power / k_users), model};
    }

    Precoder zf_precoder(std::span<const UserChannel> channels, BeamDesign model, double total_power)
    {
        std::vector<cvec> vecs;
        vecs.reserve(channels.size());
        for (const auto &c : channels)
            vecs.push_back(c.vector);
        return zf_precoder(std::span<const cvec>(vecs), model, total_power);
    }

    cvec sensing_beam(const ArrayGeometry &geom, const PolarPoint &target, BeamDesign model)
    {
        target.validate();
        if (model == BeamDesign::nfbf)
            return nearfield_focusing(geom, target).entries;
        return farfield_steering(geom, target.angle).entries;
    }

    TransmitCovariance TransmitCovariance::from_factor(cmat factor)
    {
        TransmitCovariance out;
        out.matrix_ = factor * factor.adjoint();
        out.factor_ = std::move(factor);
        return out;
    }

    TransmitCovariance TransmitCovariance::from_matrix(const cmat &matrix)
    {
        if (matrix.rows() != matrix.cols())
            throw InvalidArgument("TransmitCovariance: matrix must be square");
        const double scale = std::max(matrix.norm(), 1e-300);
        if ((matrix - matrix.adjoint()).norm() > 1e-10 * scale)
            throw InvalidArgument("TransmitCovariance: matrix is not Hermitian");

        Eigen::SelfAdjointEigenSolver<cmat> eig(matrix);
        const Eigen::VectorXd &lambda = eig.eigenvalues();
        const double tol = 1e-10 * std::max(lambda.cwiseAbs().maxCoeff(), 1e-300);
        if (lambda.minCoeff() < -tol)
            throw InvalidArgument("TransmitCovariance: matrix is not positive semidefinite");

        std::vector<int> keep;
        for (int i = 0; i < lambda.size(); ++i)
            if (lambda(i) > tol)
                keep.push_back(i);
        cmat factor(matrix.rows(), keep.size());
        for (size_t c = 0; c < keep.size(); ++c)
            factor.col(c) = eig.eigenvectors().col(keep[c]) * std::sqrt(lambda(keep[c]));

        TransmitCovariance out;
        out.matrix_ = matrix;
        out.factor_ = std::move(factor);
        return out;
    }

    TransmitCovariance TransmitCovariance::scaled(double c) const
    {
        if (!(c >= 0.0))
            throw InvalidArgument("TransmitCovariance::scaled: factor must be non-negative");
        TransmitCovariance out;
        out.factor_ = factor_ * std::sqrt(c);
        out.matrix_ = matrix_ * c;
        return out;
    }

    TransmitCovariance isac_covariance(const Precoder &precoder, const cvec &sense, double rho, double total_power)
    {
        if (!(rho >= 0.0 && rho <= 1.0))
            throw InvalidArgument("isac_covariance: rho must lie in [0, 1]");
        if (!(total_power >= 0.0))
            throw InvalidArgument("isac_covariance: total power must be non-negative");
        check_unit_norm(sense, "isac_covariance: sensing beam");

        const int k_users = precoder.num_streams();
        if (sense.size() != precoder.columns.rows())
            throw InvalidArgument("isac_covariance: sensing beam length mismatch");

        cmat factor(sense.size(), k_users + 1);
        const double user_amp = std::sqrt((1.0 - rho) * total_power / k_users);
        for (int k = 0; k < k_users; ++k)
        {
            check_unit_norm(precoder.columns.col(k), "isac_covariance: precoder column");
            factor.col(k) = user_amp * precoder.columns.col(k);
        }
        factor.col(k_users) = std::sqrt(rho * total_power) * sense;
        return TransmitCovariance::from_factor(std::move(factor));
    }

    BeampatternGrid beampattern(const TransmitCovariance &cov, const ArrayGeometry &geom,
                                std::span<const double> angles, std::span<const double> ranges, bool amplitude_aware)
    {
        if (cov.size() != geom.num_elements())
            throw InvalidArgument("beampattern: covariance size does not match the array");

        BeampatternGrid out{{angles.begin(), angles.end()},
                            {ranges.begin(), ranges.end()},
                            Eigen::MatrixXd(angles.size(), ranges.size())};

        for (size_t i = 0; i < angles.size(); ++i)
            for (size_t j = 0; j < ranges.size(); ++j)
                out.power(i, j) = cov.power_toward(array_response(geom, angles[i], ranges[j], amplitude_aware));

        const double peak = out.power.size() ? out.power.maxCoeff() : 0.0;
        if (peak > 0.0)
            out.power /= peak;
        return out;
    }

    LinkBudget sinr_and_rate(std::span<const cvec> channels, const Precoder &precoder, const cvec &sense,
                             double rho, double total_power, double noise_power)
    {
        if (!(noise_power > 0.0))
            throw InvalidArgument("sinr_and_rate: noise power must be positive");
        if (!(rho >= 0.0 && rho <= 1.0))
            throw InvalidArgument("sinr_and_rate: rho must lie in [0, 1]");
        const int k_users = precoder.num_streams();
        if (int(channels.size()) != k_users)
            throw InvalidArgument("sinr_and_rate: number of channels differs from number of precoder streams");

        const double p_user = (1.0 - rho) * total_power / k_users;
        const double p_sense = rho * total_power;

        LinkBudget out;
        out.sinr.resize(k_users);
        for (int k = 0; k < k_users; ++k)
        {
            const cvec &h = channels[k];
            if (h.size() != precoder.columns.rows() || h.size() != sense.size())
                throw InvalidArgument("sinr_and_rate: dimension mismatch");
            double interference = p_sense * std::norm(h.dot(sense)) + noise_power;
            for (int j = 0; j < k_users; ++j)
                if (j != k)
                    interference += p_user * std::norm(h.dot(precoder.columns.col(j)));
            out.sinr[k] = p_user * std::norm(h.dot(precoder.columns.col(k))) / interference;
            out.sum_rate += std::log2(1.0 + out.sinr[k]);
        }
        return out;
    }
}
