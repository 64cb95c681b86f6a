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

#include "nfisac/power_control.hpp"
#include "nfisac/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <limits>

namespace nfisac
{
    void PowerProblem::validate() const
    {
        if (gains.rows() < 2 || gains.rows() != gains.cols())
            throw InvalidArgument("PowerProblem: gain matrix must be (K+1) x (K+1) with K >= 1");
        if ((gains.array() < 0.0).any() || !gains.allFinite())
            throw InvalidArgument("PowerProblem: gains must be finite and non-negative");
        for (int k = 0; k < num_users(); ++k)
            if (!(gains(k, k) > 0.0))
                throw InvalidArgument("PowerProblem: direct gain of user " + std::to_string(k) + " must be positive");
        if (!(sinr_threshold > 0.0))
            throw InvalidArgument("PowerProblem: SINR threshold must be positive");
        if (!(target_power_floor >= 0.0))
            throw InvalidArgument("PowerProblem: target power floor must be non-negative");
        if (!(noise_power > 0.0))
            throw InvalidArgument("PowerProblem: noise power must be positive");
    }

    Eigen::MatrixXd stream_gains(std::span<const cvec> true_channels, const cvec &target_response, const cmat &beams)
    {
        const int k_users = int(true_channels.size());
        Eigen::MatrixXd g(k_users + 1, beams.cols());
        for (int j = 0; j < beams.cols(); ++j)
        {
            for (int k = 0; k < k_users; ++k)
                g(k, j) = std::norm(true_channels[k].dot(beams.col(j)));
            g(k_users, j) = std::norm(target_response.dot(beams.col(j)));
        }
        return g;
    }

    PowerProblem build_power_problem(const ArrayGeometry &geom, std::span<const UserChannel> true_channels,
                                     const PolarPoint &target, BeamDesign model, double sinr_threshold,
                                     double target_power_floor, double noise_power, bool amplitude_aware)
    {
        std::vector<cvec> truth, design;
        for (const auto &c : true_channels)
        {
            truth.push_back(c.vector);
            design.push_back(with_model(c, geom, design_channel_model(model), amplitude_aware).vector);
        }

        const Precoder zf = zf_precoder(std::span<const cvec>(design), model);
        cmat beams(geom.num_elements(), zf.num_streams() + 1);
        beams.leftCols(zf.num_streams()) = zf.columns;
        beams.rightCols(1) = sensing_beam(geom, target, model);

        const cvec target_response = nearfield_focusing(geom, target, amplitude_aware).entries;

        PowerProblem out{stream_gains(truth, target_response, beams), sinr_threshold, target_power_floor, noise_power};
        out.validate();
        return out;
    }

    double interference_spectral_radius(const PowerProblem &problem)
    {
        const int k_users = problem.num_users();
        Eigen::MatrixXd m(k_users, k_users);
        for (int k = 0; k < k_users; ++k)
            for (int j = 0; j < k_users; ++j)
                m(k, j) = k == j ? 0.0 : problem.sinr_threshold * problem.gains(k, j) / problem.gains(k, k);
        return Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues().cwiseAbs().maxCoeff();
    }

    namespace
    {
        // Constraint rows A p >= b: K SINR rows, the target row, then n non-negativity rows.
        struct ConstraintSystem
        {
            Eigen::MatrixXd a;
            Eigen::VectorXd b;
            std::vector<std::string> names;
        };

        ConstraintSystem constraints(const PowerProblem &pb)
        {
            const int k_users = pb.num_users();
            const int n = pb.num_streams();
            ConstraintSystem cs{Eigen::MatrixXd::Zero(2 * n, n), Eigen::VectorXd::Zero(2 * n), {}};
            for (int k = 0; k < k_users; ++k)
            {
                for (int j = 0; j < n; ++j)
                    cs.a(k, j) = j == k ? pb.gains(k, k) : -pb.sinr_threshold * pb.gains(k, j);
                cs.b(k) = pb.sinr_threshold * pb.noise_power;
                cs.names.push_back("sinr[" + std::to_string(k) + "]");
            }
            cs.a.row(k_users) = pb.gains.row(k_users);
            cs.b(k_users) = pb.target_power_floor;
            cs.names.push_back("target");
            for (int j = 0; j < n; ++j)
            {
                cs.a(n + j, j) = 1.0;
                cs.names.push_back("nonneg[" + std::to_string(j) + "]");
            }
            return cs;
        }

        double slack_tolerance(const ConstraintSystem &cs, int row, const Eigen::VectorXd &p)
        {
            return 1e-9 * (std::abs(cs.b(row)) + cs.a.row(row).cwiseAbs().dot(p.cwiseAbs())) + 1e-300;
        }

        bool satisfies(const ConstraintSystem &cs, const Eigen::VectorXd &p)
        {
            for (int i = 0; i < cs.a.rows(); ++i)
                if (cs.a.row(i).dot(p) < cs.b(i) - slack_tolerance(cs, i, p))
                    return false;
            return true;
        }

        // Calls fn(indices) for every size-k subset of {0, ..., m-1} in lexicographic order.
        template <typename Fn>
        void for_each_subset(int m, int k, Fn &&fn)
        {
            std::vector<int> idx(k);
            for (int i = 0; i < k; ++i)
                idx[i] = i;
            while (true)
            {
                fn(idx);
                int i = k - 1;
                while (i >= 0 && idx[i] == m - k + i)
                    --i;
                if (i < 0)
                    return;
                ++idx[i];
                for (int j = i + 1; j < k; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
        }
    }

    PowerSolution min_power(const PowerProblem &problem)
    {
        problem.validate();
        const int n = problem.num_streams();
        if (n > 8)
            throw InvalidArgument("min_power: vertex enumeration supports at most 7 users");

        const ConstraintSystem cs = constraints(problem);
        const int m = int(cs.a.rows());

        PowerSolution best;
        best.total = std::numeric_limits<double>::infinity();

        for_each_subset(m, n, [&](const std::vector<int> &active)
                        {
                            Eigen::MatrixXd a_s(n, n);
                            Eigen::VectorXd b_s(n);
                            for (int i = 0; i < n; ++i)
                            {
                                a_s.row(i) = cs.a.row(active[i]);
                                b_s(i) = cs.b(active[i]);
                            }
                            Eigen::FullPivLU<Eigen::MatrixXd> lu(a_s);
                            if (lu.rank() < n)
                                return;
                            Eigen::VectorXd p = lu.solve(b_s);
                            if (!p.allFinite())
                                return;
                            // clamp round-off on the non-negativity face
                            for (int j = 0; j < n; ++j)
                                if (p(j) < 0.0 && p(j) > -1e-12 * (p.cwiseAbs().maxCoeff() + 1e-300))
                                    p(j) = 0.0;
                            if (!satisfies(cs, p))
                                return;
                            const double total = p.sum();
                            if (total < best.total)
                            {
                                best.total = total;
                                best.powers = p;
                                best.feasible = true;
                            }
                        });

        if (!best.feasible)
        {
            Infeasibility cert;
            cert.spectral_radius = interference_spectral_radius(problem);
            if (cert.spectral_radius >= 1.0)
            {
                // the user row with the largest normalized interference load
                double worst = -1.0;
                for (int k = 0; k < problem.num_users(); ++k)
                {
                    double load = 0.0;
                    for (int j = 0; j < problem.num_users(); ++j)
                        if (j != k)
                            load += problem.sinr_threshold * problem.gains(k, j) / problem.gains(k, k);
                    if (load > worst)
                        worst = load, cert.row = k;
                }
            }
            else
            {
                cert.row = problem.num_users();
            }
            cert.constraint = cs.names[cert.row];
            best.total = std::numeric_limits<double>::infinity();
            best.powers = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
            best.certificate = cert;
            return best;
        }

        for (int i = 0; i < m; ++i)
            if (std::abs(cs.a.row(i).dot(best.powers) - cs.b(i)) <= slack_tolerance(cs, i, best.powers) + 1e-12 * best.total)
                best.binding.push_back(cs.names[i]);
        return best;
    }

    std::vector<PowerSweepRow> power_sweep(const ArrayGeometry &geom, std::span<const UserChannel> true_channels,
                                           const PolarPoint &target, BeamDesign model,
                                           std::span<const double> gamma_db, double target_power_floor,
                                           double noise_power, bool amplitude_aware)
    {
        std::vector<PowerSweepRow> rows;
        if (gamma_db.empty())
            return rows;

        PowerProblem pb = build_power_problem(geom, true_channels, target, model, 1.0, target_power_floor,
                                              noise_power, amplitude_aware);
        for (double g : gamma_db)
        {
            pb.sinr_threshold = std::pow(10.0, g / 10.0);
            const PowerSolution sol = min_power(pb);
            rows.push_back({g, sol.total, sol.feasible});
        }
        return rows;
    }
}
