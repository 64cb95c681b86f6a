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

#include "../oracles.hpp"
#include "nfisac/errors.hpp"
#include "nfisac/power_control.hpp"
#include "nfisac/scenario.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace nfisac;
using Catch::Approx;

namespace
{
    PowerProblem paper_problem(BeamDesign model, double gamma_db)
    {
        const Scenario s = paper_default_scenario();
        const auto truth = build_user_channels(s);
        return build_power_problem(s.tx_geometry(), truth, s.target, model, std::pow(10.0, gamma_db / 10.0),
                                   s.target_power_floor(), s.noise_power_w);
    }

    bool satisfies(const PowerProblem &pb, const Eigen::VectorXd &p, double tol)
    {
        const int k_users = pb.num_users();
        for (int k = 0; k < k_users; ++k)
        {
            double interf = pb.noise_power;
            for (int j = 0; j < pb.num_streams(); ++j)
                if (j != k)
                    interf += pb.gains(k, j) * p(j);
            if (pb.gains(k, k) * p(k) < pb.sinr_threshold * interf * (1 - tol))
                return false;
        }
        return pb.gains.row(k_users).dot(p) >= pb.target_power_floor * (1 - tol) && p.minCoeff() >= -tol;
    }
}

TEST_CASE("stream gains", "[power]")
{
    const PowerProblem nf = paper_problem(BeamDesign::nfbf, 0.0);
    const PowerProblem ff = paper_problem(BeamDesign::ffbf, 0.0);
    REQUIRE(nf.gains.rows() == 3);
    REQUIRE(nf.gains.cols() == 3);
    // zero-forcing nulls, relative to the served user's own gain
    CHECK(nf.gains(0, 1) / nf.gains(0, 0) <= 1e-10);
    CHECK(nf.gains(1, 0) / nf.gains(1, 1) <= 1e-10);
    // plane-wave design loses beamforming gain on the true channel
    CHECK(ff.gains(0, 0) < nf.gains(0, 0));
    CHECK(ff.gains(1, 1) < nf.gains(1, 1));

    const std::vector<cvec> h = {cvec::Random(8), cvec::Random(8)};
    const cvec t = cvec::Random(8);
    cmat beams = cmat::Random(8, 3);
    const Eigen::MatrixXd g1 = stream_gains(h, t, beams);
    beams.col(1) *= std::polar(1.0, 0.7);
    CHECK((stream_gains(h, t, beams) - g1).norm() < 1e-12);
}

TEST_CASE("only the target constraint binds as the threshold vanishes", "[power]")
{
    Eigen::MatrixXd g(3, 3);
    g << 2.0, 0.1, 0.3, //
        0.2, 3.0, 0.1,  //
        0.5, 0.9, 0.4;
    const PowerSolution sol = min_power({g, 1e-12, 2.0, 0.1});
    REQUIRE(sol.feasible);
    CHECK(sol.total == Approx(2.0 / 0.9).epsilon(1e-6));
    CHECK(sol.powers(1) == Approx(2.0 / 0.9).epsilon(1e-6));
}

TEST_CASE("decoupled users need gamma sigma^2 / gain", "[power]")
{
    Eigen::MatrixXd g(3, 3);
    g << 4.0, 0.0, 0.0, //
        0.0, 2.0, 0.0,  //
        0.0, 0.0, 1.0;
    const double gamma = 3.0, noise = 0.5;
    const PowerSolution sol = min_power({g, gamma, 0.25, noise});
    REQUIRE(sol.feasible);
    CHECK(sol.powers(0) == Approx(gamma * noise / 4.0));
    CHECK(sol.powers(1) == Approx(gamma * noise / 2.0));
    CHECK(sol.powers(2) == Approx(0.25));
}

TEST_CASE("LP agrees with the brute-force lattice on the default scenario", "[power]")
{
    for (auto [model, gamma_db] : {std::pair{BeamDesign::nfbf, 0.0}, std::pair{BeamDesign::nfbf, 10.0},
                                   std::pair{BeamDesign::ffbf, 0.0}})
    {
        const PowerProblem pb = paper_problem(model, gamma_db);
        const PowerSolution sol = min_power(pb);
        REQUIRE(sol.feasible);
        CHECK(satisfies(pb, sol.powers, 1e-9));
        const auto lattice = oracle::brute_force_power(pb.gains, pb.sinr_threshold, pb.target_power_floor,
                                                       pb.noise_power);
        REQUIRE(std::isfinite(lattice.total));
        CHECK(std::abs(sol.total - lattice.total) / lattice.total <= 0.01);
        CHECK(sol.total <= lattice.total * (1 + 1e-9));
    }
}

TEST_CASE("LP agrees with the lattice on random problems", "[power][property]")
{
    Eigen::MatrixXd g(3, 3);
    std::srand(17);
    for (int trial = 0; trial < 10; ++trial)
    {
        g = Eigen::MatrixXd::Random(3, 3).cwiseAbs();
        g(0, 0) += 2.0;
        g(1, 1) += 2.0;
        const PowerProblem pb{g, 1.5, 0.7, 0.2};
        const PowerSolution sol = min_power(pb);
        if (!sol.feasible)
            continue;
        const auto lattice = oracle::brute_force_power(g, pb.sinr_threshold, pb.target_power_floor, pb.noise_power);
        CHECK(std::abs(sol.total - lattice.total) / lattice.total <= 0.01);
    }
}

TEST_CASE("homogeneity in noise and target floor", "[power][property]")
{
    const PowerProblem pb = paper_problem(BeamDesign::nfbf, 6.0);
    PowerProblem scaled = pb;
    scaled.noise_power *= 3.0;
    scaled.target_power_floor *= 3.0;
    const PowerSolution a = min_power(pb), b = min_power(scaled);
    REQUIRE(a.feasible);
    REQUIRE(b.feasible);
    CHECK((b.powers - 3.0 * a.powers).norm() <= 1e-9 * b.powers.norm());
}

TEST_CASE("infeasible threshold yields a certificate", "[power]")
{
    Eigen::MatrixXd g(3, 3);
    g << 1.0, 1.0, 0.0, //
        1.0, 1.0, 0.0,  //
        0.0, 0.0, 1.0;
    const PowerProblem pb{g, 2.0, 0.1, 0.1};
    const PowerSolution sol = min_power(pb);
    CHECK_FALSE(sol.feasible);
    CHECK(std::isinf(sol.total));
    REQUIRE(sol.certificate.has_value());
    CHECK(sol.certificate->spectral_radius >= 1.0);
    CHECK(interference_spectral_radius(pb) == Approx(2.0));
}

TEST_CASE("power sweep", "[power]")
{
    const Scenario s = paper_default_scenario();
    const auto truth = build_user_channels(s);
    const auto geom = s.tx_geometry();
    CHECK(power_sweep(geom, truth, s.target, BeamDesign::nfbf, {}, 1.0, 0.1).empty());

    const auto nf = power_sweep(geom, truth, s.target, BeamDesign::nfbf, s.gamma_db, s.target_power_floor(),
                                s.noise_power_w);
    const auto ff = power_sweep(geom, truth, s.target, BeamDesign::ffbf, s.gamma_db, s.target_power_floor(),
                                s.noise_power_w);
    REQUIRE(nf.size() == s.gamma_db.size());
    for (size_t i = 0; i < nf.size(); ++i)
    {
        if (i > 0)
        {
            CHECK(nf[i].total_power >= nf[i - 1].total_power);
            CHECK(ff[i].total_power >= ff[i - 1].total_power);
        }
        if (ff[i].feasible)
            CHECK(nf[i].total_power <= ff[i].total_power);
    }
    CHECK(nf.front().feasible);
    CHECK(ff.front().feasible);
}

TEST_CASE("power problem validation", "[power]")
{
    CHECK_THROWS_AS(min_power({Eigen::MatrixXd::Ones(3, 3), 1.0, 0.1, -1.0}), InvalidArgument);
    CHECK_THROWS_AS(min_power({Eigen::MatrixXd::Ones(3, 2), 1.0, 0.1, 1.0}), InvalidArgument);
}
