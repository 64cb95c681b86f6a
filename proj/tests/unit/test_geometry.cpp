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
#include "nfisac/geometry.hpp"
#include "nfisac/numeric.hpp"
#include "nfisac/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace nfisac;
using Catch::Approx;

namespace
{
    const ArrayGeometry paper_array(256, 30e9);
}

TEST_CASE("rayleigh distance", "[geometry]")
{
    // 7.4 m aperture at 2.6 GHz as 101 elements, 7.4 cm apart
    const ArrayGeometry big(101, 2.6e9, 0.074);
    CHECK(big.aperture() == Approx(7.4));
    CHECK(rayleigh_distance(big) == Approx(2 * 7.4 * 7.4 / (speed_of_light / 2.6e9)).epsilon(1e-12));
    CHECK(std::abs(rayleigh_distance(big) - 950.0) / 950.0 < 0.01);

    CHECK(rayleigh_distance(ArrayGeometry(1, 30e9)) == 0.0);

    CHECK(paper_array.aperture() == Approx(1.27412).epsilon(1e-5));
    CHECK(paper_array.wavelength() == Approx(9.9931e-3).epsilon(1e-5));
    CHECK(rayleigh_distance(paper_array) == Approx(324.9).epsilon(1e-3));
}

TEST_CASE("array geometry rejects bad input", "[geometry]")
{
    CHECK_THROWS_AS(ArrayGeometry(0, 30e9), InvalidArgument);
    CHECK_THROWS_AS(ArrayGeometry(4, -1.0), InvalidArgument);
    CHECK_THROWS_AS(ArrayGeometry(4, 30e9, 0.0), InvalidArgument);
    CHECK_THROWS_AS(PolarPoint({0.0, -1.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS(PolarPoint({2.0, 1.0}).validate(), InvalidArgument);
    CHECK_NOTHROW(PolarPoint({std::numbers::pi / 2, 1.0}).validate());
}

TEST_CASE("positions are centered", "[geometry]")
{
    const ArrayGeometry g(5, 30e9, 0.1);
    CHECK(g.positions().sum() == Approx(0.0).margin(1e-15));
    CHECK(g.position(0) == Approx(-0.2));
    CHECK(g.position(4) == Approx(0.2));
}

TEST_CASE("exact distance", "[geometry]")
{
    const ArrayGeometry g(3, 30e9, 1.0);
    // broadside symmetry
    CHECK(exact_distance(g, 0, {0.0, 10.0}) == Approx(std::sqrt(101.0)));
    CHECK(exact_distance(g, 2, {0.0, 10.0}) == Approx(std::sqrt(101.0)));
    // center element
    CHECK(exact_distance(g, 1, {0.7, 10.0}) == Approx(10.0));
    // collinear
    CHECK(exact_distance(g, 2, {std::numbers::pi / 2, 10.0}) == Approx(9.0));
    CHECK_THROWS_AS(exact_distance(g, 3, {0.0, 10.0}), InvalidArgument);
}

TEST_CASE("path difference stays accurate at long range", "[geometry]")
{
    const PolarPoint far{0.3, 1e9};
    const double delta = 0.5;
    // first order: -delta sin(angle)
    CHECK(path_difference(delta, far) == Approx(-delta * std::sin(0.3)).epsilon(1e-8));
}

TEST_CASE("far-field steering", "[geometry]")
{
    const cvec broadside = farfield_steering(paper_array, 0.0).entries;
    for (auto v : broadside)
        CHECK(std::abs(v - std::complex<double>(1.0 / 16.0, 0.0)) < 1e-15);

    // N = 2 at endfire: delta = -/+ lambda/4
    const cvec two = farfield_steering(ArrayGeometry(2, 30e9), std::numbers::pi / 2).entries;
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(two(0) - std::polar(s, -std::numbers::pi / 2)) < 1e-12);
    CHECK(std::abs(two(1) - std::polar(s, std::numbers::pi / 2)) < 1e-12);

    const cvec plus = farfield_steering(paper_array, 0.4).entries;
    const cvec minus = farfield_steering(paper_array, -0.4).entries;
    CHECK((minus - plus.conjugate()).norm() < 1e-12);
    CHECK(plus.norm() == Approx(1.0));

    CHECK((plus - oracle::planar(256, 30e9, 0.4)).norm() < 1e-12);
}

TEST_CASE("near-field focusing matches Cartesian geometry", "[geometry]")
{
    CounterRng rng(7, 0);
    for (int i = 0; i < 20; ++i)
    {
        const PolarPoint p{deg2rad(rng.uniform(-80, 80)), rng.uniform(1.0, 60.0)};
        const cvec a = nearfield_focusing(paper_array, p).entries;
        CHECK((a - oracle::spherical(256, 30e9, p.angle, p.range)).norm() < 1e-9);
        CHECK(a.norm() == Approx(1.0).epsilon(1e-12));
        CHECK(nearfield_focusing(paper_array, p, true).entries.norm() == Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("near-field focusing converges to the plane wave", "[geometry][property]")
{
    const double rd = rayleigh_distance(paper_array);
    for (double angle : {-1.2, -0.3, 0.0, 0.5, 1.0})
    {
        const cvec nf = nearfield_focusing(paper_array, {angle, 1e6 * rd}).entries;
        const cvec ff = farfield_steering(paper_array, angle).entries;
        double worst = 0.0;
        for (int n = 0; n < nf.size(); ++n)
            worst = std::max(worst, std::abs(std::arg(nf(n) * std::conj(ff(n)))));
        CHECK(worst < 1e-3);
    }
}

TEST_CASE("phase error at the Rayleigh distance is about pi/8", "[geometry]")
{
    const double rd = rayleigh_distance(paper_array);
    const cvec nf = nearfield_focusing(paper_array, {0.0, rd}).entries;
    const cvec ff = farfield_steering(paper_array, 0.0).entries;
    double worst = 0.0;
    for (int n = 0; n < nf.size(); ++n)
        worst = std::max(worst, std::abs(std::arg(nf(n) * std::conj(ff(n)))));
    CHECK(std::abs(worst - std::numbers::pi / 8) <= 0.15 * std::numbers::pi / 8);
}

TEST_CASE("near-field rejects points on the array segment", "[geometry]")
{
    CHECK_THROWS_AS(nearfield_focusing(paper_array, {0.0, 0.5}), InvalidArgument);
    CHECK_THROWS_AS(nearfield_focusing(paper_array, {0.0, -3.0}), InvalidArgument);
}

TEST_CASE("array response picks the model from the range", "[geometry]")
{
    const cvec inf = array_response(paper_array, 0.2, std::numeric_limits<double>::infinity());
    CHECK((inf - farfield_steering(paper_array, 0.2).entries).norm() == 0.0);
    const cvec near = array_response(paper_array, 0.2, 7.0);
    CHECK((near - nearfield_focusing(paper_array, {0.2, 7.0}).entries).norm() == 0.0);
}

TEST_CASE("amplitude-aware weights follow 1/r_n", "[geometry]")
{
    const ArrayGeometry g(3, 30e9, 1.0);
    const PolarPoint p{std::numbers::pi / 2, 10.0};
    const cvec a = nearfield_focusing(g, p, true).entries;
    // r_n = 11, 10, 9
    CHECK(std::abs(a(0)) / std::abs(a(2)) == Approx(9.0 / 11.0));
}

TEST_CASE("linspace and logspace keep exact endpoints", "[numeric]")
{
    const auto lin = linspace(-90.0, 90.0, 181);
    CHECK(lin.front() == -90.0);
    CHECK(lin.back() == 90.0);
    CHECK(lin[90] == Approx(0.0).margin(1e-12));
    const auto lg = logspace(1.0, 100.0, 3);
    CHECK(lg[0] == 1.0);
    CHECK(lg[1] == Approx(10.0));
    CHECK(lg[2] == 100.0);
}

TEST_CASE("counter rng is reproducible and stream separated", "[rng]")
{
    CounterRng a(1, 0), b(1, 0), c(1, 1), d(2, 0);
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());

    CounterRng u(3, 0);
    double mean = 0.0, var = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i)
    {
        const double v = u.normal();
        mean += v;
        var += v * v;
    }
    mean /= n;
    var = var / n - mean * mean;
    CHECK(std::abs(mean) < 0.03);
    CHECK(std::abs(var - 1.0) < 0.05);
}
