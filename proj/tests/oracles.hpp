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

// Independent reference computations used as test oracles. Each one is written
// from first principles (Cartesian geometry, explicit loops, finite differences,
// brute-force search) and shares no code path with the library under test.

#ifndef NFISAC_TESTS_ORACLES_HPP
#define NFISAC_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace oracle
{
    using cd = std::complex<double>;
    inline constexpr double c0 = 299792458.0;

    // Element n of an N-element half-wavelength ULA on the y axis, centered at the origin.
    inline double element_y(int n, int count, double spacing)
    {
        return (n - (count - 1) / 2.0) * spacing;
    }

    // Spherical response from Cartesian coordinates: target at (r cos, r sin).
    inline Eigen::VectorXcd spherical(int count, double freq, double angle, double range)
    {
        const double lambda = c0 / freq;
        const double k = 2.0 * std::numbers::pi / lambda;
        const double tx = range * std::cos(angle), ty = range * std::sin(angle);
        Eigen::VectorXcd a(count);
        for (int n = 0; n < count; ++n)
        {
            const double dy = ty - element_y(n, count, lambda / 2.0);
            const double dist = std::hypot(tx, dy);
            a(n) = std::exp(cd(0.0, -k * (dist - range))) / std::sqrt(double(count));
        }
        return a;
    }

    // Plane wave limit of `spherical`.
    inline Eigen::VectorXcd planar(int count, double freq, double angle)
    {
        const double lambda = c0 / freq;
        const double k = 2.0 * std::numbers::pi / lambda;
        Eigen::VectorXcd a(count);
        for (int n = 0; n < count; ++n)
            a(n) = std::exp(cd(0.0, k * element_y(n, count, lambda / 2.0) * std::sin(angle))) /
                   std::sqrt(double(count));
        return a;
    }

    // Two parallel broadside ULAs; tx on x = 0, rx on x = separation.
    inline Eigen::MatrixXcd los_matrix(int n_tx, int n_rx, double freq, double separation)
    {
        const double lambda = c0 / freq;
        const double k = 2.0 * std::numbers::pi / lambda;
        Eigen::MatrixXcd h(n_rx, n_tx);
        for (int m = 0; m < n_rx; ++m)
            for (int n = 0; n < n_tx; ++n)
            {
                const double dy = element_y(m, n_rx, lambda / 2.0) - element_y(n, n_tx, lambda / 2.0);
                h(m, n) = std::exp(cd(0.0, -k * std::hypot(separation, dy)));
            }
        return h;
    }

    // Singular values through the eigenvalues of the Gram matrix, descending.
    inline std::vector<double> singular_values_by_gram(const Eigen::MatrixXcd &h)
    {
        const Eigen::MatrixXcd gram = h.adjoint() * h;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
        std::vector<double> out;
        for (double e : eig.eigenvalues())
            out.push_back(std::sqrt(std::max(e, 0.0)));
        std::sort(out.rbegin(), out.rend());
        return out;
    }

    inline int count_above(const std::vector<double> &sv, double threshold_db)
    {
        const double floor = std::pow(10.0, threshold_db / 10.0) * sv.front() * sv.front();
        return int(std::count_if(sv.begin(), sv.end(), [&](double s) { return s * s >= floor; }));
    }

    inline double squared_correlation(const Eigen::VectorXcd &h1, const Eigen::VectorXcd &h2)
    {
        cd inner = 0.0;
        double n1 = 0.0, n2 = 0.0;
        for (int i = 0; i < h1.size(); ++i)
        {
            inner += std::conj(h1(i)) * h2(i);
            n1 += std::norm(h1(i));
            n2 += std::norm(h2(i));
        }
        return std::norm(inner) / (n1 * n2);
    }

    // Fisher information of vec(G) with G = beta b(p) a(p)^H under white noise, built from
    // central finite differences of G itself. Parameter order: angle, range, Re beta, Im beta.
    inline Eigen::Matrix4d fim_by_differences(int n_tx, int n_rx, double freq, double angle, double range, cd beta,
                                              const Eigen::MatrixXcd &cov, int snapshots, double noise)
    {
        auto g = [&](double t, double r, cd b)
        {
            const Eigen::VectorXcd a = spherical(n_tx, freq, t, r);
            const Eigen::VectorXcd rx = spherical(n_rx, freq, t, r);
            return Eigen::MatrixXcd(b * rx * a.adjoint());
        };
        const double ht = 1e-6, hr = 1e-6 * range;
        std::vector<Eigen::MatrixXcd> d = {
            (g(angle + ht, range, beta) - g(angle - ht, range, beta)) / (2 * ht),
            (g(angle, range + hr, beta) - g(angle, range - hr, beta)) / (2 * hr),
            g(angle, range, 1.0),
            g(angle, range, cd(0.0, 1.0)),
        };
        Eigen::Matrix4d f;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                f(i, j) = 2.0 * snapshots / noise * (d[i].adjoint() * d[j] * cov).trace().real();
        return f;
    }

    // Minimum-total-power search over a 3-D lattice of (p_user1, p_user2, p_sense), refined twice
    // around the best feasible point. gains is 3x3: rows user1, user2, target; columns streams.
    //
    // For every (p_user1, p_user2) lattice pair the constraints bound p_sense to an interval, so the
    // smallest feasible lattice value of p_sense is found directly instead of by scanning; the result
    // is identical to visiting every lattice point.
    struct LatticeResult
    {
        double total = std::numeric_limits<double>::infinity();
        Eigen::Vector3d powers = Eigen::Vector3d::Constant(std::nan(""));
    };

    inline LatticeResult brute_force_power(const Eigen::Matrix3d &g, double gamma, double floor, double noise)
    {
        auto feasible = [&](const Eigen::Vector3d &p)
        {
            for (int k = 0; k < 2; ++k)
            {
                double interf = noise;
                for (int j = 0; j < 3; ++j)
                    if (j != k)
                        interf += g(k, j) * p(j);
                if (g(k, k) * p(k) < gamma * interf)
                    return false;
            }
            return g.row(2).dot(p) >= floor;
        };

        constexpr int steps = 400;
        auto search = [&](const Eigen::Vector3d &lo, const Eigen::Vector3d &hi)
        {
            LatticeResult best;
            const Eigen::Vector3d cell = (hi - lo) / steps;
            for (int i = 0; i <= steps; ++i)
                for (int j = 0; j <= steps; ++j)
                {
                    const double p1 = lo(0) + i * cell(0), p2 = lo(1) + j * cell(1);
                    // sensing power needed by the target and allowed by each user
                    double need = g(2, 2) > 0 ? (floor - g(2, 0) * p1 - g(2, 1) * p2) / g(2, 2) : 0.0;
                    int l = need <= lo(2) ? 0 : int(std::ceil((need - lo(2)) / cell(2)));
                    for (; l <= steps; ++l)
                    {
                        const Eigen::Vector3d p(p1, p2, lo(2) + l * cell(2));
                        if (p.sum() >= best.total)
                            break;
                        if (feasible(p))
                        {
                            best = {p.sum(), p};
                            break;
                        }
                        // more sensing power only adds interference once the target is met
                        if (g.row(2).dot(p) >= floor)
                            break;
                    }
                }
            return best;
        };

        // grow the box until something is feasible, then search a box that must hold the optimum
        double bound = 1e-3;
        LatticeResult best;
        while (!std::isfinite(best.total) && bound < 1e6)
        {
            bound *= 2.0;
            best = search(Eigen::Vector3d::Zero(), Eigen::Vector3d::Constant(bound));
        }
        if (!std::isfinite(best.total))
            return best;
        const double reach = best.total;
        best = search(Eigen::Vector3d::Zero(), Eigen::Vector3d::Constant(reach));

        Eigen::Vector3d cell = Eigen::Vector3d::Constant(reach / steps);
        for (int refine = 0; refine < 2; ++refine)
        {
            const Eigen::Vector3d lo = (best.powers - 3.0 * cell).cwiseMax(0.0);
            const Eigen::Vector3d hi = best.powers + 3.0 * cell;
            const LatticeResult next = search(lo, hi);
            if (next.total <= best.total)
                best = next;
            cell = (hi - lo) / steps;
        }
        return best;
    }
}

#endif
