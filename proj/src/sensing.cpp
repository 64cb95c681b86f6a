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

#include "nfisac/sensing.hpp"
#include "nfisac/errors.hpp"
#include "nfisac/numeric.hpp"
#include "nfisac/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <tuple>

namespace nfisac
{
    FocusingDerivatives focusing_derivatives(const ArrayGeometry &geom, const PolarPoint &p)
    {
        const cvec a = nearfield_focusing(geom, p).entries;
        const int n_el = geom.num_elements();
        const double k = geom.wavenumber();
        const double r = p.range;
        const double sin_t = std::sin(p.angle);
        const double cos_t = std::cos(p.angle);
        const std::complex<double> mjk(0.0, -k);

        FocusingDerivatives out{cvec(n_el), cvec(n_el)};
        for (int n = 0; n < n_el; ++n)
        {
            const double delta = geom.position(n);
            const double diff = path_difference(delta, p);
            const double rn = r + diff;
            const double drn_dangle = -r * delta * cos_t / rn;
            // (r - delta sin) / r_n - 1, rewritten to avoid cancellation
            const double drn_drange_ref = (-delta * sin_t - diff) / rn;
            out.d_angle(n) = mjk * drn_dangle * a(n);
            out.d_range(n) = mjk * drn_drange_ref * a(n);
        }
        return out;
    }

    namespace
    {
        // coeff * u v^H
        struct OuterTerm
        {
            std::complex<double> coeff;
            int u; // index into the rx vector table
            int v; // index into the tx vector table
        };
    }

    FimResult fisher_information(const EchoModel &model)
    {
        if (model.snapshots < 1)
            throw InvalidArgument("fisher_information: snapshots must be >= 1");
        if (!(model.noise_power > 0.0))
            throw InvalidArgument("fisher_information: noise power must be positive");
        if (model.tx_covariance.size() != model.tx_geom.num_elements())
            throw InvalidArgument("fisher_information: covariance size does not match the tx array");
        if (!(model.tx_covariance.total_power() > 0.0))
            throw InvalidArgument("fisher_information: covariance must have positive trace");

        const PolarPoint &p = model.target;
        const std::complex<double> beta = model.reflection_gain;
        const std::complex<double> j1(0.0, 1.0);

        const cvec a = nearfield_focusing(model.tx_geom, p).entries;
        const cvec b = nearfield_focusing(model.rx_geom, p).entries;
        const FocusingDerivatives da = focusing_derivatives(model.tx_geom, p);
        const FocusingDerivatives db = focusing_derivatives(model.rx_geom, p);

        const std::array<const cvec *, 3> rx = {&b, &db.d_angle, &db.d_range};
        const std::array<const cvec *, 3> tx = {&a, &da.d_angle, &da.d_range};

        // dG/dangle, dG/drange, dG/dRe(beta), dG/dIm(beta) for G = beta b a^H
        const std::array<std::vector<OuterTerm>, 4> grads = {{
            {{beta, 1, 0}, {beta, 0, 1}},
            {{beta, 2, 0}, {beta, 0, 2}},
            {{1.0, 0, 0}},
            {{j1, 0, 0}},
        }};

        // F^H v for each tx vector, so y^H R v = (F^H y)^H (F^H v)
        const cmat &factor = model.tx_covariance.factor();
        std::array<cvec, 3> ftx;
        for (int i = 0; i < 3; ++i)
            ftx[i] = factor.adjoint() * *tx[i];

        Eigen::Matrix3cd rx_gram, tx_gram;
        for (int i = 0; i < 3; ++i)
            for (int m = 0; m < 3; ++m)
            {
                rx_gram(i, m) = rx[i]->dot(*rx[m]);
                tx_gram(i, m) = ftx[i].dot(ftx[m]);
            }

        // tr(A^H B R) = sum conj(c_a) d_b (u_a^H x_b)(y_b^H R v_a)
        const double scale = 2.0 * model.snapshots / model.noise_power;
        FimResult out;
        for (int i = 0; i < 4; ++i)
            for (int m = i; m < 4; ++m)
            {
                std::complex<double> tr = 0.0;
                for (const auto &ta : grads[i])
                    for (const auto &tb : grads[m])
                        tr += std::conj(ta.coeff) * tb.coeff * rx_gram(ta.u, tb.u) * tx_gram(tb.v, ta.v);
                out.fim(i, m) = out.fim(m, i) = scale * tr.real();
            }

        const Eigen::Vector4d diag = out.fim.diagonal();
        if ((diag.array() <= 0.0).any() || !diag.allFinite())
            return out;

        const Eigen::Vector4d inv_sqrt = diag.cwiseSqrt().cwiseInverse();
        const Eigen::Matrix4d normalized = inv_sqrt.asDiagonal() * out.fim * inv_sqrt.asDiagonal();
        const Eigen::Vector4d eig = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(normalized).eigenvalues();
        if (eig(0) < 1e-12 * eig(3))
            return out;

        const Eigen::Matrix4d inv =
            inv_sqrt.asDiagonal() * normalized.inverse() * inv_sqrt.asDiagonal();
        out.identifiable = true;
        out.rcrb_angle = std::sqrt(inv(0, 0));
        out.rcrb_range = std::sqrt(inv(1, 1));
        return out;
    }

    PolarGrid polar_grid(const ArrayGeometry &geom, int angle_count, int range_count, double r_min,
                         RangeSampling sampling, std::optional<double> r_max)
    {
        if (angle_count < 2 || range_count < 2)
            throw InvalidArgument("polar_grid: angle and range counts must be >= 2");
        if (!(r_min > 0.5 * geom.aperture()))
            throw InvalidArgument("polar_grid: r_min must exceed half the aperture");
        const double hi = r_max.value_or(rayleigh_distance(geom));
        if (!(hi > r_min))
            throw InvalidArgument("polar_grid: r_max must exceed r_min");

        PolarGrid out;
        out.sampling = sampling;
        out.angles.resize(angle_count);
        for (int i = 0; i < angle_count; ++i)
            out.angles[i] = std::asin(-1.0 + (2.0 * i + 1.0) / angle_count);

        if (sampling == RangeSampling::uniform_range)
        {
            out.ranges = linspace(r_min, hi, range_count);
        }
        else
        {
            const std::vector<double> inv = linspace(1.0 / r_min, 1.0 / hi, range_count);
            out.ranges.reserve(range_count + 1);
            for (double v : inv)
                out.ranges.push_back(1.0 / v);
            out.ranges.front() = r_min;
            out.ranges.back() = hi;
            out.ranges.push_back(INFINITY);
        }
        return out;
    }

    std::vector<GridPeak> find_peaks(const Eigen::MatrixXd &values, int max_peaks)
    {
        const int rows = int(values.rows());
        const int cols = int(values.cols());

        // (value desc, row asc, col asc) ordering; a peak must beat every neighbor under it.
        auto beats = [&](int r0, int c0, int r1, int c1)
        {
            const double v0 = values(r0, c0), v1 = values(r1, c1);
            if (v0 != v1)
                return v0 > v1;
            return std::tie(r0, c0) < std::tie(r1, c1);
        };

        std::vector<GridPeak> peaks;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
            {
                bool is_peak = true;
                for (int dr = -1; dr <= 1 && is_peak; ++dr)
                    for (int dc = -1; dc <= 1 && is_peak; ++dc)
                    {
                        const int rr = r + dr, cc = c + dc;
                        if ((dr == 0 && dc == 0) || rr < 0 || cc < 0 || rr >= rows || cc >= cols)
                            continue;
                        is_peak = beats(r, c, rr, cc);
                    }
                if (is_peak)
                    peaks.push_back({r, c, values(r, c)});
            }

        std::sort(peaks.begin(), peaks.end(), [](const GridPeak &x, const GridPeak &y)
                  {
                      if (x.value != y.value)
                          return x.value > y.value;
                      return std::tie(x.row, x.col) < std::tie(y.row, y.col);
                  });
        if (int(peaks.size()) > max_peaks)
            peaks.resize(std::max(max_peaks, 0));
        return peaks;
    }

    MusicResult music_2d(const cmat &snapshots, int num_sources, const PolarGrid &grid, const ArrayGeometry &geom)
    {
        const int n_rx = int(snapshots.rows());
        const int n_snap = int(snapshots.cols());
        if (n_rx != geom.num_elements())
            throw InvalidArgument("music_2d: snapshot rows do not match the array size");
        if (num_sources < 1 || num_sources >= n_rx)
            throw InvalidArgument("music_2d: number of sources must be in [1, N_rx)");
        if (n_snap < 1)
            throw InvalidArgument("music_2d: no snapshots");

        MusicResult out;
        if (n_snap < n_rx)
            out.warnings.push_back("music_2d: fewer snapshots (" + std::to_string(n_snap) + ") than receive elements (" +
                                   std::to_string(n_rx) + "); sample covariance is rank deficient");

        const cmat cov = snapshots * snapshots.adjoint() / double(n_snap);
        const double cov_norm = cov.norm();
        if (!(cov_norm > 0.0) || !std::isfinite(cov_norm))
            throw InvalidArgument("music_2d: degenerate (zero) sample covariance");

        // Eigenvalues ascending; the noise subspace is the first N - K columns, so
        // a^H En En^H a = |a|^2 - |Es^H a|^2 with Es the last K columns.
        Eigen::SelfAdjointEigenSolver<cmat> eig(cov / cov_norm);
        const cmat signal = eig.eigenvectors().rightCols(num_sources);

        constexpr double eps = 1e-12;
        out.spectrum.resize(grid.angles.size(), grid.ranges.size());
        for (size_t i = 0; i < grid.angles.size(); ++i)
            for (size_t j = 0; j < grid.ranges.size(); ++j)
            {
                const cvec a = array_response(geom, grid.angles[i], grid.ranges[j]);
                const double proj = std::max(a.squaredNorm() - (signal.adjoint() * a).squaredNorm(), 0.0);
                out.spectrum(i, j) = 1.0 / (proj + eps);
            }

        out.peaks = find_peaks(out.spectrum, num_sources);
        for (const auto &pk : out.peaks)
            out.estimates.push_back({grid.angles[pk.row], grid.ranges[pk.col]});
        return out;
    }

    cmat simulate_snapshots(const ArrayGeometry &geom, std::span<const PolarPoint> sources, double snr_db,
                            int snapshots, std::uint64_t seed, std::uint64_t stream)
    {
        if (snapshots < 1)
            throw InvalidArgument("simulate_snapshots: snapshots must be >= 1");
        const int n_rx = geom.num_elements();
        const double noise_var = std::pow(10.0, -snr_db / 10.0);
        const double gain = std::sqrt(double(n_rx));

        cmat steering(n_rx, sources.size());
        for (size_t k = 0; k < sources.size(); ++k)
        {
            sources[k].validate();
            steering.col(k) = gain * array_response(geom, sources[k].angle, sources[k].range);
        }

        CounterRng rng(seed, stream);
        cmat signals(sources.size(), snapshots);
        for (int t = 0; t < snapshots; ++t)
            for (size_t k = 0; k < sources.size(); ++k)
                signals(k, t) = rng.complex_normal(1.0);

        cmat noise(n_rx, snapshots);
        for (int t = 0; t < snapshots; ++t)
            for (int n = 0; n < n_rx; ++n)
                noise(n, t) = rng.complex_normal(noise_var);

        return steering * signals + noise;
    }
}
