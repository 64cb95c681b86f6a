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

#include "nfisac/channel.hpp"
#include "nfisac/errors.hpp"
#include "nfisac/rng.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace nfisac
{
    MimoChannel p2p_los_channel(const ArrayGeometry &tx, const ArrayGeometry &rx, double separation,
                                bool amplitude_aware)
    {
        if (!(separation > 0.0))
            throw InvalidArgument("p2p_los_channel: separation must be positive");
        if (tx.carrier_freq() != rx.carrier_freq())
            throw InvalidArgument("p2p_los_channel: tx and rx arrays must share a carrier frequency");

        const double k = tx.wavenumber();
        const int n_t = tx.num_elements();
        const int n_r = rx.num_elements();

        cmat h(n_r, n_t);
        for (int n = 0; n < n_t; ++n)
        {
            const double dt = tx.position(n);
            for (int m = 0; m < n_r; ++m)
            {
                const double dx = rx.position(m) - dt;
                const double d = std::sqrt(separation * separation + dx * dx);
                const double amp = amplitude_aware ? separation / d : 1.0;
                h(m, n) = std::polar(amp, -k * d);
            }
        }
        return {std::move(h), tx, rx, separation};
    }

    Eigen::VectorXd singular_values(const MimoChannel &h)
    {
        Eigen::BDCSVD<cmat> svd(h.matrix);
        return svd.singularValues();
    }

    int effective_dof(const Eigen::VectorXd &sv, double threshold_db)
    {
        if (sv.size() == 0)
            return 0;
        const double floor = std::pow(10.0, threshold_db / 10.0) * sv.maxCoeff() * sv.maxCoeff();
        int count = 0;
        for (double s : sv)
            if (s * s >= floor)
                ++count;
        return count;
    }

    int effective_dof(const MimoChannel &h, double threshold_db)
    {
        return effective_dof(singular_values(h), threshold_db);
    }

    cvec assemble_channel(const ArrayGeometry &geom, std::span<const PathComponent> paths, ChannelModel model,
                          bool amplitude_aware)
    {
        cvec h = cvec::Zero(geom.num_elements());
        for (const auto &path : paths)
        {
            const cvec a = model == ChannelModel::far_field
                               ? farfield_steering(geom, path.location.angle).entries
                               : nearfield_focusing(geom, path.location, amplitude_aware).entries;
            h += path.gain * a;
        }
        h *= std::sqrt(double(geom.num_elements()));
        return h;
    }

    UserChannel user_channel(const ArrayGeometry &geom, const PolarPoint &user_location,
                             std::span<const PolarPoint> scatterers, ChannelModel model, std::uint64_t seed,
                             std::uint64_t stream, const UserChannelOptions &options)
    {
        user_location.validate();
        const double min_sep = deg2rad(0.5);

        std::vector<PathComponent> paths;
        paths.push_back({user_location, {1.0, 0.0}, PathKind::line_of_sight});

        CounterRng rng(seed, stream);
        const double variance = std::pow(10.0, options.scatterer_power_db / 10.0);
        for (const auto &loc : scatterers)
        {
            loc.validate();
            for (const auto &prev : paths)
            {
                if (std::abs(prev.location.angle - loc.angle) < min_sep)
                {
                    std::ostringstream msg;
                    msg << "user_channel: scatterer at " << loc.angle_deg() << " deg is within 0.5 deg of a path at "
                        << prev.location.angle_deg() << " deg";
                    throw InvalidArgument(msg.str());
                }
            }
            paths.push_back({loc, rng.complex_normal(variance), PathKind::scatterer});
        }

        UserChannel out;
        out.vector = assemble_channel(geom, paths, model, options.amplitude_aware);
        out.paths = std::move(paths);
        out.user_location = user_location;
        out.model = model;
        return out;
    }

    UserChannel with_model(const UserChannel &channel, const ArrayGeometry &geom, ChannelModel model,
                           bool amplitude_aware)
    {
        UserChannel out = channel;
        out.vector = assemble_channel(geom, out.paths, model, amplitude_aware);
        out.model = model;
        return out;
    }

    double channel_correlation(const cvec &h1, const cvec &h2)
    {
        if (h1.size() != h2.size())
            throw InvalidArgument("channel_correlation: length mismatch");
        const double n1 = h1.squaredNorm();
        const double n2 = h2.squaredNorm();
        if (n1 == 0.0 || n2 == 0.0)
            throw InvalidArgument("channel_correlation: zero-norm channel");
        return std::norm(h1.dot(h2)) / (n1 * n2);
    }

    double channel_correlation(const UserChannel &h1, const UserChannel &h2)
    {
        return channel_correlation(h1.vector, h2.vector);
    }
}
