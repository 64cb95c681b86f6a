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

#ifndef NFISAC_CHANNEL_HPP
#define NFISAC_CHANNEL_HPP

#include "nfisac/geometry.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace nfisac
{
    enum class PathKind
    {
        line_of_sight,
        scatterer
    };

    struct PathComponent
    {
        PolarPoint location;
        std::complex<double> gain{1.0, 0.0};
        PathKind kind = PathKind::scatterer;
    };

    enum class ChannelModel
    {
        far_field,
        near_field
    };

    // Downlink channel of a single-antenna user; the received signal for transmit vector x is vector^H x.
    struct UserChannel
    {
        cvec vector;
        std::vector<PathComponent> paths;
        PolarPoint user_location;
        ChannelModel model = ChannelModel::near_field;
    };

    struct MimoChannel
    {
        cmat matrix; // N_r x N_t
        ArrayGeometry tx_geom;
        ArrayGeometry rx_geom;
        double separation = 0.0;
    };

    struct UserChannelOptions
    {
        double scatterer_power_db = -10.0; // average scatterer power relative to the unit LoS gain
        bool amplitude_aware = false;
    };

    // Parallel broadside-facing ULAs with centers `separation` meters apart.
    // Entry (m, n) = exp(-j 2 pi d_mn / lambda), optionally weighted by separation / d_mn.
    MimoChannel p2p_los_channel(const ArrayGeometry &tx, const ArrayGeometry &rx, double separation,
                                bool amplitude_aware = false);

    Eigen::VectorXd singular_values(const MimoChannel &h);

    // Number of singular values with sigma^2 >= 10^(threshold_db/10) * sigma_max^2.
    int effective_dof(const MimoChannel &h, double threshold_db = -10.0);
    int effective_dof(const Eigen::VectorXd &singular_values, double threshold_db = -10.0);

    // sqrt(N) * sum_l gain_l * a(location_l) under `model`. Far-field responses use only the path angle.
    cvec assemble_channel(const ArrayGeometry &geom, std::span<const PathComponent> paths, ChannelModel model,
                          bool amplitude_aware = false);

    // LoS path with unit gain plus one path per scatterer location, gains drawn from (seed, stream).
    // Throws InvalidArgument if two path angles are within 0.5 degrees of each other.
    UserChannel user_channel(const ArrayGeometry &geom, const PolarPoint &user_location,
                             std::span<const PolarPoint> scatterers, ChannelModel model, std::uint64_t seed,
                             std::uint64_t stream = 0, const UserChannelOptions &options = {});

    // Same paths and gains, responses rebuilt under `model`.
    UserChannel with_model(const UserChannel &channel, const ArrayGeometry &geom, ChannelModel model,
                           bool amplitude_aware = false);

    // |h1^H h2|^2 / (|h1|^2 |h2|^2)
    double channel_correlation(const cvec &h1, const cvec &h2);
    double channel_correlation(const UserChannel &h1, const UserChannel &h2);
}

#endif
