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

#ifndef NFISAC_GEOMETRY_HPP
#define NFISAC_GEOMETRY_HPP

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <optional>

namespace nfisac
{
    using cvec = Eigen::VectorXcd;
    using cmat = Eigen::MatrixXcd;

    inline constexpr double speed_of_light = 299792458.0; // m/s

    inline constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
    inline constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

    // Uniform linear array along the x-axis, centered at the origin. Broadside is +y.
    class ArrayGeometry
    {
    public:
        // Spacing defaults to half a wavelength when not given.
        ArrayGeometry(int num_elements, double carrier_freq_hz, std::optional<double> spacing_m = std::nullopt);

        int num_elements() const { return num_elements_; }
        double spacing() const { return spacing_; }
        double carrier_freq() const { return carrier_freq_; }
        double wavelength() const { return speed_of_light / carrier_freq_; }
        double wavenumber() const { return 2.0 * std::numbers::pi / wavelength(); }

        // (N-1) * spacing
        double aperture() const { return (num_elements_ - 1) * spacing_; }

        // Coordinate of element n: (n - (N-1)/2) * spacing
        double position(int n) const { return (n - 0.5 * (num_elements_ - 1)) * spacing_; }
        Eigen::VectorXd positions() const;

        bool operator==(const ArrayGeometry &) const = default;

    private:
        int num_elements_;
        double carrier_freq_;
        double spacing_;
    };

    // Location in the array's polar frame. Angle from broadside in radians, range from the array center in meters.
    struct PolarPoint
    {
        double angle = 0.0;
        double range = 1.0;

        static PolarPoint from_degrees(double angle_deg, double range_m) { return {deg2rad(angle_deg), range_m}; }
        double angle_deg() const { return rad2deg(angle); }

        // Throws InvalidArgument if range <= 0 or |angle| > pi/2.
        void validate() const;

        bool operator==(const PolarPoint &) const = default;
    };

    enum class ResponseModel
    {
        far_field,
        near_field_phase_only,
        near_field_amplitude_aware
    };

    struct ResponseVector
    {
        cvec entries;
        ResponseModel model = ResponseModel::far_field;
    };

    // 2 D^2 / lambda
    double rayleigh_distance(const ArrayGeometry &geom);

    // Euclidean distance from element `element_index` to `p`.
    double exact_distance(const ArrayGeometry &geom, int element_index, const PolarPoint &p);

    // exact_distance - range, evaluated without cancellation at large range.
    double path_difference(double element_position, const PolarPoint &p);

    // Plane-wave steering vector, entry n = exp(+j 2 pi delta_n sin(theta) / lambda) / sqrt(N).
    // This is the large-range limit of nearfield_focusing under the exp(-j 2 pi d / lambda) propagation phase.
    ResponseVector farfield_steering(const ArrayGeometry &geom, double angle);

    // Spherical-wave focusing vector, phase referenced to the array center, unit norm.
    // The amplitude-aware variant weights entry n by range / r_n before normalizing.
    // Throws InvalidArgument if p.range <= aperture / 2.
    ResponseVector nearfield_focusing(const ArrayGeometry &geom, const PolarPoint &p, bool amplitude_aware = false);

    // Convenience used by grids: near-field focusing for finite range, plane wave for infinite range.
    cvec array_response(const ArrayGeometry &geom, double angle, double range, bool amplitude_aware = false);
}

#endif
