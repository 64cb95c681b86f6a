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

#include "nfisac/geometry.hpp"
#include "nfisac/errors.hpp"

#include <cmath>
#include <string>

namespace nfisac
{
    ArrayGeometry::ArrayGeometry(int num_elements, double carrier_freq_hz, std::optional<double> spacing_m)
        : num_elements_(num_elements), carrier_freq_(carrier_freq_hz), spacing_(0.0)
    {
        if (num_elements < 1)
            throw InvalidArgument("ArrayGeometry: num_elements must be >= 1, got " + std::to_string(num_elements));
        if (!(carrier_freq_hz > 0.0) || !std::isfinite(carrier_freq_hz))
            throw InvalidArgument("ArrayGeometry: carrier_freq must be positive");
        spacing_ = spacing_m.value_or(0.5 * wavelength());
        if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
            throw InvalidArgument("ArrayGeometry: spacing must be positive");
    }

    Eigen::VectorXd ArrayGeometry::positions() const
    {
        Eigen::VectorXd out(num_elements_);
        for (int n = 0; n < num_elements_; ++n)
            out(n) = position(n);
        return out;
    }

    void PolarPoint::validate() const
    {
        if (!(range > 0.0))
            throw InvalidArgument("PolarPoint: range must be positive, got " + std::to_string(range));
        if (!(std::abs(angle) <= 0.5 * std::numbers::pi))
            throw InvalidArgument("PolarPoint: angle must lie in [-pi/2, pi/2], got " + std::to_string(angle));
    }

    double rayleigh_distance(const ArrayGeometry &geom)
    {
        const double d = geom.aperture();
        return 2.0 * d * d / geom.wavelength();
    }

    double exact_distance(const ArrayGeometry &geom, int element_index, const PolarPoint &p)
    {
        if (element_index < 0 || element_index >= geom.num_elements())
            throw InvalidArgument("exact_distance: element index out of range");
        const double delta = geom.position(element_index);
        return std::sqrt(p.range * p.range + delta * delta - 2.0 * p.range * delta * std::sin(p.angle));
    }

    double path_difference(double delta, const PolarPoint &p)
    {
        // r_n - r = (delta^2 - 2 r delta sin) / (r_n + r)
        const double r = p.range;
        const double num = delta * delta - 2.0 * r * delta * std::sin(p.angle);
        const double rn = std::sqrt(r * r + num);
        return num / (rn + r);
    }

    ResponseVector farfield_steering(const ArrayGeometry &geom, double angle)
    {
        const int n_el = geom.num_elements();
        const double k = geom.wavenumber();
        const double s = std::sin(angle);
        const double scale = 1.0 / std::sqrt(double(n_el));

        ResponseVector out{cvec(n_el), ResponseModel::far_field};
        for (int n = 0; n < n_el; ++n)
            out.entries(n) = std::polar(scale, k * geom.position(n) * s);
        return out;
    }

    ResponseVector nearfield_focusing(const ArrayGeometry &geom, const PolarPoint &p, bool amplitude_aware)
    {
        p.validate();
        if (p.range <= 0.5 * geom.aperture())
            throw InvalidArgument("nearfield_focusing: range " + std::to_string(p.range) +
                                  " m is not outside the array segment (aperture/2 = " +
                                  std::to_string(0.5 * geom.aperture()) + " m)");

        const int n_el = geom.num_elements();
        const double k = geom.wavenumber();

        ResponseVector out{cvec(n_el), amplitude_aware ? ResponseModel::near_field_amplitude_aware
                                                       : ResponseModel::near_field_phase_only};
        for (int n = 0; n < n_el; ++n)
        {
            const double diff = path_difference(geom.position(n), p);
            const double amp = amplitude_aware ? p.range / (p.range + diff) : 1.0;
            out.entries(n) = std::polar(amp, -k * diff);
        }
        out.entries /= out.entries.norm();
        return out;
    }

    cvec array_response(const ArrayGeometry &geom, double angle, double range, bool amplitude_aware)
    {
        if (std::isinf(range))
            return farfield_steering(geom, angle).entries;
        return nearfield_focusing(geom, {angle, range}, amplitude_aware).entries;
    }
}
