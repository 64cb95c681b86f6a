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

// Python bindings. Vectors and matrices cross as numpy arrays; spans are taken from lists.

#include "nfisac/beamforming.hpp"
#include "nfisac/channel.hpp"
#include "nfisac/errors.hpp"
#include "nfisac/experiments.hpp"
#include "nfisac/geometry.hpp"
#include "nfisac/power_control.hpp"
#include "nfisac/scenario.hpp"
#include "nfisac/sensing.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace nfisac;

namespace
{
    std::vector<cvec> to_vectors(const std::vector<UserChannel> &channels)
    {
        std::vector<cvec> out;
        for (const auto &c : channels)
            out.push_back(c.vector);
        return out;
    }

    py::dict files_to_dict(const std::vector<OutputFile> &files)
    {
        py::dict d;
        for (const auto &f : files)
            d[py::str(f.name)] = f.contents;
        return d;
    }
}

PYBIND11_MODULE(_nfisac, m)
{
    m.doc() = "near-field sensing and communication simulation library";

    static py::exception<Error> base_error(m, "Error", PyExc_RuntimeError);
    py::register_exception_translator(
        [](std::exception_ptr p)
        {
            try
            {
                if (p)
                    std::rethrow_exception(p);
            }
            catch (const Error &e)
            {
                const std::string msg = std::string(category_name(e.category())) + ": " + e.what();
                py::set_error(base_error, msg.c_str());
            }
        });

    // ---- geometry

    py::class_<ArrayGeometry>(m, "ArrayGeometry")
        .def(py::init<int, double, std::optional<double>>(), py::arg("num_elements"), py::arg("carrier_freq_hz"),
             py::arg("spacing_m") = std::nullopt)
        .def_property_readonly("num_elements", &ArrayGeometry::num_elements)
        .def_property_readonly("spacing", &ArrayGeometry::spacing)
        .def_property_readonly("wavelength", &ArrayGeometry::wavelength)
        .def_property_readonly("aperture", &ArrayGeometry::aperture)
        .def("positions", &ArrayGeometry::positions);

    py::class_<PolarPoint>(m, "PolarPoint")
        .def(py::init<double, double>(), py::arg("angle"), py::arg("range"))
        .def_static("from_degrees", &PolarPoint::from_degrees, py::arg("angle_deg"), py::arg("range"))
        .def_readwrite("angle", &PolarPoint::angle)
        .def_readwrite("range", &PolarPoint::range)
        .def_property_readonly("angle_deg", &PolarPoint::angle_deg)
        .def("__repr__", [](const PolarPoint &p)
             { return "PolarPoint(angle_deg=" + std::to_string(p.angle_deg()) + ", range=" +
                      std::to_string(p.range) + ")"; });

    m.def("rayleigh_distance", &rayleigh_distance);
    m.def(
        "farfield_steering", [](const ArrayGeometry &g, double angle)
        { return farfield_steering(g, angle).entries; },
        py::arg("geom"), py::arg("angle"));
    m.def(
        "nearfield_focusing", [](const ArrayGeometry &g, const PolarPoint &p, bool amp)
        { return nearfield_focusing(g, p, amp).entries; },
        py::arg("geom"), py::arg("point"), py::arg("amplitude_aware") = false);

    // ---- channel

    m.def(
        "p2p_los_channel",
        [](const ArrayGeometry &tx, const ArrayGeometry &rx, double separation, bool amp)
        { return p2p_los_channel(tx, rx, separation, amp).matrix; },
        py::arg("tx"), py::arg("rx"), py::arg("separation"), py::arg("amplitude_aware") = false);
    m.def(
        "effective_dof",
        [](const ArrayGeometry &tx, const ArrayGeometry &rx, double separation, double threshold_db)
        { return effective_dof(p2p_los_channel(tx, rx, separation), threshold_db); },
        py::arg("tx"), py::arg("rx"), py::arg("separation"), py::arg("threshold_db") = -10.0);
    m.def("channel_correlation", py::overload_cast<const cvec &, const cvec &>(&channel_correlation));

    // ---- scenario and per-user channels

    py::class_<Scenario>(m, "Scenario")
        .def_readwrite("noise_power_w", &Scenario::noise_power_w)
        .def_readwrite("total_power_w", &Scenario::total_power_w)
        .def_readwrite("rho", &Scenario::rho)
        .def_readwrite("rng_seed", &Scenario::rng_seed)
        .def_readwrite("target", &Scenario::target)
        .def_readwrite("snapshots", &Scenario::snapshots)
        .def_readwrite("gamma_db", &Scenario::gamma_db)
        .def_property_readonly("tx_geometry", &Scenario::tx_geometry)
        .def_property_readonly("rx_geometry", &Scenario::rx_geometry)
        .def_property_readonly("user_locations",
                               [](const Scenario &s)
                               {
                                   std::vector<PolarPoint> out;
                                   for (const auto &u : s.users)
                                       out.push_back(u.location);
                                   return out;
                               })
        .def("to_json", &scenario_to_json)
        .def("hash", &scenario_hash);

    m.def("paper_default_scenario", &paper_default_scenario);
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("parse_scenario", &parse_scenario, py::arg("json_text"));
    m.def(
        "user_channels", [](const Scenario &s)
        { return to_vectors(build_user_channels(s)); },
        "True near-field channel vector of every scenario user.");

    // ---- beamforming

    m.def(
        "zf_precoder",
        [](const std::vector<cvec> &channels, double total_power)
        { return zf_precoder(std::span<const cvec>(channels), BeamDesign::nfbf, total_power).columns; },
        py::arg("channels"), py::arg("total_power") = 1.0,
        "Unit-norm zero-forcing columns, one per channel.");
    m.def(
        "beampattern",
        [](const cmat &covariance, const ArrayGeometry &geom, const std::vector<double> &angles,
           const std::vector<double> &ranges)
        { return beampattern(TransmitCovariance::from_matrix(covariance), geom, angles, ranges).power; },
        py::arg("covariance"), py::arg("geom"), py::arg("angles"), py::arg("ranges"));

    // ---- sensing

    py::class_<FimResult>(m, "FimResult")
        .def_readonly("fim", &FimResult::fim)
        .def_readonly("identifiable", &FimResult::identifiable)
        .def_readonly("rcrb_angle", &FimResult::rcrb_angle)
        .def_readonly("rcrb_range", &FimResult::rcrb_range);

    m.def(
        "fisher_information",
        [](const ArrayGeometry &tx, const ArrayGeometry &rx, const PolarPoint &target, const cmat &covariance,
           int snapshots, double noise_power, std::complex<double> gain)
        {
            return fisher_information(EchoModel{target, gain, snapshots, noise_power,
                                                TransmitCovariance::from_matrix(covariance), tx, rx});
        },
        py::arg("tx"), py::arg("rx"), py::arg("target"), py::arg("covariance"), py::arg("snapshots"),
        py::arg("noise_power"), py::arg("reflection_gain") = std::complex<double>(1.0, 0.0));

    m.def(
        "music",
        [](const ArrayGeometry &geom, const std::vector<PolarPoint> &sources, double snr_db, int snapshots,
           std::uint64_t seed, int angle_count, int range_count, double r_min)
        {
            const PolarGrid grid = polar_grid(geom, angle_count, range_count, r_min, RangeSampling::inverse_range);
            const cmat y = simulate_snapshots(geom, sources, snr_db, snapshots, seed);
            return music_2d(y, int(sources.size()), grid, geom).estimates;
        },
        py::arg("geom"), py::arg("sources"), py::arg("snr_db"), py::arg("snapshots"), py::arg("seed") = 1,
        py::arg("angle_count") = 256, py::arg("range_count") = 32, py::arg("r_min") = 2.0,
        "Simulates echoes from `sources` and returns the 2D-MUSIC estimates.");

    // ---- power control

    py::class_<PowerSolution>(m, "PowerSolution")
        .def_readonly("powers", &PowerSolution::powers)
        .def_readonly("total", &PowerSolution::total)
        .def_readonly("feasible", &PowerSolution::feasible)
        .def_readonly("binding", &PowerSolution::binding);

    m.def(
        "min_power",
        [](const Eigen::MatrixXd &gains, double sinr_threshold, double target_power_floor, double noise_power)
        { return min_power(PowerProblem{gains, sinr_threshold, target_power_floor, noise_power}); },
        py::arg("gains"), py::arg("sinr_threshold"), py::arg("target_power_floor"), py::arg("noise_power"));

    // ---- experiment runners: each returns {file name: CSV text}

    m.def(
        "run_dof", [](const Scenario &s)
        { return files_to_dict(run_dof(s, default_dof_distances(s))); });
    m.def(
        "run_correlation", [](const Scenario &s)
        { return files_to_dict(run_correlation(s, s.sweeps.antenna_counts)); });
    m.def(
        "run_tradeoff", [](const Scenario &s)
        { return files_to_dict(run_tradeoff(s, s.sweeps.tradeoff_rho, s.sweeps.tradeoff_target_ranges_m)); });
    m.def(
        "run_power", [](const Scenario &s)
        { return files_to_dict(run_power(s)); });
}
