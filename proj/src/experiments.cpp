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

#include "nfisac/experiments.hpp"
#include "nfisac/csv.hpp"
#include "nfisac/errors.hpp"
#include "nfisac/numeric.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace nfisac
{
    namespace
    {
        double to_db(double p)
        {
            return 10.0 * std::log10(std::max(p, 1e-30));
        }

        CsvWriter start_csv(const Scenario &s, std::string_view runner)
        {
            CsvWriter w;
            w.comment(provenance_line(runner, s.rng_seed, scenario_hash(s)));
            return w;
        }

        std::vector<cvec> vectors_of(std::span<const UserChannel> channels)
        {
            std::vector<cvec> out;
            for (const auto &c : channels)
                out.push_back(c.vector);
            return out;
        }

        // Design-model channels and the resulting ZF precoder.
        Precoder design_precoder(const Scenario &s, const ArrayGeometry &geom, std::span<const UserChannel> truth,
                                 BeamDesign model)
        {
            std::vector<cvec> design;
            for (const auto &c : truth)
                design.push_back(with_model(c, geom, design_channel_model(model), s.amplitude_aware).vector);
            return zf_precoder(std::span<const cvec>(design), model, s.total_power_w);
        }
    }

    void write_outputs(const std::string &dir, std::span<const OutputFile> files)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw IoError("cannot create output directory " + dir + ": " + ec.message());
        for (const auto &f : files)
        {
            const auto path = std::filesystem::path(dir) / f.name;
            std::ofstream out(path, std::ios::binary);
            out << f.contents;
            if (!out)
                throw IoError("cannot write " + path.string());
        }
    }

    // ------------------------------------------------------------------------

    std::vector<double> default_dof_distances(const Scenario &scenario)
    {
        const ArrayGeometry tx = scenario.tx_geometry();
        const double hi = scenario.sweeps.dof_distance_max_m.value_or(10.0 * rayleigh_distance(tx));
        return logspace(scenario.sweeps.dof_distance_min_m, hi, scenario.sweeps.dof_points);
    }

    std::vector<DofPoint> dof_curve(const Scenario &scenario, std::span<const double> distances)
    {
        const ArrayGeometry tx = scenario.tx_geometry();
        const ArrayGeometry rx = scenario.rx_geometry();
        std::vector<DofPoint> out;
        for (double d : distances)
            out.push_back({d, effective_dof(p2p_los_channel(tx, rx, d, scenario.amplitude_aware),
                                            scenario.dof_threshold_db)});
        return out;
    }

    std::vector<OutputFile> run_dof(const Scenario &scenario, std::span<const double> distances)
    {
        if (distances.empty())
            throw InvalidArgument("dof: distance grid is empty");
        const double rd = rayleigh_distance(scenario.tx_geometry());
        CsvWriter w = start_csv(scenario, "dof");
        w.comment("threshold_db=" + format_number(scenario.dof_threshold_db));
        w.header({"distance_m", "dof", "rayleigh_distance_m", "beyond_rayleigh"});
        for (const auto &p : dof_curve(scenario, distances))
            w.row({p.distance_m, (long long)p.dof, rd, (long long)(p.distance_m >= rd)});
        return {{"dof.csv", w.str()}};
    }

    // ------------------------------------------------------------------------

    std::vector<CorrelationPoint> correlation_curve(const Scenario &scenario, std::span<const int> antenna_counts)
    {
        if (scenario.users.size() < 2)
            throw InvalidArgument("correlation: scenario needs at least two users");
        const PolarPoint u1 = scenario.users[0].location;
        const PolarPoint u2 = scenario.users[1].location;

        std::vector<CorrelationPoint> out;
        for (int n : antenna_counts)
        {
            const ArrayGeometry geom(n, scenario.carrier_freq_hz, scenario.tx_array.spacing_m);
            const PathComponent los1{u1, {1.0, 0.0}, PathKind::line_of_sight};
            const PathComponent los2{u2, {1.0, 0.0}, PathKind::line_of_sight};
            const auto h = [&](const PathComponent &p, ChannelModel m)
            { return assemble_channel(geom, std::span<const PathComponent>(&p, 1), m, scenario.amplitude_aware); };
            out.push_back({n, channel_correlation(h(los1, ChannelModel::far_field), h(los2, ChannelModel::far_field)),
                           channel_correlation(h(los1, ChannelModel::near_field), h(los2, ChannelModel::near_field))});
        }
        return out;
    }

    std::vector<OutputFile> run_correlation(const Scenario &scenario, std::span<const int> antenna_counts)
    {
        if (antenna_counts.empty())
            throw InvalidArgument("correlation: antenna grid is empty");
        CsvWriter w = start_csv(scenario, "correlation");
        w.header({"num_antennas", "corr_plane", "corr_spherical"});
        for (const auto &p : correlation_curve(scenario, antenna_counts))
            w.row({(long long)p.num_antennas, p.plane, p.spherical});
        return {{"correlation.csv", w.str()}};
    }

    // ------------------------------------------------------------------------

    std::vector<BeampatternPanel> beampattern_panels(const Scenario &scenario, std::span<const double> rho_list,
                                                     std::span<const BeamDesign> models)
    {
        const ArrayGeometry geom = scenario.tx_geometry();
        const auto truth = build_user_channels(scenario);
        const SweepSpec &sw = scenario.sweeps;

        std::vector<double> angles = linspace(-90.0, 90.0, sw.beampattern_angle_count);
        for (double &a : angles)
            a = deg2rad(a);
        const std::vector<double> ranges = logspace(sw.beampattern_r_min_m, sw.beampattern_r_max_m,
                                                    sw.beampattern_range_count);

        std::vector<BeampatternPanel> out;
        for (BeamDesign model : models)
        {
            const Precoder zf = design_precoder(scenario, geom, truth, model);
            const cvec sense = sensing_beam(geom, scenario.target, model);
            for (double rho : rho_list)
            {
                const TransmitCovariance cov = isac_covariance(zf, sense, rho, scenario.total_power_w);
                out.push_back({model, rho, beampattern(cov, geom, angles, ranges, scenario.amplitude_aware)});
            }
        }
        return out;
    }

    std::vector<OutputFile> run_beampattern(const Scenario &scenario, std::span<const double> rho_list,
                                            std::span<const BeamDesign> models)
    {
        if (rho_list.empty() || models.empty())
            throw InvalidArgument("beampattern: rho list and model list must be non-empty");

        std::vector<OutputFile> files;
        for (const auto &panel : beampattern_panels(scenario, rho_list, models))
        {
            const std::string stem =
                "beampattern_" + std::string(to_string(panel.model)) + "_rho" + format_number(panel.rho);
            const BeampatternGrid &g = panel.grid;

            CsvWriter w = start_csv(scenario, "beampattern");
            w.comment("model=" + std::string(to_string(panel.model)) + " rho=" + format_number(panel.rho));
            w.header({"angle_deg", "range_m", "power_db"});
            for (size_t i = 0; i < g.angles.size(); ++i)
                for (size_t j = 0; j < g.ranges.size(); ++j)
                    w.row({rad2deg(g.angles[i]), g.ranges[j], to_db(g.power(i, j))});
            files.push_back({stem + ".csv", w.str()});

            // gnuplot "nonuniform matrix": first row <n> <ranges...>, then <angle> <values...>
            std::string mat = "# " + provenance_line("beampattern", scenario.rng_seed, scenario_hash(scenario)) + "\n";
            mat += format_number(double(g.ranges.size()));
            for (double r : g.ranges)
                mat += " " + format_number(r);
            mat += "\n";
            for (size_t i = 0; i < g.angles.size(); ++i)
            {
                mat += format_number(rad2deg(g.angles[i]));
                for (size_t j = 0; j < g.ranges.size(); ++j)
                    mat += " " + format_number(to_db(g.power(i, j)));
                mat += "\n";
            }
            files.push_back({stem + ".dat", std::move(mat)});
        }
        return files;
    }

    // ------------------------------------------------------------------------

    std::vector<Frontier> tradeoff_frontiers(const Scenario &scenario, std::span<const double> rho_grid,
                                             std::span<const double> target_ranges)
    {
        const ArrayGeometry tx = scenario.tx_geometry();
        const ArrayGeometry rx = scenario.rx_geometry();
        const auto truth_channels = build_user_channels(scenario);
        const auto truth = vectors_of(truth_channels);

        std::vector<Frontier> out;
        for (BeamDesign model : scenario.models)
        {
            const Precoder zf = design_precoder(scenario, tx, truth_channels, model);
            for (double range : target_ranges)
            {
                const PolarPoint target{scenario.target.angle, range};
                const cvec sense = sensing_beam(tx, target, model);
                Frontier f{model, range, {}};
                for (double rho : rho_grid)
                {
                    const LinkBudget link = sinr_and_rate(truth, zf, sense, rho, scenario.total_power_w,
                                                          scenario.noise_power_w);
                    const EchoModel echo{target,
                                         scenario.reflection_gain,
                                         scenario.snapshots,
                                         scenario.noise_power_w,
                                         isac_covariance(zf, sense, rho, scenario.total_power_w),
                                         tx,
                                         rx};
                    const FimResult fim = fisher_information(echo);
                    f.points.push_back({rho, link.sum_rate, fim.rcrb_angle, fim.rcrb_range, fim.identifiable});
                }
                out.push_back(std::move(f));
            }
        }
        return out;
    }

    std::vector<OutputFile> run_tradeoff(const Scenario &scenario, std::span<const double> rho_grid,
                                         std::span<const double> target_ranges)
    {
        if (rho_grid.empty() || target_ranges.empty())
            throw InvalidArgument("tradeoff: rho grid and target ranges must be non-empty");
        const auto frontiers = tradeoff_frontiers(scenario, rho_grid, target_ranges);

        std::vector<OutputFile> files;
        for (double range : target_ranges)
        {
            CsvWriter w = start_csv(scenario, "tradeoff");
            w.comment("target_angle_deg=" + format_number(scenario.target.angle_deg()) +
                      " target_range_m=" + format_number(range));
            w.header({"rho", "rate_bps_hz", "rcrb_angle_deg", "rcrb_range_m", "model_tag"});
            for (const auto &f : frontiers)
            {
                if (f.target_range_m != range)
                    continue;
                for (const auto &p : f.points)
                    w.row({p.rho, p.sum_rate, rad2deg(p.rcrb_angle), p.rcrb_range, std::string(to_string(f.model))});
            }
            files.push_back({"tradeoff_r" + format_number(range) + "m.csv", w.str()});
        }
        return files;
    }

    // ------------------------------------------------------------------------

    std::vector<PowerTableRow> power_table(const Scenario &scenario)
    {
        const ArrayGeometry tx = scenario.tx_geometry();
        const auto truth = build_user_channels(scenario);
        const double floor = scenario.target_power_floor();

        const auto nf = power_sweep(tx, truth, scenario.target, BeamDesign::nfbf, scenario.gamma_db, floor,
                                    scenario.noise_power_w, scenario.amplitude_aware);
        const auto ff = power_sweep(tx, truth, scenario.target, BeamDesign::ffbf, scenario.gamma_db, floor,
                                    scenario.noise_power_w, scenario.amplitude_aware);

        std::vector<PowerTableRow> out;
        for (size_t i = 0; i < nf.size(); ++i)
            out.push_back({nf[i].gamma_db, nf[i].total_power, ff[i].total_power, nf[i].feasible, ff[i].feasible});
        return out;
    }

    std::vector<OutputFile> run_power(const Scenario &scenario)
    {
        CsvWriter w = start_csv(scenario, "power");
        w.comment("target_power_floor_w=" + format_number(scenario.target_power_floor()) +
                  " noise_power_w=" + format_number(scenario.noise_power_w));
        w.header({"gamma_db", "total_power_w_nfbf", "total_power_w_ffbf", "feasible_nfbf", "feasible_ffbf"});
        for (const auto &r : power_table(scenario))
            w.row({r.gamma_db, r.total_nfbf, r.total_ffbf, (long long)r.feasible_nfbf, (long long)r.feasible_ffbf});
        return {{"power.csv", w.str()}};
    }

    // ------------------------------------------------------------------------

    std::vector<OutputFile> run_channels(const Scenario &scenario)
    {
        const ArrayGeometry tx = scenario.tx_geometry();
        const auto truth = build_user_channels(scenario);

        CsvWriter w = start_csv(scenario, "channels");
        w.header({"user", "model", "element", "re", "im"});
        for (size_t k = 0; k < truth.size(); ++k)
            for (BeamDesign model : scenario.models)
            {
                const cvec h = with_model(truth[k], tx, design_channel_model(model), scenario.amplitude_aware).vector;
                for (Eigen::Index n = 0; n < h.size(); ++n)
                    w.row({(long long)k, std::string(to_string(model)), (long long)n, h[n].real(), h[n].imag()});
            }

        CsvWriter paths = start_csv(scenario, "channels");
        paths.header({"user", "path", "kind", "angle_deg", "range_m", "gain_re", "gain_im"});
        for (size_t k = 0; k < truth.size(); ++k)
            for (size_t p = 0; p < truth[k].paths.size(); ++p)
            {
                const PathComponent &c = truth[k].paths[p];
                paths.row({(long long)k, (long long)p,
                           std::string(c.kind == PathKind::line_of_sight ? "los" : "scatterer"),
                           c.location.angle_deg(), c.location.range, c.gain.real(), c.gain.imag()});
            }
        return {{"channels.csv", w.str()}, {"paths.csv", paths.str()}};
    }

    // ------------------------------------------------------------------------

    MusicRun music_run(const Scenario &scenario, double snr_db, int snapshots, std::uint64_t trial)
    {
        const ArrayGeometry rx = scenario.rx_geometry();
        MusicRun run;
        run.sources = scenario.music.sources.empty() ? std::vector<PolarPoint>{scenario.target} : scenario.music.sources;
        run.grid = polar_grid(rx, scenario.music.angle_count, scenario.music.range_count, scenario.music.r_min_m,
                              RangeSampling::inverse_range);
        const cmat y = simulate_snapshots(rx, run.sources, snr_db, snapshots, scenario.rng_seed, 0x4D5553ULL + trial);
        run.result = music_2d(y, int(run.sources.size()), run.grid, rx);
        return run;
    }

    std::vector<OutputFile> run_music(const Scenario &scenario, double snr_db, int snapshots)
    {
        const MusicRun run = music_run(scenario, snr_db, snapshots);
        const Eigen::MatrixXd &s = run.result.spectrum;
        const double peak = s.maxCoeff();

        CsvWriter spectrum = start_csv(scenario, "music");
        spectrum.comment("snr_db=" + format_number(snr_db) + " snapshots=" + std::to_string(snapshots));
        for (const auto &warning : run.result.warnings)
            spectrum.comment("warning: " + warning);
        spectrum.header({"angle_deg", "range_m", "spectrum_db"});
        for (size_t i = 0; i < run.grid.angles.size(); ++i)
            for (size_t j = 0; j < run.grid.ranges.size(); ++j)
                spectrum.row({rad2deg(run.grid.angles[i]), run.grid.ranges[j], to_db(s(i, j) / peak)});

        CsvWriter est = start_csv(scenario, "music");
        est.header({"index", "angle_deg", "range_m", "spectrum_db"});
        for (size_t k = 0; k < run.result.estimates.size(); ++k)
            est.row({(long long)k, run.result.estimates[k].angle_deg(), run.result.estimates[k].range,
                     to_db(run.result.peaks[k].value / peak)});

        return {{"music_spectrum.csv", spectrum.str()}, {"music_estimates.csv", est.str()}};
    }
}
