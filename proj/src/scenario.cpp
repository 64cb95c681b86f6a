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

#include "nfisac/scenario.hpp"
#include "nfisac/errors.hpp"
#include "nfisac/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

using json = nlohmann::json;

namespace nfisac
{
    ArrayGeometry Scenario::tx_geometry() const
    {
        return ArrayGeometry(tx_array.num_elements, carrier_freq_hz, tx_array.spacing_m);
    }

    ArrayGeometry Scenario::rx_geometry() const
    {
        return ArrayGeometry(rx_array.num_elements, carrier_freq_hz, rx_array.spacing_m);
    }

    double Scenario::target_power_floor() const
    {
        return target_power_floor_w.value_or(0.1 * noise_power_w * tx_array.num_elements);
    }

    namespace
    {
        void require(bool ok, const std::string &key, const std::string &what)
        {
            if (!ok)
                throw ValidationError(key, what);
        }

        void check_point(const PolarPoint &p, double min_range, const std::string &key)
        {
            require(std::isfinite(p.angle) && std::abs(p.angle) <= 0.5 * std::numbers::pi, key + ".angle_deg",
                    "must lie in [-90, 90]");
            require(std::isfinite(p.range) && p.range > min_range, key + ".range_m",
                    "must exceed half the array aperture (" + std::to_string(min_range) + " m)");
        }

        void check_array(const ArraySpec &a, const std::string &key)
        {
            require(a.num_elements >= 1, key + ".num_elements", "must be >= 1");
            if (a.spacing_m)
                require(std::isfinite(*a.spacing_m) && *a.spacing_m > 0.0, key + ".spacing_m", "must be positive");
        }

        void check_rho_list(const std::vector<double> &v, const std::string &key)
        {
            require(!v.empty(), key, "must not be empty");
            for (double r : v)
                require(r >= 0.0 && r <= 1.0, key, "entries must lie in [0, 1]");
        }
    }

    void Scenario::validate() const
    {
        require(std::isfinite(carrier_freq_hz) && carrier_freq_hz > 0.0, "carrier_freq_hz", "must be positive");
        check_array(tx_array, "tx_array");
        check_array(rx_array, "rx_array");
        const ArrayGeometry tx = tx_geometry();
        const ArrayGeometry rx = rx_geometry();
        const double tx_half = 0.5 * tx.aperture();
        const double both_half = std::max(tx_half, 0.5 * rx.aperture());

        require(!users.empty(), "users", "must contain at least one user");
        require(int(users.size()) <= tx.num_elements(), "users", "more users than transmit antennas");
        for (size_t u = 0; u < users.size(); ++u)
        {
            const std::string key = "users[" + std::to_string(u) + "]";
            check_point(users[u].location, tx_half, key);
            require(users[u].num_scatterers >= 0 && users[u].num_scatterers <= 8, key + ".num_scatterers",
                    "must lie in [0, 8]");
            for (size_t s = 0; s < users[u].scatterers.size(); ++s)
                check_point(users[u].scatterers[s], tx_half, key + ".scatterers[" + std::to_string(s) + "]");
        }
        require(std::isfinite(scatterer_power_db), "scatterer_power_db", "must be finite");
        check_point(target, both_half, "target");
        require(std::isfinite(reflection_gain.real()) && std::isfinite(reflection_gain.imag()) &&
                    std::abs(reflection_gain) > 0.0,
                "reflection_gain", "must be finite and nonzero");
        require(std::isfinite(total_power_w) && total_power_w > 0.0, "total_power_w", "must be positive");
        require(std::isfinite(noise_power_w) && noise_power_w > 0.0, "noise_power_w", "must be positive");
        require(rho >= 0.0 && rho <= 1.0, "rho", "must lie in [0, 1]");
        for (double g : gamma_db)
            require(std::isfinite(g), "gamma_db", "entries must be finite");
        if (target_power_floor_w)
            require(std::isfinite(*target_power_floor_w) && *target_power_floor_w >= 0.0, "target_power_floor_w",
                    "must be non-negative");
        require(snapshots >= 1, "snapshots", "must be >= 1");
        require(std::isfinite(dof_threshold_db) && dof_threshold_db < 0.0, "dof_threshold_db", "must be negative");
        require(!models.empty(), "models", "must not be empty");

        require(sweeps.dof_distance_min_m > 0.0, "sweeps.dof_distance_min_m", "must be positive");
        if (sweeps.dof_distance_max_m)
            require(*sweeps.dof_distance_max_m > sweeps.dof_distance_min_m, "sweeps.dof_distance_max_m",
                    "must exceed dof_distance_min_m");
        require(sweeps.dof_points >= 2, "sweeps.dof_points", "must be >= 2");
        require(!sweeps.antenna_counts.empty(), "sweeps.antenna_counts", "must not be empty");
        for (int n : sweeps.antenna_counts)
            require(n >= 1, "sweeps.antenna_counts", "entries must be >= 1");
        check_rho_list(sweeps.beampattern_rho, "sweeps.beampattern_rho");
        check_rho_list(sweeps.tradeoff_rho, "sweeps.tradeoff_rho");
        require(sweeps.beampattern_angle_count >= 2, "sweeps.beampattern_angle_count", "must be >= 2");
        require(sweeps.beampattern_range_count >= 2, "sweeps.beampattern_range_count", "must be >= 2");
        require(sweeps.beampattern_r_min_m > tx_half, "sweeps.beampattern_r_min_m",
                "must exceed half the array aperture");
        require(sweeps.beampattern_r_max_m > sweeps.beampattern_r_min_m, "sweeps.beampattern_r_max_m",
                "must exceed beampattern_r_min_m");
        require(!sweeps.tradeoff_target_ranges_m.empty(), "sweeps.tradeoff_target_ranges_m", "must not be empty");
        for (double r : sweeps.tradeoff_target_ranges_m)
            require(std::isfinite(r) && r > both_half, "sweeps.tradeoff_target_ranges_m",
                    "entries must exceed half the array aperture");

        require(std::isfinite(music.snr_db), "music.snr_db", "must be finite");
        require(music.snapshots >= 1, "music.snapshots", "must be >= 1");
        require(music.angle_count >= 2, "music.angle_count", "must be >= 2");
        require(music.range_count >= 2, "music.range_count", "must be >= 2");
        require(music.r_min_m > 0.5 * rx.aperture(), "music.r_min_m", "must exceed half the rx aperture");
        for (size_t s = 0; s < music.sources.size(); ++s)
            check_point(music.sources[s], 0.5 * rx.aperture(), "music.sources[" + std::to_string(s) + "]");
        const size_t n_sources = music.sources.empty() ? 1 : music.sources.size();
        require(int(n_sources) < rx.num_elements(), "music.sources", "need fewer sources than rx elements");
    }

    Scenario paper_default_scenario()
    {
        Scenario s;
        s.users = {{PolarPoint::from_degrees(0.0, 5.0), 2, {}}, {PolarPoint::from_degrees(0.0, 15.0), 2, {}}};
        s.target = PolarPoint::from_degrees(45.0, 5.0);
        // Calibrated once so that NFBF comm-only sum rate is ~24 bit/s/Hz at P = 1 W with rng_seed 1.
        s.noise_power_w = 0.0337;
        for (int g = 0; g <= 20; g += 2)
            s.gamma_db.push_back(g);
        return s;
    }

    // ------------------------------------------------------------------------
    // JSON

    namespace
    {
        class ObjectReader
        {
        public:
            ObjectReader(const json &obj, std::string path) : obj_(obj), path_(std::move(path))
            {
                if (!obj_.is_object())
                    throw ValidationError(path_.empty() ? "<root>" : path_, "expected a JSON object");
            }

            std::string key_path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

            const json *find(const std::string &key)
            {
                allowed_.insert(key);
                auto it = obj_.find(key);
                if (it == obj_.end() || it->is_null())
                    return nullptr;
                return &*it;
            }

            double number(const std::string &key, double fallback)
            {
                const json *v = find(key);
                if (!v)
                    return fallback;
                if (!v->is_number())
                    throw ValidationError(key_path(key), "expected a number");
                return v->get<double>();
            }

            std::optional<double> optional_number(const std::string &key)
            {
                if (!find(key))
                    return std::nullopt;
                return number(key, 0.0);
            }

            int integer(const std::string &key, int fallback)
            {
                const json *v = find(key);
                if (!v)
                    return fallback;
                if (!v->is_number_integer())
                    throw ValidationError(key_path(key), "expected an integer");
                return v->get<int>();
            }

            std::uint64_t unsigned_integer(const std::string &key, std::uint64_t fallback)
            {
                const json *v = find(key);
                if (!v)
                    return fallback;
                if (!v->is_number_unsigned())
                    throw ValidationError(key_path(key), "expected a non-negative integer");
                return v->get<std::uint64_t>();
            }

            bool boolean(const std::string &key, bool fallback)
            {
                const json *v = find(key);
                if (!v)
                    return fallback;
                if (!v->is_boolean())
                    throw ValidationError(key_path(key), "expected true or false");
                return v->get<bool>();
            }

            const json *array(const std::string &key)
            {
                const json *v = find(key);
                if (v && !v->is_array())
                    throw ValidationError(key_path(key), "expected an array");
                return v;
            }

            void finish() const
            {
                for (auto it = obj_.begin(); it != obj_.end(); ++it)
                    if (!allowed_.count(it.key()))
                        throw ValidationError(key_path(it.key()), "unknown key");
            }

        private:
            const json &obj_;
            std::string path_;
            std::set<std::string> allowed_;
        };

        std::vector<double> number_list(ObjectReader &r, const std::string &key, std::vector<double> fallback)
        {
            const json *v = r.array(key);
            if (!v)
                return fallback;
            std::vector<double> out;
            for (const auto &e : *v)
            {
                if (!e.is_number())
                    throw ValidationError(r.key_path(key), "entries must be numbers");
                out.push_back(e.get<double>());
            }
            return out;
        }

        PolarPoint read_point(const json &j, const std::string &path)
        {
            ObjectReader r(j, path);
            const json *a = r.find("angle_deg");
            const json *d = r.find("range_m");
            if (!a || !d)
                throw ValidationError(path, "requires angle_deg and range_m");
            PolarPoint p = PolarPoint::from_degrees(r.number("angle_deg", 0.0), r.number("range_m", 0.0));
            r.finish();
            return p;
        }

        std::vector<PolarPoint> point_list(ObjectReader &r, const std::string &key)
        {
            std::vector<PolarPoint> out;
            if (const json *v = r.array(key))
                for (size_t i = 0; i < v->size(); ++i)
                    out.push_back(read_point((*v)[i], r.key_path(key) + "[" + std::to_string(i) + "]"));
            return out;
        }

        ArraySpec read_array(const json &j, const std::string &path)
        {
            ObjectReader r(j, path);
            ArraySpec a;
            a.num_elements = r.integer("num_elements", a.num_elements);
            a.spacing_m = r.optional_number("spacing_m");
            r.finish();
            return a;
        }

        json point_json(const PolarPoint &p)
        {
            return {{"angle_deg", p.angle_deg()}, {"range_m", p.range}};
        }

        json array_json(const ArraySpec &a)
        {
            json j = {{"num_elements", a.num_elements}};
            if (a.spacing_m)
                j["spacing_m"] = *a.spacing_m;
            return j;
        }

        Scenario scenario_from_json(const json &root)
        {
            Scenario s = paper_default_scenario();
            ObjectReader r(root, "");

            s.carrier_freq_hz = r.number("carrier_freq_hz", s.carrier_freq_hz);
            if (const json *v = r.find("tx_array"))
                s.tx_array = read_array(*v, "tx_array");
            if (const json *v = r.find("rx_array"))
                s.rx_array = read_array(*v, "rx_array");

            if (const json *v = r.array("users"))
            {
                s.users.clear();
                for (size_t i = 0; i < v->size(); ++i)
                {
                    const std::string path = "users[" + std::to_string(i) + "]";
                    ObjectReader ur((*v)[i], path);
                    UserSpec u;
                    const json *a = ur.find("angle_deg");
                    const json *d = ur.find("range_m");
                    if (!a || !d)
                        throw ValidationError(path, "requires angle_deg and range_m");
                    u.location = PolarPoint::from_degrees(ur.number("angle_deg", 0.0), ur.number("range_m", 0.0));
                    u.scatterers = point_list(ur, "scatterers");
                    const bool explicit_count = ur.find("num_scatterers") != nullptr;
                    u.num_scatterers = ur.integer("num_scatterers", u.scatterers.empty() ? 2 : int(u.scatterers.size()));
                    if (explicit_count && !u.scatterers.empty() && u.num_scatterers != int(u.scatterers.size()))
                        throw ValidationError(path + ".num_scatterers", "disagrees with the scatterers list");
                    ur.finish();
                    s.users.push_back(std::move(u));
                }
            }

            s.scatterer_power_db = r.number("scatterer_power_db", s.scatterer_power_db);
            if (const json *v = r.find("target"))
                s.target = read_point(*v, "target");
            if (const json *v = r.find("reflection_gain"))
            {
                ObjectReader gr(*v, "reflection_gain");
                s.reflection_gain = {gr.number("re", 1.0), gr.number("im", 0.0)};
                gr.finish();
            }
            s.total_power_w = r.number("total_power_w", s.total_power_w);
            s.noise_power_w = r.number("noise_power_w", s.noise_power_w);
            s.rho = r.number("rho", s.rho);
            s.gamma_db = number_list(r, "gamma_db", s.gamma_db);
            s.target_power_floor_w = r.optional_number("target_power_floor_w");
            s.snapshots = r.integer("snapshots", s.snapshots);
            s.dof_threshold_db = r.number("dof_threshold_db", s.dof_threshold_db);
            s.amplitude_aware = r.boolean("amplitude_aware", s.amplitude_aware);
            s.rng_seed = r.unsigned_integer("rng_seed", s.rng_seed);

            if (const json *v = r.array("models"))
            {
                s.models.clear();
                for (const auto &m : *v)
                {
                    if (!m.is_string())
                        throw ValidationError("models", "entries must be \"NFBF\" or \"FFBF\"");
                    try
                    {
                        s.models.push_back(beam_design_from_string(m.get<std::string>()));
                    }
                    catch (const InvalidArgument &e)
                    {
                        throw ValidationError("models", e.what());
                    }
                }
            }

            if (const json *v = r.find("sweeps"))
            {
                ObjectReader sr(*v, "sweeps");
                SweepSpec &w = s.sweeps;
                w.dof_distance_min_m = sr.number("dof_distance_min_m", w.dof_distance_min_m);
                w.dof_distance_max_m = sr.optional_number("dof_distance_max_m");
                w.dof_points = sr.integer("dof_points", w.dof_points);
                if (const json *a = sr.array("antenna_counts"))
                {
                    w.antenna_counts.clear();
                    for (const auto &e : *a)
                    {
                        if (!e.is_number_integer())
                            throw ValidationError("sweeps.antenna_counts", "entries must be integers");
                        w.antenna_counts.push_back(e.get<int>());
                    }
                }
                w.beampattern_rho = number_list(sr, "beampattern_rho", w.beampattern_rho);
                w.beampattern_angle_count = sr.integer("beampattern_angle_count", w.beampattern_angle_count);
                w.beampattern_range_count = sr.integer("beampattern_range_count", w.beampattern_range_count);
                w.beampattern_r_min_m = sr.number("beampattern_r_min_m", w.beampattern_r_min_m);
                w.beampattern_r_max_m = sr.number("beampattern_r_max_m", w.beampattern_r_max_m);
                w.tradeoff_rho = number_list(sr, "tradeoff_rho", w.tradeoff_rho);
                w.tradeoff_target_ranges_m = number_list(sr, "tradeoff_target_ranges_m", w.tradeoff_target_ranges_m);
                sr.finish();
            }

            if (const json *v = r.find("music"))
            {
                ObjectReader mr(*v, "music");
                MusicSpec &m = s.music;
                m.snr_db = mr.number("snr_db", m.snr_db);
                m.snapshots = mr.integer("snapshots", m.snapshots);
                m.angle_count = mr.integer("angle_count", m.angle_count);
                m.range_count = mr.integer("range_count", m.range_count);
                m.r_min_m = mr.number("r_min_m", m.r_min_m);
                m.sources = point_list(mr, "sources");
                mr.finish();
            }

            r.finish();
            return s;
        }

        std::string line_context(const std::string &text, std::size_t byte)
        {
            std::size_t line = 1, col = 1;
            for (std::size_t i = 0; i < byte && i < text.size(); ++i)
            {
                if (text[i] == '\n')
                    ++line, col = 1;
                else
                    ++col;
            }
            return "line " + std::to_string(line) + ", column " + std::to_string(col);
        }
    }

    Scenario parse_scenario(const std::string &json_text)
    {
        json root;
        try
        {
            root = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw ParseError("scenario JSON parse error at " + line_context(json_text, e.byte) + ": " + e.what());
        }

        Scenario s;
        try
        {
            s = scenario_from_json(root);
        }
        catch (const json::exception &e)
        {
            throw ValidationError("<scenario>", e.what());
        }
        s.validate();
        return s;
    }

    Scenario load_scenario(const std::string &path)
    {
        if (path == "paper-default")
        {
            Scenario s = paper_default_scenario();
            s.validate();
            return s;
        }
        std::ifstream in(path);
        if (!in)
            throw NotFoundError("scenario file not found: " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        try
        {
            return parse_scenario(buf.str());
        }
        catch (const ParseError &e)
        {
            throw ParseError(path + ": " + e.what());
        }
    }

    std::string scenario_to_json(const Scenario &s)
    {
        json j;
        j["carrier_freq_hz"] = s.carrier_freq_hz;
        j["tx_array"] = array_json(s.tx_array);
        j["rx_array"] = array_json(s.rx_array);
        j["users"] = json::array();
        for (const auto &u : s.users)
        {
            json ju = point_json(u.location);
            ju["num_scatterers"] = u.scatterers.empty() ? u.num_scatterers : int(u.scatterers.size());
            if (!u.scatterers.empty())
            {
                ju["scatterers"] = json::array();
                for (const auto &p : u.scatterers)
                    ju["scatterers"].push_back(point_json(p));
            }
            j["users"].push_back(ju);
        }
        j["scatterer_power_db"] = s.scatterer_power_db;
        j["target"] = point_json(s.target);
        j["reflection_gain"] = {{"re", s.reflection_gain.real()}, {"im", s.reflection_gain.imag()}};
        j["total_power_w"] = s.total_power_w;
        j["noise_power_w"] = s.noise_power_w;
        j["rho"] = s.rho;
        j["gamma_db"] = s.gamma_db;
        if (s.target_power_floor_w)
            j["target_power_floor_w"] = *s.target_power_floor_w;
        j["snapshots"] = s.snapshots;
        j["dof_threshold_db"] = s.dof_threshold_db;
        j["amplitude_aware"] = s.amplitude_aware;
        j["rng_seed"] = s.rng_seed;
        j["models"] = json::array();
        for (auto m : s.models)
            j["models"].push_back(std::string(to_string(m)));

        const SweepSpec &w = s.sweeps;
        json jw = {{"dof_distance_min_m", w.dof_distance_min_m},
                   {"dof_points", w.dof_points},
                   {"antenna_counts", w.antenna_counts},
                   {"beampattern_rho", w.beampattern_rho},
                   {"beampattern_angle_count", w.beampattern_angle_count},
                   {"beampattern_range_count", w.beampattern_range_count},
                   {"beampattern_r_min_m", w.beampattern_r_min_m},
                   {"beampattern_r_max_m", w.beampattern_r_max_m},
                   {"tradeoff_rho", w.tradeoff_rho},
                   {"tradeoff_target_ranges_m", w.tradeoff_target_ranges_m}};
        if (w.dof_distance_max_m)
            jw["dof_distance_max_m"] = *w.dof_distance_max_m;
        j["sweeps"] = jw;

        json jm = {{"snr_db", s.music.snr_db},
                   {"snapshots", s.music.snapshots},
                   {"angle_count", s.music.angle_count},
                   {"range_count", s.music.range_count},
                   {"r_min_m", s.music.r_min_m}};
        if (!s.music.sources.empty())
        {
            jm["sources"] = json::array();
            for (const auto &p : s.music.sources)
                jm["sources"].push_back(point_json(p));
        }
        j["music"] = jm;
        return j.dump(2);
    }

    std::uint64_t scenario_hash(const Scenario &scenario)
    {
        const std::string text = scenario_to_json(scenario);
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : text)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::vector<std::vector<PolarPoint>> place_scatterers(const Scenario &scenario)
    {
        const double guard = deg2rad(5.0);
        std::vector<double> taken;
        for (const auto &u : scenario.users)
        {
            taken.push_back(u.location.angle);
            for (const auto &p : u.scatterers)
                taken.push_back(p.angle);
        }

        CounterRng rng(scenario.rng_seed, 0x5CA77E12ULL);
        std::vector<std::vector<PolarPoint>> out(scenario.users.size());
        for (size_t u = 0; u < scenario.users.size(); ++u)
        {
            if (!scenario.users[u].scatterers.empty())
            {
                out[u] = scenario.users[u].scatterers;
                continue;
            }
            for (int i = 0; i < scenario.users[u].num_scatterers; ++i)
            {
                bool placed = false;
                for (int attempt = 0; attempt < 10000 && !placed; ++attempt)
                {
                    const double magnitude = rng.uniform(10.0, 60.0);
                    const double angle = deg2rad(rng.uniform() < 0.5 ? -magnitude : magnitude);
                    const double range = rng.uniform(5.0, 50.0);
                    bool clear = true;
                    for (double t : taken)
                        clear = clear && std::abs(t - angle) >= guard;
                    if (!clear)
                        continue;
                    taken.push_back(angle);
                    out[u].push_back({angle, range});
                    placed = true;
                }
                if (!placed)
                    throw ValidationError("users[" + std::to_string(u) + "].num_scatterers",
                                          "cannot place scatterers with the 5 deg angular guard");
            }
        }
        return out;
    }

    std::vector<UserChannel> build_user_channels(const Scenario &scenario)
    {
        const ArrayGeometry geom = scenario.tx_geometry();
        const auto scatterers = place_scatterers(scenario);
        UserChannelOptions options{scenario.scatterer_power_db, scenario.amplitude_aware};

        std::vector<UserChannel> out;
        for (size_t u = 0; u < scenario.users.size(); ++u)
            out.push_back(user_channel(geom, scenario.users[u].location, scatterers[u], ChannelModel::near_field,
                                       scenario.rng_seed, u + 1, options));
        return out;
    }
}
