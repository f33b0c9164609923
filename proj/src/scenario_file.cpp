// SPDX-License-Identifier: Apache-2.0
//
// cspa - channel static partner antenna simulator and analysis toolkit
// Copyright (C) 2026 The cspa authors
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

#include "cspa/scenario_file.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace cspa
{
    namespace
    {
        using Handler = std::function<void(const KeyValueEntry &)>;

        [[noreturn]] void fail(const KeyValueEntry &e, const std::string &section, const std::string &what)
        {
            throw ConfigError(e.line, "[" + section + "] " + e.key + ": " + what);
        }

        double number(const KeyValueEntry &e, const std::string &section)
        {
            auto v = parse_double(e.value);
            if (!v)
                fail(e, section, "expected a number, got '" + e.value + "'");
            return *v;
        }

        Vec3 vector3(const KeyValueEntry &e, const std::string &section)
        {
            try
            {
                return parse_vec3(e.value);
            }
            catch (const std::invalid_argument &ex)
            {
                fail(e, section, ex.what());
            }
        }

        MotionAssignment motion(const KeyValueEntry &e, const std::string &section)
        {
            try
            {
                return parse_motion(e.value);
            }
            catch (const std::invalid_argument &ex)
            {
                fail(e, section, ex.what());
            }
        }

        // Dispatches every entry of a section to its handler; unknown keys are errors
        void apply(const KeyValueSection &section, const std::map<std::string, Handler> &handlers)
        {
            for (const auto &e : section.entries)
            {
                auto it = handlers.find(e.key);
                if (it == handlers.end())
                    fail(e, section.name, "unknown key");
                it->second(e);
            }
        }

        std::string vec(const Vec3 &v) { return fmt::format("{:.17g}, {:.17g}, {:.17g}", v.x, v.y, v.z); }
    }

    Vec3 parse_vec3(std::string_view text)
    {
        double c[3];
        for (int i = 0; i < 3; ++i)
        {
            std::size_t comma = text.find(',');
            if ((i < 2) != (comma != std::string_view::npos))
                throw std::invalid_argument("expected three comma-separated components");
            auto v = parse_double(text.substr(0, comma));
            if (!v)
                throw std::invalid_argument("invalid vector component '" + std::string(trim(text.substr(0, comma))) + "'");
            c[i] = *v;
            if (comma != std::string_view::npos)
                text.remove_prefix(comma + 1);
        }
        return {c[0], c[1], c[2]};
    }

    MotionAssignment parse_motion(std::string_view text)
    {
        text = trim(text);
        if (text == "static")
            return MotionAssignment::stationary();
        if (text == "along_T")
            return MotionAssignment::along_trajectory();
        constexpr std::string_view scaled = "along_T_scaled(";
        if (text.substr(0, scaled.size()) == scaled && text.back() == ')')
        {
            auto f = parse_double(text.substr(scaled.size(), text.size() - scaled.size() - 1));
            if (!f)
                throw std::invalid_argument("invalid scale factor in '" + std::string(text) + "'");
            return MotionAssignment::scaled(*f);
        }
        throw std::invalid_argument("unknown motion '" + std::string(text) + "' (static, along_T, along_T_scaled(f))");
    }

    std::string format_motion(const MotionAssignment &m)
    {
        switch (m.mode)
        {
        case MotionMode::stationary:
            return "static";
        case MotionMode::along_trajectory:
            return "along_T";
        case MotionMode::along_trajectory_scaled:
            return fmt::format("along_T_scaled({:.17g})", m.factor);
        }
        return "static";
    }

    Scenario parse_scenario(std::istream &in)
    {
        KeyValueDocument doc = parse_keyvalue(in);
        Scenario s = default_scenario();
        s.objects.clear();

        bool origin_given = false, step_given = false, tx_given = false, rx_given = false;
        bool antennas_reset = false;

        for (const auto &section : doc.sections)
        {
            const std::string &name = section.name;
            if (name == "carrier")
            {
                apply(section, {{"frequency_hz", [&](const auto &e) { s.carrier.frequency_hz = number(e, name); }},
                                {"medium_index", [&](const auto &e) { s.carrier.medium_index = number(e, name); }}});
            }
            else if (name == "trajectory")
            {
                apply(section, {{"origin", [&](const auto &e) { s.trajectory.origin = vector3(e, name), origin_given = true; }},
                                {"direction", [&](const auto &e) { s.trajectory.direction = vector3(e, name); }},
                                {"total_length_m", [&](const auto &e) { s.trajectory.total_length = number(e, name); }},
                                {"step_length_m", [&](const auto &e) { s.trajectory.step_length = number(e, name), step_given = true; }}});
            }
            else if (name.rfind("antenna.", 0) == 0)
            {
                if (!antennas_reset)
                    s.antennas.clear(), antennas_reset = true;
                Antenna a{name.substr(8), Vec3{}, 0.0, MotionAssignment::stationary()};
                if (a.id.empty())
                    throw ConfigError(section.line, "antenna section needs an id: [antenna.<id>]");
                bool has_position = false;
                apply(section, {{"position", [&](const auto &e) { a.initial_position = vector3(e, name), has_position = true; }},
                                {"gain_dbi", [&](const auto &e) { a.gain_dbi = number(e, name); }},
                                {"motion", [&](const auto &e) { a.motion = motion(e, name); }}});
                if (!has_position)
                    throw ConfigError(section.line, "[" + name + "] position: missing required key");
                s.antennas.push_back(std::move(a));
            }
            else if (name.rfind("object.", 0) == 0)
            {
                const KeyValueEntry *kind = section.find("kind");
                if (!kind)
                    throw ConfigError(section.line, "[" + name + "] kind: missing required key");
                EnvironmentObject obj;
                if (kind->value == "point_scatterer")
                {
                    PointScatterer ps;
                    bool has_position = false;
                    apply(section, {{"kind", [](const auto &) {}},
                                    {"position", [&](const auto &e) { ps.position = vector3(e, name), has_position = true; }},
                                    {"reflectivity", [&](const auto &e) { ps.reflectivity = number(e, name); }},
                                    {"motion", [&](const auto &e) { obj.motion = motion(e, name); }}});
                    if (!has_position)
                        throw ConfigError(section.line, "[" + name + "] position: missing required key");
                    obj.shape = ps;
                }
                else if (kind->value == "plane_reflector")
                {
                    PlaneReflector pl;
                    bool has_point = false, has_normal = false;
                    apply(section, {{"kind", [](const auto &) {}},
                                    {"point", [&](const auto &e) { pl.point = vector3(e, name), has_point = true; }},
                                    {"normal", [&](const auto &e) { pl.normal = vector3(e, name), has_normal = true; }},
                                    {"reflectivity", [&](const auto &e) { pl.reflectivity = number(e, name); }},
                                    {"motion", [&](const auto &e) { obj.motion = motion(e, name); }}});
                    if (!has_point || !has_normal)
                        throw ConfigError(section.line, "[" + name + "] point and normal are required for a plane_reflector");
                    obj.shape = pl;
                }
                else
                    fail(*kind, name, "unknown kind '" + kind->value + "' (point_scatterer, plane_reflector)");
                s.objects.push_back(obj);
            }
            else if (name == "noise")
            {
                apply(section, {{"positioning_accuracy_m", [&](const auto &e) { s.noise.positioning_accuracy = number(e, name); }},
                                {"settling_epsilon", [&](const auto &e) { s.noise.settling_epsilon = number(e, name); }},
                                {"settling_tau_s", [&](const auto &e) { s.noise.settling_tau = number(e, name); }},
                                {"seed", [&](const auto &e) {
                                     std::string_view v = trim(e.value);
                                     auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s.noise.seed);
                                     if (ec != std::errc() || ptr != v.data() + v.size())
                                         fail(e, name, "expected an unsigned 64-bit integer");
                                 }}});
            }
            else if (name == "run")
            {
                apply(section, {{"dwell_time_s", [&](const auto &e) { s.dwell_time = number(e, name); }},
                                {"speed_mps", [&](const auto &e) { s.speed = number(e, name); }},
                                {"tx", [&](const auto &e) { s.tx_id = std::string(trim(e.value)), tx_given = true; }},
                                {"rx", [&](const auto &e) { s.rx_id = std::string(trim(e.value)), rx_given = true; }}});
            }
            else
                throw ConfigError(section.line, "unknown section [" + name + "]");
        }

        if (antennas_reset)
        {
            if (!tx_given && !s.antennas.empty())
                s.tx_id = s.antennas[0].id;
            if (!rx_given && s.antennas.size() > 1)
                s.rx_id = s.antennas[1].id;
        }
        if (!origin_given)
            if (std::size_t i = s.antenna_index(s.tx_id); i != Scenario::npos)
                s.trajectory.origin = s.antennas[i].initial_position;
        if (!step_given)
            s.trajectory.step_length = 0.05 * s.carrier.wavelength();
        return s;
    }

    Scenario load_scenario(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError(0, "cannot open scenario file '" + path.string() + "'");
        try
        {
            return parse_scenario(in);
        }
        catch (const ConfigError &e)
        {
            throw ConfigError(0, path.string() + ": " + e.what());
        }
    }

    std::string format_scenario(const Scenario &s)
    {
        std::string out;
        auto line = [&](std::string_view key, const std::string &value) { out += fmt::format("{} = {}\n", key, value); };
        auto num = [](double v) { return fmt::format("{:.17g}", v); };

        out += "[carrier]\n";
        line("frequency_hz", num(s.carrier.frequency_hz));
        line("medium_index", num(s.carrier.medium_index));

        out += "\n[trajectory]\n";
        line("origin", vec(s.trajectory.origin));
        line("direction", vec(s.trajectory.direction));
        line("total_length_m", num(s.trajectory.total_length));
        line("step_length_m", num(s.trajectory.step_length));

        for (const auto &a : s.antennas)
        {
            out += fmt::format("\n[antenna.{}]\n", a.id);
            line("position", vec(a.initial_position));
            line("gain_dbi", num(a.gain_dbi));
            line("motion", format_motion(a.motion));
        }

        for (std::size_t i = 0; i < s.objects.size(); ++i)
        {
            const auto &o = s.objects[i];
            out += fmt::format("\n[object.{}]\n", i);
            if (const auto *ps = std::get_if<PointScatterer>(&o.shape))
            {
                line("kind", "point_scatterer");
                line("position", vec(ps->position));
            }
            else
            {
                const auto &pl = std::get<PlaneReflector>(o.shape);
                line("kind", "plane_reflector");
                line("point", vec(pl.point));
                line("normal", vec(pl.normal));
            }
            line("reflectivity", num(o.reflectivity()));
            line("motion", format_motion(o.motion));
        }

        out += "\n[noise]\n";
        line("positioning_accuracy_m", num(s.noise.positioning_accuracy));
        line("settling_epsilon", num(s.noise.settling_epsilon));
        line("settling_tau_s", num(s.noise.settling_tau));
        line("seed", std::to_string(s.noise.seed));

        out += "\n[run]\n";
        line("dwell_time_s", num(s.dwell_time));
        line("speed_mps", num(s.speed));
        line("tx", s.tx_id);
        line("rx", s.rx_id);
        return out;
    }
}
