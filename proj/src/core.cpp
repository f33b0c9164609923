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

#include "cspa/core.hpp"
#include "cspa/analysis.hpp"
#include "cspa/motion.hpp"
#include "cspa/scenario_file.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace cspa
{
    namespace
    {
        constexpr double unit_tolerance = 1e-12;
        constexpr double clearance_floor = 1e-9; // Minimum separation kept in every simulated geometry [m]

        bool unit_length(const Vec3 &v) { return v.finite() && std::abs(v.norm() - 1.0) <= unit_tolerance; }

        void check_motion(const MotionAssignment &m, const std::string &field, std::vector<Violation> &out)
        {
            if (!std::isfinite(m.factor))
                out.push_back({field + ".factor", "must be finite"});
            else if (m.mode == MotionMode::along_trajectory && m.factor != 1.0)
                out.push_back({field + ".factor", "along_T motion requires factor = 1"});
        }

        // Smallest |r0 + v s| for s in [0, length]
        double min_distance_on_segment(const Vec3 &r0, const Vec3 &v, double length)
        {
            double vv = v.dot(v);
            if (vv == 0.0)
                return r0.norm();
            double s = std::clamp(-r0.dot(v) / vv, 0.0, length);
            return (r0 + v * s).norm();
        }

        // Rates of tx, rx and every object for a strategy; returned as {tx, rx, objects...}
        struct StrategyRates
        {
            double tx = 0.0, rx = 0.0;
            std::vector<double> objects;
        };

        StrategyRates rates_for(const Scenario &s, Strategy strategy)
        {
            StrategyRates r;
            std::size_t itx = s.antenna_index(s.tx_id), irx = s.antenna_index(s.rx_id);
            std::vector<double> antenna_rates = motion_rates(s, strategy);
            r.tx = antenna_rates[itx];
            r.rx = antenna_rates[irx];
            for (const auto &o : s.objects)
                r.objects.push_back(strategy == Strategy::no_movement ? 0.0 : o.motion.rate());
            return r;
        }

        void check_geometry(const Scenario &s, std::vector<Violation> &out)
        {
            const Antenna &tx = s.antenna(s.tx_id);
            const Antenna &rx = s.antenna(s.rx_id);
            const Vec3 dir = s.trajectory.direction;
            const double length = static_cast<double>(s.trajectory.last_step()) * s.trajectory.step_length;
            const double acc = s.noise.positioning_accuracy;

            for (Strategy strategy : all_strategies)
            {
                StrategyRates r = rates_for(s, strategy);
                const std::string tag = std::string(" (") + strategy_name(strategy) + ")";
                double tx_jitter = r.tx != 0.0 ? acc : 0.0;
                double rx_jitter = r.rx != 0.0 ? acc : 0.0;

                double d = min_distance_on_segment(tx.initial_position - rx.initial_position, dir * (r.tx - r.rx), length);
                if (!(d > tx_jitter + rx_jitter + clearance_floor))
                    out.push_back({"antennas", "tx and rx come into contact along the trajectory" + tag});

                for (std::size_t i = 0; i < s.objects.size(); ++i)
                {
                    const auto &obj = s.objects[i];
                    const std::string field = "object." + std::to_string(i);
                    if (const auto *ps = std::get_if<PointScatterer>(&obj.shape))
                    {
                        for (const auto &[ant, rate, jitter] : std::array{std::tuple{&tx, r.tx, tx_jitter}, std::tuple{&rx, r.rx, rx_jitter}})
                        {
                            double dd = min_distance_on_segment(ant->initial_position - ps->position, dir * (rate - r.objects[i]), length);
                            if (!(dd > jitter + clearance_floor))
                                out.push_back({field + ".position", "scatterer touches antenna " + ant->id + tag});
                        }
                    }
                    else if (const auto *pl = std::get_if<PlaneReflector>(&obj.shape))
                    {
                        if (!unit_length(pl->normal))
                            continue;
                        double h_tx = (tx.initial_position - pl->point).dot(pl->normal);
                        double side = h_tx > 0.0 ? 1.0 : -1.0;
                        double along = dir.dot(pl->normal);
                        bool ok = true;
                        for (const auto &[ant, rate, jitter] : std::array{std::tuple{&tx, r.tx, tx_jitter}, std::tuple{&rx, r.rx, rx_jitter}})
                        {
                            double h0 = (ant->initial_position - pl->point).dot(pl->normal);
                            double h1 = h0 + (rate - r.objects[i]) * length * along;
                            double margin = jitter * std::abs(along) + clearance_floor;
                            ok = ok && side * h0 > margin && side * h1 > margin;
                        }
                        if (!ok)
                            out.push_back({field + ".point", "tx and rx must stay strictly on the same side of the plane" + tag});
                    }
                }
            }
        }
    }

    double wavelength_of(double frequency_hz, double medium_index)
    {
        if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
            throw std::invalid_argument("wavelength_of: frequency must be positive and finite");
        if (!(medium_index >= 1.0) || !std::isfinite(medium_index))
            throw std::invalid_argument("wavelength_of: medium index must be >= 1");
        return speed_of_light / (medium_index * frequency_hz);
    }

    std::size_t Trajectory::last_step() const
    {
        if (!(step_length > 0.0) || !(total_length >= step_length) || !std::isfinite(total_length))
            return 0;
        // Tolerate round-off when total_length is an exact multiple of step_length
        return static_cast<std::size_t>(std::floor(total_length / step_length + 1e-9));
    }

    double EnvironmentObject::reflectivity() const
    {
        return std::visit([](const auto &o) { return o.reflectivity; }, shape);
    }

    Vec3 EnvironmentObject::anchor() const
    {
        if (const auto *ps = std::get_if<PointScatterer>(&shape))
            return ps->position;
        return std::get<PlaneReflector>(shape).point;
    }

    std::size_t Scenario::antenna_index(const std::string &id) const
    {
        for (std::size_t i = 0; i < antennas.size(); ++i)
            if (antennas[i].id == id)
                return i;
        return npos;
    }

    const Antenna &Scenario::antenna(const std::string &id) const
    {
        std::size_t i = antenna_index(id);
        if (i == npos)
            throw std::invalid_argument("Scenario: no antenna with id '" + id + "'");
        return antennas[i];
    }

    std::vector<Violation> validate_scenario(const Scenario &s)
    {
        std::vector<Violation> out;

        // Carrier
        if (!(s.carrier.frequency_hz > 0.0) || !std::isfinite(s.carrier.frequency_hz))
            out.push_back({"carrier.frequency_hz", "must be positive and finite"});
        if (!(s.carrier.medium_index >= 1.0) || !std::isfinite(s.carrier.medium_index))
            out.push_back({"carrier.medium_index", "must be >= 1"});

        // Antennas
        if (s.antennas.size() < 2)
            out.push_back({"antennas", "at least two antennas are required"});
        std::set<std::string> ids;
        for (const auto &a : s.antennas)
        {
            const std::string field = "antenna." + a.id;
            if (a.id.empty())
                out.push_back({"antenna", "id must not be empty"});
            if (!ids.insert(a.id).second)
                out.push_back({field, "id must be unique"});
            if (!a.initial_position.finite())
                out.push_back({field + ".position", "components must be finite"});
            if (!std::isfinite(a.gain_dbi))
                out.push_back({field + ".gain_dbi", "must be finite"});
            check_motion(a.motion, field + ".motion", out);
        }
        bool have_tx = s.antenna_index(s.tx_id) != Scenario::npos;
        bool have_rx = s.antenna_index(s.rx_id) != Scenario::npos;
        if (s.tx_id == s.rx_id)
            out.push_back({"run.tx/run.rx", "tx_id and rx_id must differ"});
        if (!have_tx)
            out.push_back({"run.tx", "no antenna with id '" + s.tx_id + "'"});
        if (!have_rx)
            out.push_back({"run.rx", "no antenna with id '" + s.rx_id + "'"});

        // Trajectory
        const Trajectory &t = s.trajectory;
        if (!t.origin.finite())
            out.push_back({"trajectory.origin", "components must be finite"});
        bool direction_ok = unit_length(t.direction);
        if (!direction_ok)
            out.push_back({"trajectory.direction", "must be a unit vector (|d| = 1 +- 1e-12)"});
        bool lengths_ok = true;
        if (!(t.total_length > 0.0) || !std::isfinite(t.total_length))
            out.push_back({"trajectory.total_length_m", "must be positive and finite"}), lengths_ok = false;
        if (!(t.step_length > 0.0) || !std::isfinite(t.step_length))
            out.push_back({"trajectory.step_length_m", "must be positive and finite"}), lengths_ok = false;
        else if (lengths_ok && t.step_length > t.total_length)
            out.push_back({"trajectory.step_length_m", "must not exceed total_length_m"}), lengths_ok = false;
        if (have_tx && t.origin.finite() && (s.antenna(s.tx_id).initial_position - t.origin).norm() > clearance_floor)
            out.push_back({"trajectory.origin", "must coincide with the initial position of the tx antenna"});

        // Objects
        bool objects_ok = true;
        for (std::size_t i = 0; i < s.objects.size(); ++i)
        {
            const auto &o = s.objects[i];
            const std::string field = "object." + std::to_string(i);
            double g = o.reflectivity();
            if (!(g >= 0.0 && g <= 1.0))
                out.push_back({field + ".reflectivity", "must lie in [0, 1]"}), objects_ok = false;
            if (!o.anchor().finite())
                out.push_back({field + ".position", "components must be finite"}), objects_ok = false;
            if (const auto *pl = std::get_if<PlaneReflector>(&o.shape); pl && !unit_length(pl->normal))
                out.push_back({field + ".normal", "must be a unit vector (|n| = 1 +- 1e-12)"}), objects_ok = false;
            std::size_t before = out.size();
            check_motion(o.motion, field + ".motion", out);
            objects_ok = objects_ok && out.size() == before;
        }

        // Noise and run
        const NoiseConfig &n = s.noise;
        if (!(n.positioning_accuracy >= 0.0) || !std::isfinite(n.positioning_accuracy))
            out.push_back({"noise.positioning_accuracy_m", "must be >= 0"});
        if (!(n.settling_epsilon >= 0.0) || !std::isfinite(n.settling_epsilon))
            out.push_back({"noise.settling_epsilon", "must be >= 0"});
        if (!(n.settling_tau >= 0.0) || !std::isfinite(n.settling_tau))
            out.push_back({"noise.settling_tau_s", "must be >= 0"});
        if (!(s.dwell_time >= 0.0) || !std::isfinite(s.dwell_time))
            out.push_back({"run.dwell_time_s", "must be >= 0"});
        if (!(s.speed > 0.0) || !std::isfinite(s.speed))
            out.push_back({"run.speed_mps", "must be positive and finite"});

        bool geometry_ok = have_tx && have_rx && s.tx_id != s.rx_id;
        if (geometry_ok)
        {
            const Antenna &tx = s.antenna(s.tx_id);
            const Antenna &rx = s.antenna(s.rx_id);
            if (tx.initial_position.finite() && rx.initial_position.finite() &&
                !((tx.initial_position - rx.initial_position).norm() > 0.0))
                out.push_back({"antennas", "initial tx-rx distance must be positive"});
        }

        // Clearance checks only make sense on an otherwise well-formed scenario
        if (out.empty() && direction_ok && lengths_ok && objects_ok)
            check_geometry(s, out);

        return out;
    }

    void require_valid(const Scenario &s)
    {
        auto violations = validate_scenario(s);
        if (violations.empty())
            return;
        std::string msg = "invalid scenario:";
        for (const auto &v : violations)
            msg += " [" + v.field + ": " + v.rule + "]";
        throw std::invalid_argument(msg);
    }

    Scenario default_scenario()
    {
        Scenario s;
        s.carrier = Carrier{2.45e9, 1.0};
        s.antennas = {
            Antenna{"A", Vec3{1.375, 0.0, 0.0}, 0.0, MotionAssignment::along_trajectory()},
            Antenna{"B", Vec3{0.0, 0.0, 0.0}, 0.0, MotionAssignment::stationary()}};
        s.tx_id = "A";
        s.rx_id = "B";
        s.trajectory.origin = s.antennas[0].initial_position;
        s.trajectory.direction = Vec3{1.0, 0.0, 0.0};
        s.trajectory.total_length = 1.782;
        s.trajectory.step_length = 0.05 * s.carrier.wavelength();
        return s;
    }

    Scenario clutter_scenario()
    {
        Scenario s = default_scenario();
        // Stand-ins for the linear movement units and cable runs next to the trajectory
        s.objects = {
            EnvironmentObject{PointScatterer{Vec3{0.9, 0.45, -0.51}, 0.15}, MotionAssignment::stationary()},
            EnvironmentObject{PointScatterer{Vec3{2.4, -0.5, -0.51}, 0.12}, MotionAssignment::stationary()},
            EnvironmentObject{PointScatterer{Vec3{-0.6, 0.35, 0.2}, 0.1}, MotionAssignment::stationary()}};
        s.noise.settling_epsilon = 0.01;
        return s;
    }

    Trace::Trace(std::vector<ChannelSample> samples, std::string strategy_label,
                 std::string scenario_digest, double wavelength)
        : samples_(std::move(samples)), strategy_label_(std::move(strategy_label)),
          scenario_digest_(std::move(scenario_digest)), wavelength_(wavelength)
    {
        if (samples_.empty())
            throw std::invalid_argument("Trace: a trace must contain at least one sample");
        for (std::size_t i = 0; i < samples_.size(); ++i)
        {
            const auto &smp = samples_[i];
            if (!std::isfinite(smp.h.real()) || !std::isfinite(smp.h.imag()))
                throw std::invalid_argument("Trace: non-finite channel coefficient at step " + std::to_string(smp.step_index));
            if (!std::isfinite(smp.time) || !std::isfinite(smp.moved_distance))
                throw std::invalid_argument("Trace: non-finite time or distance at step " + std::to_string(smp.step_index));
            if (i == 0)
                continue;
            const auto &prev = samples_[i - 1];
            if (smp.step_index != prev.step_index + 1)
                throw std::invalid_argument("Trace: step_index gap, expected " + std::to_string(prev.step_index + 1) +
                                            " but found " + std::to_string(smp.step_index));
            if (!(smp.time > prev.time))
                throw std::invalid_argument("Trace: time must strictly increase (step " + std::to_string(smp.step_index) + ")");
        }
    }

    std::vector<cdouble> Trace::coefficients() const
    {
        std::vector<cdouble> out;
        out.reserve(samples_.size());
        for (const auto &smp : samples_)
            out.push_back(smp.h);
        return out;
    }

    std::vector<double> Trace::magnitude_db() const
    {
        std::vector<double> out;
        out.reserve(samples_.size());
        for (const auto &smp : samples_)
            out.push_back(to_db(smp.h));
        return out;
    }

    std::vector<double> Trace::phase_wrapped() const
    {
        std::vector<double> out;
        out.reserve(samples_.size());
        for (const auto &smp : samples_)
            out.push_back(wrap_phase(std::arg(smp.h)));
        return out;
    }

    std::vector<double> Trace::phase_unwrapped() const
    {
        return unwrap_phase(phase_wrapped());
    }

    Trace Trace::relabeled(std::string label) const
    {
        Trace t = *this;
        t.strategy_label_ = std::move(label);
        return t;
    }

    std::string scenario_digest(const Scenario &s)
    {
        // FNV-1a over the canonical text form
        std::uint64_t hash = 14695981039346656037ULL;
        for (unsigned char c : format_scenario(s))
        {
            hash ^= c;
            hash *= 1099511628211ULL;
        }
        static constexpr char digits[] = "0123456789abcdef";
        std::string out(16, '0');
        for (int i = 15; i >= 0; --i, hash >>= 4)
            out[static_cast<std::size_t>(i)] = digits[hash & 0xF];
        return out;
    }
}
