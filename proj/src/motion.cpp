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

#include "cspa/motion.hpp"

#include <stdexcept>

namespace cspa
{
    const char *strategy_name(Strategy s)
    {
        switch (s)
        {
        case Strategy::uncompensated:
            return "uncompensated";
        case Strategy::with_movement:
            return "with_movement";
        case Strategy::counter_movement:
            return "counter_movement";
        case Strategy::no_movement:
            return "no_movement";
        }
        return "unknown";
    }

    const char *strategy_label(Strategy s)
    {
        switch (s)
        {
        case Strategy::uncompensated:
            return "regular";
        case Strategy::with_movement:
            return "channel static partner antenna";
        case Strategy::counter_movement:
            return "channel static antenna";
        case Strategy::no_movement:
            return "no movement";
        }
        return "unknown";
    }

    std::optional<Strategy> parse_strategy(std::string_view name)
    {
        for (Strategy s : all_strategies)
            if (name == strategy_name(s) || name == strategy_label(s))
                return s;
        return std::nullopt;
    }

    std::vector<double> motion_rates(const Scenario &s, Strategy strategy)
    {
        std::vector<double> rates(s.antennas.size(), 0.0);
        if (strategy == Strategy::no_movement)
            return rates;
        for (std::size_t i = 0; i < s.antennas.size(); ++i)
        {
            const auto &a = s.antennas[i];
            if (a.id == s.tx_id)
                rates[i] = strategy == Strategy::counter_movement ? 0.0 : 1.0;
            else if (a.id == s.rx_id)
                rates[i] = strategy == Strategy::with_movement ? 1.0 : 0.0;
            else
                rates[i] = a.motion.rate();
        }
        return rates;
    }

    Vec3 GeometryState::position_of(const Scenario &s, const std::string &label) const
    {
        if (std::size_t i = s.antenna_index(label); i != Scenario::npos && i < antennas.size())
            return antennas[i].position();
        if (label.rfind("object.", 0) == 0)
        {
            std::size_t i = std::stoul(label.substr(7));
            if (i < objects.size())
                return objects[i].position();
        }
        throw std::invalid_argument("GeometryState: unknown label '" + label + "'");
    }

    StepPlan plan_step(const Scenario &s, Strategy strategy, std::size_t n)
    {
        const Trajectory &t = s.trajectory;
        if (n > t.last_step())
            throw std::invalid_argument("plan_step: step " + std::to_string(n) + " is outside 0.." +
                                        std::to_string(t.last_step()));

        StepPlan plan;
        plan.step_index = n;
        plan.nominal_moved_distance = static_cast<double>(n) * t.step_length;
        plan.direction = t.direction;

        // Equal rates produce bitwise-equal offsets
        auto offset_for = [&](double rate) { return rate == 0.0 ? Vec3{} : t.direction * (rate * plan.nominal_moved_distance); };

        std::vector<double> rates = motion_rates(s, strategy);
        plan.geometry.antennas.reserve(s.antennas.size());
        plan.moving.reserve(s.antennas.size());
        for (std::size_t i = 0; i < s.antennas.size(); ++i)
        {
            plan.geometry.antennas.push_back({s.antennas[i].initial_position, offset_for(rates[i])});
            plan.moving.push_back(rates[i] != 0.0);
        }

        plan.geometry.objects.reserve(s.objects.size());
        for (const auto &o : s.objects)
        {
            double rate = strategy == Strategy::no_movement ? 0.0 : o.motion.rate();
            plan.geometry.objects.push_back({o.anchor(), offset_for(rate)});
        }
        return plan;
    }

    StepPlan apply_positioning_error(StepPlan plan, double accuracy, Rng &rng)
    {
        if (!(accuracy > 0.0))
            return plan;
        std::uniform_real_distribution<double> jitter(-accuracy, accuracy);
        for (std::size_t i = 0; i < plan.geometry.antennas.size(); ++i)
            if (plan.moving[i])
                plan.geometry.antennas[i].offset += plan.direction * jitter(rng);
        return plan;
    }

    double settling_scale(double dwell_time, double epsilon, double tau)
    {
        if (epsilon == 0.0)
            return 0.0;
        if (tau == 0.0)
            return dwell_time == 0.0 ? epsilon : 0.0;
        return epsilon * std::exp(-dwell_time / tau);
    }

    cdouble settling_perturbation(double dwell_time, double epsilon, double tau, Rng &rng)
    {
        double scale = settling_scale(dwell_time, epsilon, tau);
        if (!(scale > 0.0))
            return {1.0, 0.0};
        std::normal_distribution<double> draw(0.0, scale);
        double a = draw(rng);
        double b = draw(rng);
        return (1.0 + a) * std::polar(1.0, b);
    }
}
