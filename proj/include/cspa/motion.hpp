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

#ifndef CSPA_MOTION_HPP
#define CSPA_MOTION_HPP

#include "cspa/core.hpp"

#include <array>
#include <optional>
#include <random>
#include <string_view>

namespace cspa
{
    using Rng = std::mt19937_64;

    // Movement strategy of one campaign run. The tx antenna is the mobile antenna A,
    // the rx antenna is the partner antenna B.
    enum class Strategy
    {
        uncompensated,    // A moves along T, B stays
        with_movement,    // A and B move along T together
        counter_movement, // A's mount moves but A is held at its original position
        no_movement       // Nothing moves
    };

    inline constexpr std::array all_strategies{Strategy::uncompensated, Strategy::with_movement,
                                               Strategy::counter_movement, Strategy::no_movement};

    // Machine name: "uncompensated", "with_movement", "counter_movement", "no_movement"
    const char *strategy_name(Strategy s);

    // Result-table row label: "regular", "channel static partner antenna", "channel static antenna", "no movement"
    const char *strategy_label(Strategy s);

    std::optional<Strategy> parse_strategy(std::string_view name);

    // Displacement rate of every antenna (same order as scenario.antennas) under a strategy.
    // Antennas other than tx/rx follow their own motion assignment unless nothing moves.
    std::vector<double> motion_rates(const Scenario &s, Strategy strategy);

    // A position split into a fixed anchor and a displacement. Separations are formed as
    // anchor difference plus displacement difference, so two placements sharing the same
    // displacement have a separation that does not depend on that displacement at all.
    struct Placement
    {
        Vec3 anchor;
        Vec3 offset;

        Vec3 position() const { return anchor + offset; }
        bool operator==(const Placement &) const = default;
    };

    // Vector pointing from `from` to `to`
    inline Vec3 separation(const Placement &from, const Placement &to)
    {
        return (to.anchor - from.anchor) + (to.offset - from.offset);
    }

    // Instantaneous positions of every antenna and object, indexed like the scenario
    struct GeometryState
    {
        std::vector<Placement> antennas;
        std::vector<Placement> objects; // Scatterer position or translated plane point; normals never change

        // Lookup by label: an antenna id or "object.<index>"
        Vec3 position_of(const Scenario &s, const std::string &label) const;
        bool operator==(const GeometryState &) const = default;
    };

    struct StepPlan
    {
        std::size_t step_index = 0;
        double nominal_moved_distance = 0.0; // step_index * step_length
        Vec3 direction;
        GeometryState geometry;
        std::vector<bool> moving; // Per antenna: displaced by this strategy
        bool operator==(const StepPlan &) const = default;
    };

    // Target positions for step n
    // - Throws std::invalid_argument if n > trajectory.last_step()
    StepPlan plan_step(const Scenario &s, Strategy strategy, std::size_t n);

    // Jitters every moving antenna along the trajectory direction by an independent draw
    // from U[-accuracy, +accuracy]. Antennas are visited in scenario order. With zero
    // accuracy the plan is returned unchanged and no random numbers are consumed.
    StepPlan apply_positioning_error(StepPlan plan, double accuracy, Rng &rng);

    // Standard deviation of the residual vibration after dwelling: epsilon * exp(-dwell / tau).
    // tau = 0 means instantaneous settling unless dwell is also 0.
    double settling_scale(double dwell_time, double epsilon, double tau);

    // Multiplier (1 + a) exp(i b) with a, b ~ N(0, settling_scale^2), drawn in that order.
    // Returns exactly 1 without consuming random numbers when the scale is 0.
    cdouble settling_perturbation(double dwell_time, double epsilon, double tau, Rng &rng);
}

#endif
