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

#include "cspa/campaign.hpp"
#include "cspa/propagation.hpp"

#include <omp.h>

#include <array>
#include <limits>

namespace cspa
{
    Trace run(const Scenario &scenario, Strategy strategy, std::uint64_t seed)
    {
        require_valid(scenario);

        const std::size_t itx = scenario.antenna_index(scenario.tx_id);
        const std::size_t count = scenario.trajectory.last_step() + 1;
        const double dt = scenario.trajectory.step_length / scenario.speed + scenario.dwell_time;
        const NoiseConfig &noise = scenario.noise;

        // Random draws in step order: positioning jitter, then settling
        Rng rng(seed);
        std::vector<StepPlan> plans;
        std::vector<cdouble> settling(count);
        plans.reserve(count);
        for (std::size_t n = 0; n < count; ++n)
        {
            plans.push_back(apply_positioning_error(plan_step(scenario, strategy, n), noise.positioning_accuracy, rng));
            settling[n] = settling_perturbation(scenario.dwell_time, noise.settling_epsilon, noise.settling_tau, rng);
        }

        std::vector<ChannelSample> samples(count);
        std::size_t failed_step = std::numeric_limits<std::size_t>::max();
        std::string failure;

#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i)
        {
            const auto n = static_cast<std::size_t>(i);
            const StepPlan &plan = plans[n];
            try
            {
                cdouble h = total_channel(plan.geometry, scenario);
                h *= settling[n];
                double moved = plan.moving[itx] ? plan.geometry.antennas[itx].offset.dot(plan.direction)
                                                : plan.nominal_moved_distance;
                samples[n] = {n, static_cast<double>(n) * dt, moved, h};
            }
            catch (const std::invalid_argument &e)
            {
#pragma omp critical(cspa_campaign_failure)
                if (n < failed_step)
                {
                    failed_step = n;
                    failure = e.what();
                }
            }
        }
        if (!failure.empty())
            throw SimulationError(failed_step, failure);

        return Trace(std::move(samples), strategy_label(strategy), scenario_digest(scenario),
                     scenario.carrier.wavelength());
    }

    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k)
    {
        std::uint64_t z = master + (k + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    CampaignResult run_triple(const Scenario &scenario, std::uint64_t seed)
    {
        constexpr std::array strategies{Strategy::uncompensated, Strategy::with_movement, Strategy::no_movement};
        CampaignResult result;
        result.seed = seed;
        result.scenario_digest = scenario_digest(scenario);
        for (std::size_t k = 0; k < strategies.size(); ++k)
            result.traces.emplace(strategy_label(strategies[k]), run(scenario, strategies[k], derive_seed(seed, k)));
        return result;
    }
}
