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

// Serial reference of the campaign loop. Kept deliberately plain; the OpenMP kernel in
// campaign.cpp is tested against it for bit-identical output.

#include "cspa/campaign.hpp"
#include "cspa/propagation.hpp"

namespace cspa::serial
{
    Trace run(const Scenario &scenario, Strategy strategy, std::uint64_t seed)
    {
        require_valid(scenario);

        const std::size_t itx = scenario.antenna_index(scenario.tx_id);
        const std::size_t last = scenario.trajectory.last_step();
        const double dt = scenario.trajectory.step_length / scenario.speed + scenario.dwell_time;
        const NoiseConfig &noise = scenario.noise;

        Rng rng(seed);
        std::vector<ChannelSample> samples;
        samples.reserve(last + 1);

        for (std::size_t n = 0; n <= last; ++n)
        {
            StepPlan plan = apply_positioning_error(plan_step(scenario, strategy, n), noise.positioning_accuracy, rng);
            cdouble h;
            try
            {
                h = total_channel(plan.geometry, scenario);
            }
            catch (const std::invalid_argument &e)
            {
                throw SimulationError(n, e.what());
            }
            h *= settling_perturbation(scenario.dwell_time, noise.settling_epsilon, noise.settling_tau, rng);

            double moved = plan.moving[itx] ? plan.geometry.antennas[itx].offset.dot(plan.direction)
                                            : plan.nominal_moved_distance;
            samples.push_back({n, static_cast<double>(n) * dt, moved, h});
        }

        return Trace(std::move(samples), strategy_label(strategy), scenario_digest(scenario),
                     scenario.carrier.wavelength());
    }
}
