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

// Serial reference against the OpenMP campaign kernel on a dense, cluttered scenario.

#include "cspa/campaign.hpp"

#include <benchmark/benchmark.h>

namespace
{
    cspa::Scenario dense_scenario()
    {
        cspa::Scenario s = cspa::clutter_scenario();
        s.trajectory.step_length /= 10.0; // 2913 positions
        for (int i = 0; i < 40; ++i)
        {
            double t = static_cast<double>(i);
            s.objects.push_back({cspa::PointScatterer{cspa::Vec3{-1.0 + 0.1 * t, 1.0 + 0.02 * t, 0.3 - 0.015 * t}, 0.05},
                                 cspa::MotionAssignment::stationary()});
        }
        s.objects.push_back({cspa::PlaneReflector{cspa::Vec3{0, 0, -1.2}, cspa::Vec3{0, 0, 1}, 0.2}, cspa::MotionAssignment::stationary()});
        return s;
    }

    const cspa::Scenario &scenario()
    {
        static const cspa::Scenario s = dense_scenario();
        return s;
    }

    void BM_serial(benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize(cspa::serial::run(scenario(), cspa::Strategy::with_movement, 1));
        state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(scenario().trajectory.last_step() + 1));
    }

    void BM_parallel(benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize(cspa::run(scenario(), cspa::Strategy::with_movement, 1));
        state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(scenario().trajectory.last_step() + 1));
    }
}

BENCHMARK(BM_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
