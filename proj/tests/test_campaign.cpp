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

#include <catch2/catch_amalgamated.hpp>

#include "cspa/analysis.hpp"
#include "cspa/campaign.hpp"
#include "cspa/propagation.hpp"
#include "cspa/scenario_file.hpp"

#include "oracles.hpp"

using namespace cspa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    Scenario quiet(Scenario s)
    {
        s.noise.positioning_accuracy = 0.0;
        s.noise.settling_epsilon = 0.0;
        return s;
    }

    // max |H(n) - H(0)| / |H(0)|
    double max_relative_change(const Trace &t)
    {
        const cdouble h0 = t.samples().front().h;
        double worst = 0.0;
        for (const auto &s : t.samples())
            worst = std::max(worst, std::abs(s.h - h0) / std::abs(h0));
        return worst;
    }

    Scenario invariance_file() { return load_scenario(CSPA_SOURCE_DIR "/scenarios/invariance.ini"); }
}

TEST_CASE("parallel kernel matches the serial reference bit for bit", "[campaign]")
{
    for (const Scenario &s : {default_scenario(), clutter_scenario(), invariance_file()})
        for (Strategy strategy : all_strategies)
            for (std::uint64_t seed : {1ULL, 2450ULL, 0xFFFFFFFFFFFFFFFFULL})
                REQUIRE(run(s, strategy, seed) == serial::run(s, strategy, seed));
}

TEST_CASE("with-movement is exactly static in free space", "[campaign]")
{
    Scenario s = quiet(default_scenario());
    Trace t = run(s, Strategy::with_movement, 7);
    CHECK(t.size() == 292);
    CHECK(max_relative_change(t) < 1e-12);
    CHECK(trace_stats(t).p2p_phase < 1e-12);
    CHECK(trace_stats(t).p2p_db == 0.0);
    for (const auto &sample : t.samples())
        REQUIRE(sample.h == t.samples().front().h);
}

TEST_CASE("uncompensated free-space trace follows Friis", "[campaign]")
{
    Scenario s = quiet(default_scenario());
    const double lambda = s.carrier.wavelength();
    Trace t = run(s, Strategy::uncompensated, 1);

    for (const auto &sample : t.samples())
    {
        double d = 1.375 + static_cast<double>(sample.step_index) * s.trajectory.step_length;
        cdouble expected = oracle::friis(d, lambda);
        REQUIRE_THAT(std::abs(sample.h - expected), WithinAbs(0.0, 1e-12 * std::abs(expected)));
        REQUIRE_THAT(sample.moved_distance, WithinAbs(d - 1.375, 1e-13));
    }

    SECTION("phase slope is -2 pi per wavelength")
    {
        std::vector<double> x;
        for (const auto &sample : t.samples())
            x.push_back(sample.moved_distance);
        double slope = oracle::ls_slope(x, t.phase_unwrapped());
        CHECK_THAT(slope, WithinRel(-2.0 * oracle::pi / lambda, 1e-9));
    }
    SECTION("magnitude peak-to-peak")
    {
        // 20 log10((1.375 + 291 * 0.05 lambda) / 1.375), from the oracle in float64
        CHECK_THAT(trace_stats(t).p2p_db, WithinAbs(7.215034757, 1e-8));
    }
    SECTION("half-wavelength steps wrap to -pi")
    {
        Scenario half = s;
        half.trajectory.step_length = lambda / 2.0;
        half.trajectory.total_length = 20.0 * lambda / 2.0;
        Trace th = run(half, Strategy::uncompensated, 1);
        auto ph = th.phase_unwrapped();
        for (std::size_t i = 1; i < ph.size(); ++i)
            REQUIRE_THAT(oracle::angle_distance(ph[i] - ph[i - 1], -oracle::pi), WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("timestamps", "[campaign]")
{
    Scenario s = default_scenario();
    Trace t = run(s, Strategy::with_movement, 3);
    const double dt = s.trajectory.step_length / s.speed + s.dwell_time;
    for (const auto &sample : t.samples())
        REQUIRE(sample.time == static_cast<double>(sample.step_index) * dt);
    CHECK_THAT(t.samples().back().time, WithinRel(291 * (0.05 * 0.12236426857142857 / 0.1 + 0.2), 1e-12));
}

TEST_CASE("no-movement and counter-movement", "[campaign]")
{
    Scenario s = quiet(clutter_scenario());
    Trace none = run(s, Strategy::no_movement, 11);
    CHECK(max_relative_change(none) == 0.0);
    CHECK(run(s, Strategy::counter_movement, 11).coefficients() == none.coefficients());

    SECTION("free space without noise: no-movement equals with-movement")
    {
        Scenario f = quiet(default_scenario());
        CHECK(run(f, Strategy::no_movement, 1).coefficients() == run(f, Strategy::with_movement, 1).coefficients());
    }
    SECTION("noisy no-movement varies only by settling")
    {
        Scenario n = clutter_scenario();
        Trace t = run(n, Strategy::no_movement, 11);
        CHECK(max_relative_change(t) > 0.0);
        CHECK(max_relative_change(t) < 8 * settling_scale(n.dwell_time, n.noise.settling_epsilon, n.noise.settling_tau));
    }
}

TEST_CASE("invariances with everything co-moving", "[campaign][property]")
{
    Scenario base = quiet(default_scenario());

    SECTION("object moving along T")
    {
        Scenario s = base;
        s.objects.push_back({PointScatterer{Vec3{0.6, 0.4, -0.3}, 0.3}, MotionAssignment::along_trajectory()});
        s.objects.push_back({PointScatterer{Vec3{2.0, -0.4, 0.3}, 0.3}, MotionAssignment::along_trajectory()});
        CHECK(max_relative_change(run(s, Strategy::with_movement, 1)) < 1e-12);
        CHECK(max_relative_change(run(s, Strategy::uncompensated, 1)) > 0.1);
    }
    SECTION("infinite plane parallel to T")
    {
        for (Vec3 normal : {Vec3{0, 0, 1}, Vec3{0, 1, 0}, Vec3{0, 0.6, 0.8}})
        {
            Scenario s = base;
            s.objects.push_back({PlaneReflector{normal * -0.5, normal, 0.7}, MotionAssignment::stationary()});
            Trace t = run(s, Strategy::with_movement, 1);
            CHECK(max_relative_change(t) < 1e-12);
            CHECK(std::abs(t.samples().front().h - run(base, Strategy::with_movement, 1).samples().front().h) > 1e-5);
        }
    }
    SECTION("medium index")
    {
        for (double index : {1.0, 1.5, 2.0})
        {
            Scenario s = base;
            s.carrier.medium_index = index;
            s.objects.push_back({PlaneReflector{Vec3{0, 0, -0.5}, Vec3{0, 0, 1}, 0.4}, MotionAssignment::stationary()});
            Trace t = run(s, Strategy::with_movement, 1);
            CHECK(max_relative_change(t) < 1e-12);
            CHECK_THAT(t.wavelength(), WithinRel(0.12236426857142857 / index, 1e-15));
        }
    }
    SECTION("third antenna C")
    {
        Scenario s = invariance_file();
        const std::size_t ia = s.antenna_index("A"), ic = s.antenna_index("C");
        for (Strategy strategy : {Strategy::with_movement, Strategy::uncompensated})
        {
            const cdouble h0 = total_channel_between(plan_step(s, strategy, 0).geometry, s, ia, ic);
            double worst = 0.0;
            for (std::size_t n = 0; n <= s.trajectory.last_step(); ++n)
                worst = std::max(worst, std::abs(total_channel_between(plan_step(s, strategy, n).geometry, s, ia, ic) - h0) / std::abs(h0));
            CHECK(worst < 1e-12);
        }
    }
    SECTION("shipped invariance scenario")
    {
        Scenario s = invariance_file();
        CHECK(max_relative_change(run(s, Strategy::with_movement, 5)) < 1e-12);
    }
}

TEST_CASE("clutter ordering", "[campaign]")
{
    CampaignResult r = run_triple(clutter_scenario(), default_seed);
    REQUIRE(r.traces.size() == 3);
    auto un = trace_stats(r.traces.at("regular"));
    auto with = trace_stats(r.traces.at("channel static partner antenna"));
    auto none = trace_stats(r.traces.at("no movement"));
    CHECK(none.var_db < with.var_db);
    CHECK(with.var_db < un.var_db);
    CHECK(none.var_phase < with.var_phase);
    CHECK(with.var_phase < un.var_phase);
    CHECK(with.var_phase > 0.0);
    CHECK(with.var_phase < 0.1);
    CHECK(r.seed == default_seed);
    CHECK(r.scenario_digest == scenario_digest(clutter_scenario()));
}

TEST_CASE("seeds", "[campaign]")
{
    Scenario s = clutter_scenario();
    CHECK(run(s, Strategy::uncompensated, 9) == run(s, Strategy::uncompensated, 9));
    CHECK_FALSE(run(s, Strategy::uncompensated, 9) == run(s, Strategy::uncompensated, 10));

    CHECK(derive_seed(2450, 0) != derive_seed(2450, 1));
    CHECK(derive_seed(2450, 0) == derive_seed(2450, 0));
    // splitmix64 reference: the first output for state 0 is 0xE220A8397B1DCDAF
    CHECK(derive_seed(0, 0) == 0xE220A8397B1DCDAFULL);

    CampaignResult r = run_triple(s, 77);
    CHECK(r.traces.at("regular") == run(s, Strategy::uncompensated, derive_seed(77, 0)));
    CHECK(r.traces.at("no movement") == run(s, Strategy::no_movement, derive_seed(77, 2)));
}

TEST_CASE("invalid scenarios are rejected before running", "[campaign]")
{
    Scenario s = default_scenario();
    s.antennas[1].initial_position = {2.0, 0.0, 0.0}; // On the uncompensated path of A
    CHECK_THROWS_AS(run(s, Strategy::uncompensated, 1), std::invalid_argument);
    CHECK_THROWS_AS(serial::run(s, Strategy::uncompensated, 1), std::invalid_argument);

    SimulationError e(12, "coincident");
    CHECK(e.step() == 12);
    CHECK(std::string(e.what()) == "step 12: coincident");
}
