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

#include "cspa/campaign.hpp"
#include "cspa/core.hpp"
#include "oracles.hpp"

#include <random>

using namespace cspa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("wavelength_of", "[core]")
{
    // Direct division oracle
    CHECK_THAT(wavelength_of(2.45e9, 1.0), WithinRel(oracle::c0 / 2.45e9, 1e-15));
    CHECK_THAT(wavelength_of(2.45e9, 1.0), WithinAbs(0.122364, 5e-7));
    CHECK(wavelength_of(299792458.0, 1.0) == 1.0);
    CHECK_THAT(wavelength_of(2.45e9, 2.0), WithinRel(0.5 * oracle::c0 / 2.45e9, 1e-15));
    CHECK_THAT(wavelength_of(2.45e9, 2.0), WithinAbs(0.061182, 5e-7));

    CHECK_THROWS_AS(wavelength_of(0.0), std::invalid_argument);
    CHECK_THROWS_AS(wavelength_of(-1e9), std::invalid_argument);
    CHECK_THROWS_AS(wavelength_of(1e9, 0.5), std::invalid_argument);

    // Carrier keeps its wavelength consistent with frequency and medium
    Carrier c{2.45e9, 1.5};
    CHECK_THAT(c.wavelength(), WithinRel(wavelength_of(2.45e9, 1.5), 1e-12));
}

TEST_CASE("wavelength_of is strictly decreasing in both arguments", "[core][property]")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> f(1e6, 1e11), n(1.0, 4.0), bump(1.0001, 1.5);
    for (int i = 0; i < 2000; ++i)
    {
        double fi = f(rng), ni = n(rng);
        CHECK(wavelength_of(fi * bump(rng), ni) < wavelength_of(fi, ni));
        CHECK(wavelength_of(fi, ni * bump(rng)) < wavelength_of(fi, ni));
    }
}

TEST_CASE("validate_scenario", "[core]")
{
    SECTION("default scenario is valid")
    {
        CHECK(validate_scenario(default_scenario()).empty());
        CHECK(validate_scenario(clutter_scenario()).empty());
    }
    SECTION("tx_id equal to rx_id")
    {
        Scenario s = default_scenario();
        s.rx_id = s.tx_id;
        auto v = validate_scenario(s);
        REQUIRE(v.size() == 1);
        CHECK(v[0].field == "run.tx/run.rx");
    }
    SECTION("reflectivity above one")
    {
        Scenario s = default_scenario();
        s.objects.push_back({PointScatterer{Vec3{0.5, 1.0, 0.0}, 1.5}, MotionAssignment::stationary()});
        auto v = validate_scenario(s);
        REQUIRE(v.size() == 1);
        CHECK(v[0].field == "object.0.reflectivity");
        CHECK(v[0].rule.find("[0, 1]") != std::string::npos);
    }
    SECTION("other invariants")
    {
        auto fields = [](const Scenario &s) {
            std::vector<std::string> f;
            for (const auto &v : validate_scenario(s))
                f.push_back(v.field);
            return f;
        };
        using Catch::Matchers::VectorContains;

        Scenario s = default_scenario();
        s.trajectory.direction = {1.0, 1e-5, 0.0}; // |d| - 1 = 5e-11
        CHECK_THAT(fields(s), VectorContains(std::string("trajectory.direction")));

        s = default_scenario();
        s.trajectory.step_length = 2.0 * s.trajectory.total_length;
        CHECK_THAT(fields(s), VectorContains(std::string("trajectory.step_length_m")));

        s = default_scenario();
        s.speed = 0.0;
        s.dwell_time = -1.0;
        CHECK_THAT(fields(s), VectorContains(std::string("run.speed_mps")));
        CHECK_THAT(fields(s), VectorContains(std::string("run.dwell_time_s")));

        s = default_scenario();
        s.antennas[1].id = "A";
        CHECK_THAT(fields(s), VectorContains(std::string("antenna.A")));

        s = default_scenario();
        s.antennas[1].motion = {MotionMode::along_trajectory, 2.0};
        CHECK_THAT(fields(s), VectorContains(std::string("antenna.B.motion.factor")));

        s = default_scenario();
        s.noise.positioning_accuracy = -1.0;
        CHECK_THAT(fields(s), VectorContains(std::string("noise.positioning_accuracy_m")));

        s = default_scenario();
        s.antennas.resize(1);
        CHECK_THAT(fields(s), VectorContains(std::string("antennas")));

        s = default_scenario();
        s.carrier.frequency_hz = 0.0;
        CHECK_THAT(fields(s), VectorContains(std::string("carrier.frequency_hz")));

        s = default_scenario();
        s.antennas[1].initial_position = s.antennas[0].initial_position;
        CHECK_THAT(fields(s), VectorContains(std::string("antennas")));
    }
    SECTION("geometry that collides during a run")
    {
        // Uncompensated: A drives straight into B
        Scenario s = default_scenario();
        s.trajectory.direction = {-1.0, 0.0, 0.0};
        auto v = validate_scenario(s);
        REQUIRE_FALSE(v.empty());
        CHECK(v[0].rule.find("uncompensated") != std::string::npos);

        // Scatterer on A's path
        s = default_scenario();
        s.objects.push_back({PointScatterer{Vec3{2.0, 0.0, 0.0}, 0.1}, MotionAssignment::stationary()});
        CHECK_FALSE(validate_scenario(s).empty());

        // Plane between the antennas
        s = default_scenario();
        s.objects.push_back({PlaneReflector{Vec3{0.5, 0.0, 0.0}, Vec3{1.0, 0.0, 0.0}, 0.5}, MotionAssignment::stationary()});
        CHECK_FALSE(validate_scenario(s).empty());
    }
}

TEST_CASE("default scenario calibration", "[core]")
{
    Scenario s = default_scenario();
    const double lambda = s.carrier.wavelength();
    // 1.375 m gives about -43.0 dB free-space magnitude
    CHECK_THAT(oracle::db(std::abs(oracle::friis(1.375, lambda))), WithinAbs(-43.0, 0.01));
    CHECK_THAT(s.trajectory.step_length, WithinRel(0.05 * lambda, 1e-15));
    CHECK(s.trajectory.last_step() == 291);
    CHECK(s.trajectory.total_length / lambda > 14.56);
    CHECK(s.trajectory.total_length / lambda < 14.57);
}

TEST_CASE("Trajectory::last_step tolerates exact multiples", "[core]")
{
    Trajectory t;
    t.step_length = 0.1;
    t.total_length = 0.3; // 0.3 / 0.1 = 2.9999999999999996
    CHECK(t.last_step() == 3);
}

TEST_CASE("Trace invariants", "[core]")
{
    std::vector<ChannelSample> ok{{0, 0.0, 0.0, {1.0, 0.0}}, {1, 1.0, 0.1, {1.0, 0.0}}};
    CHECK_NOTHROW(Trace(ok, "x", "", 1.0));

    CHECK_THROWS_AS(Trace({}, "x", "", 1.0), std::invalid_argument);

    auto gap = ok;
    gap[1].step_index = 2;
    CHECK_THROWS_WITH(Trace(gap, "x", "", 1.0), Catch::Matchers::ContainsSubstring("gap"));

    auto same_time = ok;
    same_time[1].time = 0.0;
    CHECK_THROWS_AS(Trace(same_time, "x", "", 1.0), std::invalid_argument);

    auto nan = ok;
    nan[1].h = {std::nan(""), 0.0};
    CHECK_THROWS_AS(Trace(nan, "x", "", 1.0), std::invalid_argument);
}

TEST_CASE("scenario digest", "[core]")
{
    CHECK(scenario_digest(default_scenario()) == scenario_digest(default_scenario()));
    CHECK(scenario_digest(default_scenario()) != scenario_digest(clutter_scenario()));
    CHECK(scenario_digest(default_scenario()).size() == 16);
}

namespace
{
    Scenario random_scenario(std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> u(-2.0, 2.0), unit(0.0, 1.0);
        auto vec = [&] { return Vec3{u(rng), u(rng), u(rng)}; };
        auto motion = [&]() -> MotionAssignment {
            double r = unit(rng);
            if (r < 0.4)
                return MotionAssignment::stationary();
            if (r < 0.8)
                return MotionAssignment::along_trajectory();
            return MotionAssignment::scaled(u(rng));
        };

        Scenario s;
        s.carrier = {1e9 + 5e9 * unit(rng), 1.0 + unit(rng)};
        std::size_t antennas = 2 + static_cast<std::size_t>(unit(rng) * 3);
        for (std::size_t i = 0; i < antennas; ++i)
            s.antennas.push_back({std::string(1, static_cast<char>('A' + i)), vec(), 6.0 * u(rng), motion()});
        s.tx_id = "A";
        s.rx_id = "B";
        Vec3 d = vec();
        s.trajectory.direction = d * (1.0 / d.norm());
        s.trajectory.origin = s.antennas[0].initial_position;
        s.trajectory.total_length = 0.05 + unit(rng);
        s.trajectory.step_length = s.trajectory.total_length / (1.0 + 60.0 * unit(rng));
        std::size_t objects = static_cast<std::size_t>(unit(rng) * 4);
        for (std::size_t i = 0; i < objects; ++i)
        {
            if (unit(rng) < 0.6)
                s.objects.push_back({PointScatterer{vec(), unit(rng)}, motion()});
            else
            {
                Vec3 n = vec();
                s.objects.push_back({PlaneReflector{vec() * 2.0, n * (1.0 / n.norm()), unit(rng)}, motion()});
            }
        }
        s.noise.positioning_accuracy = unit(rng) < 0.5 ? 0.0 : 1e-4 * unit(rng);
        s.noise.settling_epsilon = 0.05 * unit(rng);
        s.noise.settling_tau = 0.1 * unit(rng);
        s.dwell_time = 0.3 * unit(rng);
        s.speed = 0.01 + unit(rng);
        return s;
    }
}

TEST_CASE("every validated scenario simulates without arithmetic errors", "[core][property]")
{
    std::mt19937_64 rng(20240601);
    int accepted = 0;
    for (int i = 0; i < 600; ++i)
    {
        Scenario s = random_scenario(rng);
        if (!validate_scenario(s).empty())
            continue;
        ++accepted;
        for (Strategy strategy : all_strategies)
        {
            Trace t = serial::run(s, strategy, static_cast<std::uint64_t>(i));
            for (const auto &smp : t.samples())
            {
                REQUIRE(std::isfinite(smp.h.real()));
                REQUIRE(std::isfinite(smp.h.imag()));
            }
        }
    }
    CHECK(accepted > 100);
}
