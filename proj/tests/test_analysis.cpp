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

#include "oracles.hpp"

#include <algorithm>
#include <random>

using namespace cspa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    Trace trace_of(const std::vector<cdouble> &h, const std::string &label)
    {
        std::vector<ChannelSample> samples;
        for (std::size_t i = 0; i < h.size(); ++i)
            samples.push_back({i, static_cast<double>(i), 0.0, h[i]});
        return Trace(samples, label, "", 0.1);
    }
}

TEST_CASE("wrap_phase", "[analysis]")
{
    CHECK_THAT(wrap_phase(7.0), WithinAbs(0.716814, 1e-6));
    CHECK_THAT(wrap_phase(7.0), WithinAbs(7.0 - 2.0 * oracle::pi, 1e-15));
    CHECK(wrap_phase(-pi) == pi);
    CHECK(wrap_phase(pi) == pi);
    CHECK(wrap_phase(0.3) == 0.3);
    CHECK(wrap_phase(0.0) == 0.0);
    CHECK_THROWS_AS(wrap_phase(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(wrap_phase(INFINITY), std::invalid_argument);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-200.0, 200.0);
    std::uniform_int_distribution<int> k(-50, 50);
    for (int i = 0; i < 10000; ++i)
    {
        double x = u(rng);
        double w = wrap_phase(x);
        REQUIRE(w > -pi);
        REQUIRE(w <= pi);
        REQUIRE(wrap_phase(w) == w);
        REQUIRE_THAT(w, WithinAbs(oracle::wrap(x), 1e-12));
        REQUIRE(oracle::angle_distance(wrap_phase(x + two_pi * k(rng)), w) < 1e-11);
    }
}

TEST_CASE("unwrap_phase", "[analysis]")
{
    auto u = unwrap_phase(std::vector<double>{3.0, -3.0});
    CHECK(u[0] == 3.0);
    CHECK_THAT(u[1], WithinAbs(3.28319, 1e-5));

    std::vector<double> smooth{0.1, 0.5, 1.2, 2.0, 2.9, 2.0};
    CHECK(unwrap_phase(smooth) == smooth);
    CHECK(unwrap_phase(std::vector<double>{}).empty());
    CHECK(unwrap_phase(std::vector<double>{-1.0}) == std::vector<double>{-1.0});

    SECTION("wrapped LOS ramp comes back up to one 2 pi multiple")
    {
        const double lambda = 0.12236426857142857;
        std::vector<double> ramp, wrapped;
        for (int n = 0; n < 292; ++n)
        {
            double d = 1.375 + n * 0.05 * lambda;
            ramp.push_back(-2.0 * oracle::pi * d / lambda);
            wrapped.push_back(oracle::wrap(ramp.back()));
        }
        auto back = unwrap_phase(wrapped);
        double k = std::round((back[0] - ramp[0]) / two_pi);
        for (std::size_t i = 0; i < ramp.size(); ++i)
            REQUIRE_THAT(back[i] - ramp[i], WithinAbs(k * two_pi, 1e-9));
    }
    SECTION("random smooth walks")
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> step(-3.0, 3.0), start(-10.0, 10.0);
        for (int trial = 0; trial < 200; ++trial)
        {
            std::vector<double> x{start(rng)}, w;
            for (int i = 1; i < 300; ++i)
                x.push_back(x.back() + step(rng));
            for (double v : x)
                w.push_back(wrap_phase(v));
            auto back = unwrap_phase(w);
            double offset = back[0] - x[0];
            REQUIRE_THAT(std::remainder(offset, two_pi), WithinAbs(0.0, 1e-12));
            for (std::size_t i = 0; i < x.size(); ++i)
                REQUIRE_THAT(back[i] - x[i], WithinAbs(offset, 1e-9));
        }
    }
}

TEST_CASE("stats", "[analysis]")
{
    std::vector<double> mag{-45, -44, -43}, ph{0.0, 0.0, 0.0};
    ChannelStats s = stats(mag, ph);
    CHECK(s.mean_db == -44.0);
    CHECK(s.p2p_db == 2.0);
    CHECK(s.var_db == 1.0);
    CHECK(s.p2p_phase == 0.0);
    CHECK(s.var_phase == 0.0);

    CHECK(moments(std::vector<double>{5.0}).variance == 0.0);
    CHECK_THROWS_AS(stats(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(stats(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);

    SECTION("brute-force oracle")
    {
        std::mt19937_64 rng(1000);
        std::uniform_int_distribution<std::size_t> len(2, 500);
        std::normal_distribution<double> g(0.0, 1.0);
        for (int trial = 0; trial < 1000; ++trial)
        {
            std::size_t n = len(rng);
            double scale = std::exp(g(rng)), centre = 40.0 * g(rng);
            std::vector<double> a(n), b(n);
            for (std::size_t i = 0; i < n; ++i)
                a[i] = centre + scale * g(rng), b[i] = g(rng);
            ChannelStats st = stats(a, b);
            auto oa = oracle::two_pass(a), ob = oracle::two_pass(b);
            REQUIRE_THAT(st.mean_db, WithinAbs(oa.mean, 1e-12));
            REQUIRE_THAT(st.p2p_db, WithinAbs(oa.p2p, 1e-12));
            REQUIRE_THAT(st.var_db, WithinAbs(oa.var, 1e-12));
            REQUIRE_THAT(st.mean_phase, WithinAbs(ob.mean, 1e-12));
            REQUIRE_THAT(st.p2p_phase, WithinAbs(ob.p2p, 1e-12));
            REQUIRE_THAT(st.var_phase, WithinAbs(ob.var, 1e-12));
        }
    }
    SECTION("permutation invariance and translation equivariance")
    {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> g(0.0, 2.0);
        std::vector<double> x(257);
        for (double &v : x)
            v = g(rng);
        SeriesMoments m = moments(x);
        std::vector<double> shuffled = x;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        SeriesMoments p = moments(shuffled);
        CHECK_THAT(p.mean, WithinAbs(m.mean, 1e-13));
        CHECK_THAT(p.variance, WithinRel(m.variance, 1e-12));
        CHECK(p.p2p == m.p2p);

        std::vector<double> shifted = x;
        for (double &v : shifted)
            v += 12.5;
        SeriesMoments t = moments(shifted);
        CHECK_THAT(t.mean, WithinAbs(m.mean + 12.5, 1e-12));
        CHECK_THAT(t.variance, WithinRel(m.variance, 1e-11));
        CHECK_THAT(t.p2p, WithinAbs(m.p2p, 1e-12));
    }
    SECTION("wrapped ramp over many cycles approaches pi^2/3")
    {
        std::vector<double> w;
        for (int i = 0; i < 20 * 64; ++i) // 20 cycles, 64 samples each
            w.push_back(oracle::wrap(-0.3 - i * two_pi / 64.0 * 1.0001));
        CHECK_THAT(moments(w).variance, WithinRel(oracle::pi * oracle::pi / 3.0, 0.10));
    }
}

TEST_CASE("summarize", "[analysis]")
{
    CampaignResult r = run_triple(clutter_scenario(), default_seed);
    SummaryTable table = summarize(r);
    REQUIRE(table.rows.size() == 4);
    CHECK(table.rows[0].label == "regular (wrapped 2pi)");
    CHECK(table.rows[1].label == "regular (not wrapped)");
    CHECK(table.rows[2].label == "channel static partner antenna");
    CHECK(table.rows[3].label == "no movement");
    CHECK(table.rows[0].stats.phase_convention == PhaseConvention::wrapped);
    CHECK(table.rows[0].stats.p2p_phase <= two_pi);
    CHECK(table.rows[0].stats.var_db == table.rows[1].stats.var_db);
    CHECK(table.rows[1].stats.var_phase > table.rows[0].stats.var_phase);

    SECTION("free space calibration")
    {
        Scenario s = default_scenario();
        s.noise.positioning_accuracy = 0.0;
        SummaryTable t = summarize(run_triple(s, default_seed));
        CHECK_THAT(t.rows[0].stats.p2p_db, WithinAbs(7.22, 0.01));
        CHECK(t.rows[2].stats.var_db == 0.0);
        CHECK(t.rows[2].stats.var_phase == 0.0);
        CHECK(t.rows[3].stats.var_db == 0.0);
    }
    SECTION("text and csv")
    {
        std::string csv = table.to_csv();
        CHECK(csv.rfind("label,mean_db,p2p_db,var_db2,mean_phase_rad,p2p_phase_rad,var_phase_rad2\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
        std::string text = table.to_text();
        CHECK(text.find("channel static partner antenna") != std::string::npos);
        CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    }
    SECTION("duplicate labels")
    {
        std::vector<Trace> ts{trace_of({1.0, 2.0}, "x"), trace_of({1.0, 2.0}, "x"), trace_of({1.0, 2.0}, "x")};
        SummaryTable t = summarize(ts);
        CHECK(t.rows[0].label == "x");
        CHECK(t.rows[1].label == "x (2)");
        CHECK(t.rows[2].label == "x (3)");
    }
}

TEST_CASE("compare", "[analysis]")
{
    CampaignResult r = run_triple(clutter_scenario(), default_seed);
    const Trace &un = r.traces.at("regular");
    const Trace &with = r.traces.at("channel static partner antenna");
    const Trace &none = r.traces.at("no movement");

    Comparison self = compare(with, with);
    REQUIRE(self.metrics.size() == 6);
    for (const auto &m : self.metrics)
    {
        CHECK(m.delta == 0.0);
        CHECK((m.verdict == Verdict::tie || m.verdict == Verdict::not_applicable));
    }

    auto verdict = [](const Comparison &c, const std::string &metric) {
        for (const auto &m : c.metrics)
            if (m.metric == metric)
                return m.verdict;
        return Verdict::not_applicable;
    };
    Comparison c = compare(with, un);
    CHECK(verdict(c, "var_db") == Verdict::first_more_static);
    CHECK(verdict(c, "var_phase") == Verdict::first_more_static);
    CHECK(verdict(c, "mean_db") == Verdict::not_applicable);
    Comparison d = compare(with, none);
    CHECK(verdict(d, "var_db") == Verdict::second_more_static);
    CHECK(verdict(d, "var_phase") == Verdict::second_more_static);

    Comparison lengths = compare(trace_of({1.0, 1.0, 1.0}, "a"), trace_of({1.0, 2.0}, "b"));
    CHECK(lengths.metrics[1].delta < 0.0);
    CHECK(c.to_text("with", "regular").find("var_phase") != std::string::npos);
    CHECK(std::string(verdict_name(Verdict::first_more_static)) == "first");
}
