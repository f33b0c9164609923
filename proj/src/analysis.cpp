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

#include "cspa/analysis.hpp"
#include "cspa/campaign.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cspa
{
    double wrap_phase(double phase)
    {
        if (!std::isfinite(phase))
            throw std::invalid_argument("wrap_phase: non-finite phase");
        double r = std::remainder(phase, two_pi); // [-pi, pi]
        if (r <= -pi)
            r += two_pi;
        return r;
    }

    std::vector<double> unwrap_phase(std::span<const double> phase)
    {
        std::vector<double> out(phase.begin(), phase.end());
        double offset = 0.0;
        for (std::size_t i = 1; i < phase.size(); ++i)
        {
            double d = phase[i] - phase[i - 1];
            if (std::abs(d) > pi)
                offset -= two_pi * std::round(d / two_pi);
            out[i] = phase[i] + offset;
        }
        return out;
    }

    SeriesMoments moments(std::span<const double> series)
    {
        if (series.empty())
            throw std::invalid_argument("stats: empty series");
        // Welford update
        double mean = 0.0, m2 = 0.0;
        double lo = series[0], hi = series[0];
        std::size_t n = 0;
        for (double x : series)
        {
            ++n;
            double delta = x - mean;
            mean += delta / static_cast<double>(n);
            m2 += delta * (x - mean);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        return {mean, hi - lo, n > 1 ? m2 / static_cast<double>(n - 1) : 0.0};
    }

    ChannelStats stats(std::span<const double> mag_db, std::span<const double> phase, PhaseConvention convention)
    {
        if (mag_db.size() != phase.size())
            throw std::invalid_argument("stats: magnitude and phase series differ in length");
        SeriesMoments m = moments(mag_db);
        SeriesMoments p = moments(phase);
        return {m.mean, m.p2p, m.variance, p.mean, p.p2p, p.variance, convention};
    }

    ChannelStats trace_stats(const Trace &trace, PhaseConvention convention)
    {
        auto mag = trace.magnitude_db();
        auto phase = convention == PhaseConvention::wrapped ? trace.phase_wrapped() : trace.phase_unwrapped();
        return stats(mag, phase, convention);
    }

    SummaryTable summarize(std::span<const Trace> traces)
    {
        SummaryTable table;
        std::map<std::string, int> seen;
        auto unique = [&](const std::string &label) {
            int count = ++seen[label];
            return count == 1 ? label : fmt::format("{} ({})", label, count);
        };

        for (const auto &t : traces)
        {
            if (t.strategy_label() == strategy_label(Strategy::uncompensated))
            {
                table.rows.push_back({unique("regular (wrapped 2pi)"), trace_stats(t, PhaseConvention::wrapped)});
                table.rows.push_back({unique("regular (not wrapped)"), trace_stats(t, PhaseConvention::unwrapped)});
            }
            else
                table.rows.push_back({unique(t.strategy_label()), trace_stats(t, PhaseConvention::unwrapped)});
        }
        return table;
    }

    SummaryTable summarize(const CampaignResult &result)
    {
        std::vector<Trace> ordered;
        for (Strategy s : {Strategy::uncompensated, Strategy::with_movement, Strategy::no_movement, Strategy::counter_movement})
            if (auto it = result.traces.find(strategy_label(s)); it != result.traces.end())
                ordered.push_back(it->second);
        for (const auto &[label, trace] : result.traces)
            if (!parse_strategy(label))
                ordered.push_back(trace);
        return summarize(ordered);
    }

    std::string SummaryTable::to_text() const
    {
        std::size_t width = 5;
        for (const auto &r : rows)
            width = std::max(width, r.label.size());

        std::string out = fmt::format("{:<{}}  {:>10} {:>10} {:>12} {:>12} {:>12} {:>12}\n", "label", width, "mean/dB",
                                      "max/dB", "var/dB^2", "mean/rad", "max/rad", "var/rad^2");
        for (const auto &r : rows)
        {
            const auto &s = r.stats;
            out += fmt::format("{:<{}}  {:>10.3f} {:>10.3f} {:>12.6g} {:>12.4f} {:>12.4f} {:>12.6g}\n", r.label, width,
                               s.mean_db, s.p2p_db, s.var_db, s.mean_phase, s.p2p_phase, s.var_phase);
        }
        return out;
    }

    std::string SummaryTable::to_csv() const
    {
        std::string out = "label,mean_db,p2p_db,var_db2,mean_phase_rad,p2p_phase_rad,var_phase_rad2\n";
        for (const auto &r : rows)
        {
            const auto &s = r.stats;
            out += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.label, s.mean_db, s.p2p_db,
                               s.var_db, s.mean_phase, s.p2p_phase, s.var_phase);
        }
        return out;
    }

    const char *verdict_name(Verdict v)
    {
        switch (v)
        {
        case Verdict::first_more_static:
            return "first";
        case Verdict::second_more_static:
            return "second";
        case Verdict::tie:
            return "tie";
        case Verdict::not_applicable:
            return "-";
        }
        return "-";
    }

    Comparison compare(const Trace &first, const Trace &second)
    {
        Comparison c;
        c.first = trace_stats(first);
        c.second = trace_stats(second);

        auto spread = [](double a, double b) {
            if (a < b)
                return Verdict::first_more_static;
            if (b < a)
                return Verdict::second_more_static;
            return Verdict::tie;
        };
        auto add = [&](const char *name, double a, double b, bool is_spread) {
            c.metrics.push_back({name, a, b, a - b, is_spread ? spread(a, b) : Verdict::not_applicable});
        };
        add("mean_db", c.first.mean_db, c.second.mean_db, false);
        add("p2p_db", c.first.p2p_db, c.second.p2p_db, true);
        add("var_db", c.first.var_db, c.second.var_db, true);
        add("mean_phase", c.first.mean_phase, c.second.mean_phase, false);
        add("p2p_phase", c.first.p2p_phase, c.second.p2p_phase, true);
        add("var_phase", c.first.var_phase, c.second.var_phase, true);
        return c;
    }

    std::string Comparison::to_text(const std::string &first_name, const std::string &second_name) const
    {
        std::string out = fmt::format("first:  {}\nsecond: {}\n", first_name, second_name);
        out += fmt::format("{:<12} {:>14} {:>14} {:>14}  {}\n", "metric", "first", "second", "delta", "more static");
        for (const auto &m : metrics)
            out += fmt::format("{:<12} {:>14.6g} {:>14.6g} {:>14.6g}  {}\n", m.metric, m.first, m.second, m.delta,
                               verdict_name(m.verdict));
        return out;
    }
}
