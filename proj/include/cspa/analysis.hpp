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

#ifndef CSPA_ANALYSIS_HPP
#define CSPA_ANALYSIS_HPP

#include "cspa/core.hpp"

#include <span>
#include <string>
#include <vector>

namespace cspa
{
    struct CampaignResult;

    // Reduces to (-pi, pi]
    // - Throws std::invalid_argument for non-finite input
    double wrap_phase(double phase);

    // Removes 2 pi jumps: whenever successive samples differ by more than pi the remaining
    // series is shifted by the nearest multiple of 2 pi. The first element is kept.
    std::vector<double> unwrap_phase(std::span<const double> phase);

    enum class PhaseConvention
    {
        wrapped,
        unwrapped
    };

    // Mean, peak-to-peak and unbiased (N - 1) variance of magnitude [dB] and phase [rad]
    struct ChannelStats
    {
        double mean_db = 0.0;
        double p2p_db = 0.0;
        double var_db = 0.0;
        double mean_phase = 0.0;
        double p2p_phase = 0.0;
        double var_phase = 0.0;
        PhaseConvention phase_convention = PhaseConvention::unwrapped;
    };

    // Single-pass moments of one series
    struct SeriesMoments
    {
        double mean = 0.0;
        double p2p = 0.0;
        double variance = 0.0; // Divides by N - 1, 0 for N = 1
    };

    // - Throws std::invalid_argument for an empty series
    SeriesMoments moments(std::span<const double> series);

    // - Throws std::invalid_argument for empty or unequal-length series
    ChannelStats stats(std::span<const double> mag_db, std::span<const double> phase,
                       PhaseConvention convention = PhaseConvention::unwrapped);

    // Stats of a trace, on the wrapped or unwrapped phase
    ChannelStats trace_stats(const Trace &trace, PhaseConvention convention = PhaseConvention::unwrapped);

    struct SummaryRow
    {
        std::string label;
        ChannelStats stats;
    };

    struct SummaryTable
    {
        std::vector<SummaryRow> rows;

        std::string to_text() const; // Aligned columns
        std::string to_csv() const;  // label,mean_db,p2p_db,var_db2,mean_phase_rad,p2p_phase_rad,var_phase_rad2
    };

    // One row per trace in the given order. Traces labeled "regular" produce two rows,
    // "regular (wrapped 2pi)" and "regular (not wrapped)"; all other rows use unwrapped phase.
    // Duplicate labels get a " (2)", " (3)", ... suffix.
    SummaryTable summarize(std::span<const Trace> traces);

    // Rows ordered regular, channel static partner antenna, no movement, then anything else
    SummaryTable summarize(const CampaignResult &result);

    enum class Verdict
    {
        first_more_static,
        second_more_static,
        tie,
        not_applicable // Means carry no notion of staticness
    };

    struct MetricDelta
    {
        std::string metric;
        double first = 0.0;
        double second = 0.0;
        double delta = 0.0; // first - second
        Verdict verdict = Verdict::not_applicable;
    };

    struct Comparison
    {
        ChannelStats first;
        ChannelStats second;
        std::vector<MetricDelta> metrics; // mean_db, p2p_db, var_db, mean_phase, p2p_phase, var_phase

        std::string to_text(const std::string &first_name, const std::string &second_name) const;
    };

    // Compares the unwrapped-phase stats of two traces; lengths may differ. For spread metrics
    // the smaller value is the more static trace.
    Comparison compare(const Trace &first, const Trace &second);

    const char *verdict_name(Verdict v);
}

#endif
