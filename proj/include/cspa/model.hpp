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

#ifndef CSPA_MODEL_HPP
#define CSPA_MODEL_HPP

#include "cspa/core.hpp"
#include "cspa/motion.hpp"

#include <functional>
#include <span>
#include <iosfwd>
#include <variant>

namespace cspa
{
    // H(n) = H(n0): the channel held static from the start of a with-movement.
    // h0 itself comes from elsewhere (a simulation, a measurement, a draw).
    struct StaticChannelModel
    {
        cdouble h0{1.0, 0.0};
        double origin = 0.0; // n0 or t0

        // - Throws std::invalid_argument unless h0 is finite and non-zero
        static StaticChannelModel from_db_phase(double h0_db, double h0_phase_rad, double origin = 0.0);
        double h0_db() const { return to_db(h0); }
        double h0_phase() const { return std::arg(h0); }
    };

    enum class ResidualDistribution
    {
        gaussian
    };

    // Zero-mean residual Z, applied in the dB-magnitude and phase domains independently
    struct ResidualModel
    {
        double var_amp_db2 = 0.5711;
        double var_phase_rad2 = 0.0049;
        ResidualDistribution distribution = ResidualDistribution::gaussian;
    };

    cdouble eval_static(const StaticChannelModel &model, double n);

    // h with 20 log10 |h| = h0_db + Z_a and arg h = arg h0 + Z_p; Z_a drawn before Z_p.
    // Zero variances return h0 without consuming random numbers.
    cdouble sample_noisy(const StaticChannelModel &model, const ResidualModel &residual, double n, Rng &rng);

    using H0Source = std::variant<cdouble, std::function<cdouble(Rng &)>>;

    struct Interval
    {
        std::size_t start = 0;
        std::size_t length = 1;
        H0Source h0;
    };

    // Contiguous intervals, each starting where the previous one ended, the first at 0
    struct IntervalPlan
    {
        std::vector<Interval> intervals;
    };

    // Sample spacing of generated traces
    struct SampleClock
    {
        double step_length = 0.05 * speed_of_light / 2.45e9; // [m]
        double sample_interval = 1.0;                        // [s]
        double wavelength = speed_of_light / 2.45e9;         // [m], recorded in the trace
    };

    // - Throws std::invalid_argument for gaps, overlaps, zero lengths or an invalid h0
    Trace generate_interval_stationary(const IntervalPlan &plan, const ResidualModel &residual, Rng &rng,
                                       const SampleClock &clock = {});

    struct FittedModel
    {
        StaticChannelModel channel;
        ResidualModel residual;
        double mean_phase_unwrapped = 0.0; // Phase mean before reduction into (-pi, pi]
        std::size_t samples = 0;
    };

    // h0 from the dB-magnitude and unwrapped-phase means, variances from the unbiased
    // sample variances around them
    // - Throws std::invalid_argument for fewer than two samples
    FittedModel fit(const Trace &trace);

    struct ResidualReport
    {
        double mean_amp_db = 0.0;
        double mean_phase = 0.0;
        double lag1_autocorr_amp = 0.0;
        double lag1_autocorr_phase = 0.0;
        double phase_outlier_fraction = 0.0; // |phase residual| > 3 sigma
    };

    // Adequacy of a static fit. Strongly correlated residuals mean the trace is not static.
    ResidualReport residual_diagnostics(const Trace &trace, const FittedModel &fitted);

    // Lag-1 sample autocorrelation, 0 for a constant series
    double lag1_autocorrelation(std::span<const double> x);

    // Key-value model parameters: [model] h0_db, h0_phase_rad, var_amp_db2, var_phase_rad2
    std::string format_model(const StaticChannelModel &channel, const ResidualModel &residual);

    // - Throws ConfigError for unknown keys, malformed numbers or negative variances
    std::pair<StaticChannelModel, ResidualModel> parse_model(std::istream &in);
}

#endif
