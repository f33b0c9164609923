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

#include "cspa/model.hpp"
#include "cspa/analysis.hpp"
#include "cspa/keyvalue.hpp"

#include <fmt/format.h>

#include <random>
#include <stdexcept>

namespace cspa
{
    StaticChannelModel StaticChannelModel::from_db_phase(double h0_db, double h0_phase_rad, double origin)
    {
        if (!std::isfinite(h0_db) || !std::isfinite(h0_phase_rad))
            throw std::invalid_argument("StaticChannelModel: h0 must be finite");
        return {std::polar(std::pow(10.0, h0_db / 20.0), h0_phase_rad), origin};
    }

    cdouble eval_static(const StaticChannelModel &model, double)
    {
        return model.h0;
    }

    cdouble sample_noisy(const StaticChannelModel &model, const ResidualModel &residual, double, Rng &rng)
    {
        if (residual.var_amp_db2 == 0.0 && residual.var_phase_rad2 == 0.0)
            return model.h0;
        if (!(residual.var_amp_db2 >= 0.0) || !(residual.var_phase_rad2 >= 0.0))
            throw std::invalid_argument("sample_noisy: variances must be >= 0");

        auto draw = [&rng](double variance) {
            if (variance == 0.0)
                return 0.0;
            std::normal_distribution<double> z(0.0, std::sqrt(variance));
            return z(rng);
        };
        double z_amp = draw(residual.var_amp_db2);
        double z_phase = draw(residual.var_phase_rad2);
        double mag = std::pow(10.0, (to_db(model.h0) + z_amp) / 20.0);
        return std::polar(mag, std::arg(model.h0) + z_phase);
    }

    Trace generate_interval_stationary(const IntervalPlan &plan, const ResidualModel &residual, Rng &rng,
                                       const SampleClock &clock)
    {
        if (plan.intervals.empty())
            throw std::invalid_argument("generate_interval_stationary: plan has no intervals");

        std::vector<ChannelSample> samples;
        std::size_t next = 0;
        for (const auto &iv : plan.intervals)
        {
            if (iv.length == 0)
                throw std::invalid_argument("generate_interval_stationary: interval lengths must be >= 1");
            if (iv.start != next)
                throw std::invalid_argument(fmt::format("generate_interval_stationary: interval starts at {}, expected {}", iv.start, next));

            cdouble h0 = std::visit(
                [&rng](const auto &src) -> cdouble {
                    if constexpr (std::is_same_v<std::decay_t<decltype(src)>, cdouble>)
                        return src;
                    else
                        return src(rng);
                },
                iv.h0);
            if (!std::isfinite(h0.real()) || !std::isfinite(h0.imag()) || std::abs(h0) == 0.0)
                throw std::invalid_argument("generate_interval_stationary: h0 must be finite and non-zero");

            StaticChannelModel model{h0, static_cast<double>(iv.start)};
            for (std::size_t n = iv.start; n < iv.start + iv.length; ++n)
                samples.push_back({n, static_cast<double>(n) * clock.sample_interval, static_cast<double>(n) * clock.step_length,
                                   sample_noisy(model, residual, static_cast<double>(n), rng)});
            next = iv.start + iv.length;
        }
        return Trace(std::move(samples), "model", "", clock.wavelength);
    }

    FittedModel fit(const Trace &trace)
    {
        if (trace.size() < 2)
            throw std::invalid_argument("fit: at least two samples are required");
        SeriesMoments amp = moments(trace.magnitude_db());
        SeriesMoments phase = moments(trace.phase_unwrapped());

        FittedModel f;
        f.channel = StaticChannelModel::from_db_phase(amp.mean, wrap_phase(phase.mean), static_cast<double>(trace.samples().front().step_index));
        f.residual.var_amp_db2 = amp.variance;
        f.residual.var_phase_rad2 = phase.variance;
        f.mean_phase_unwrapped = phase.mean;
        f.samples = trace.size();
        return f;
    }

    double lag1_autocorrelation(std::span<const double> x)
    {
        if (x.size() < 2)
            return 0.0;
        double mean = 0.0;
        for (double v : x)
            mean += v;
        mean /= static_cast<double>(x.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            den += (x[i] - mean) * (x[i] - mean);
            if (i + 1 < x.size())
                num += (x[i] - mean) * (x[i + 1] - mean);
        }
        return den > 0.0 ? num / den : 0.0;
    }

    ResidualReport residual_diagnostics(const Trace &trace, const FittedModel &fitted)
    {
        const double h0_db = fitted.channel.h0_db();
        // Put arg(h0) on the 2 pi branch closest to the unwrapped series
        const auto phase = trace.phase_unwrapped();
        double branch = std::arg(fitted.channel.h0);
        double mean_phase = 0.0;
        for (double p : phase)
            mean_phase += p;
        mean_phase /= static_cast<double>(phase.size());
        branch += two_pi * std::round((mean_phase - branch) / two_pi);

        std::vector<double> amp_res, phase_res;
        for (double m : trace.magnitude_db())
            amp_res.push_back(m - h0_db);
        for (double p : phase)
            phase_res.push_back(p - branch);

        ResidualReport r;
        for (double v : amp_res)
            r.mean_amp_db += v;
        for (double v : phase_res)
            r.mean_phase += v;
        r.mean_amp_db /= static_cast<double>(amp_res.size());
        r.mean_phase /= static_cast<double>(phase_res.size());
        r.lag1_autocorr_amp = lag1_autocorrelation(amp_res);
        r.lag1_autocorr_phase = lag1_autocorrelation(phase_res);

        double sigma = std::sqrt(fitted.residual.var_phase_rad2);
        if (sigma > 0.0)
        {
            std::size_t outliers = 0;
            for (double v : phase_res)
                outliers += std::abs(v) > 3.0 * sigma;
            r.phase_outlier_fraction = static_cast<double>(outliers) / static_cast<double>(phase_res.size());
        }
        return r;
    }

    std::string format_model(const StaticChannelModel &channel, const ResidualModel &residual)
    {
        return fmt::format("[model]\nh0_db = {:.17g}\nh0_phase_rad = {:.17g}\nvar_amp_db2 = {:.17g}\nvar_phase_rad2 = {:.17g}\n",
                           channel.h0_db(), channel.h0_phase(), residual.var_amp_db2, residual.var_phase_rad2);
    }

    std::pair<StaticChannelModel, ResidualModel> parse_model(std::istream &in)
    {
        KeyValueDocument doc = parse_keyvalue(in);
        double h0_db = -43.4, h0_phase = 0.0;
        ResidualModel residual;
        for (const auto &section : doc.sections)
        {
            if (section.name != "model")
                throw ConfigError(section.line, "unknown section [" + section.name + "]");
            for (const auto &e : section.entries)
            {
                auto v = parse_double(e.value);
                if (!v)
                    throw ConfigError(e.line, "[model] " + e.key + ": expected a number");
                if (e.key == "h0_db")
                    h0_db = *v;
                else if (e.key == "h0_phase_rad")
                    h0_phase = *v;
                else if (e.key == "var_amp_db2")
                    residual.var_amp_db2 = *v;
                else if (e.key == "var_phase_rad2")
                    residual.var_phase_rad2 = *v;
                else
                    throw ConfigError(e.line, "[model] " + e.key + ": unknown key");
                if (e.key.rfind("var_", 0) == 0 && !(*v >= 0.0))
                    throw ConfigError(e.line, "[model] " + e.key + ": variance must be >= 0");
            }
        }
        return {StaticChannelModel::from_db_phase(h0_db, h0_phase), residual};
    }
}
