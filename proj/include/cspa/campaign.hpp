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

#ifndef CSPA_CAMPAIGN_HPP
#define CSPA_CAMPAIGN_HPP

#include "cspa/core.hpp"
#include "cspa/motion.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>

namespace cspa
{
    // A propagation singularity hit during a run
    class SimulationError : public std::runtime_error
    {
    public:
        SimulationError(std::size_t step, const std::string &what)
            : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
        std::size_t step() const { return step_; }

    private:
        std::size_t step_;
    };

    struct CampaignResult
    {
        std::map<std::string, Trace> traces; // Keyed by strategy label
        std::uint64_t seed = 0;
        std::string scenario_digest;
    };

    // Move - dwell - measure over the full trajectory. For n = 0 .. last_step:
    // plan_step, apply_positioning_error, total_channel times settling_perturbation,
    // sampled at t(n) = n (step_length / speed + dwell_time).
    //
    // All random draws happen up front in step order; the channel evaluations then run
    // in parallel. The result is bit-identical to serial::run.
    // - Throws std::invalid_argument for an invalid scenario, SimulationError on singular geometry
    Trace run(const Scenario &scenario, Strategy strategy, std::uint64_t seed);

    namespace serial
    {
        // Reference implementation: one step at a time, draws interleaved with evaluation
        Trace run(const Scenario &scenario, Strategy strategy, std::uint64_t seed);
    }

    // Sub-seed for the k-th run of a campaign: the splitmix64 finalizer applied to
    // master + (k + 1) * 0x9E3779B97F4A7C15
    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t k);

    // Runs uncompensated (k = 0), with_movement (k = 1) and no_movement (k = 2), each with
    // derive_seed(seed, k)
    CampaignResult run_triple(const Scenario &scenario, std::uint64_t seed);

    // Trace CSV. Optional "# key: value" metadata lines (strategy, scenario_digest,
    // wavelength_m) precede the mandatory header
    // step_index,time_s,moved_distance_m,moved_distance_lambda,h_re,h_im,mag_db,phase_wrapped_rad,phase_unwrapped_rad
    inline constexpr const char *trace_csv_header =
        "step_index,time_s,moved_distance_m,moved_distance_lambda,h_re,h_im,mag_db,phase_wrapped_rad,phase_unwrapped_rad";

    class TraceParseError : public std::runtime_error
    {
    public:
        TraceParseError(std::size_t line, const std::string &what)
            : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
        std::size_t line() const { return line_; }

    private:
        std::size_t line_;
    };

    void write_trace_csv(const Trace &trace, std::ostream &out);
    void write_trace_csv(const Trace &trace, const std::filesystem::path &path);

    // - Throws TraceParseError naming the offending line. A missing strategy label falls back
    //   to `fallback_label`; a missing wavelength is recovered from the distance columns.
    Trace read_trace_csv(std::istream &in, const std::string &fallback_label = "");
    Trace read_trace_csv(const std::filesystem::path &path);
}

#endif
