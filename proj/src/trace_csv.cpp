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

#include "cspa/campaign.hpp"
#include "cspa/keyvalue.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <array>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace cspa
{
    namespace
    {
        constexpr std::size_t column_count = 9;

        std::vector<std::string_view> split_csv(std::string_view line)
        {
            std::vector<std::string_view> fields;
            std::size_t start = 0;
            while (true)
            {
                std::size_t comma = line.find(',', start);
                fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
            return fields;
        }
    }

    void write_trace_csv(const Trace &trace, std::ostream &out)
    {
        const double lambda = trace.wavelength();
        const auto wrapped = trace.phase_wrapped();
        const auto unwrapped = trace.phase_unwrapped();

        fmt::memory_buffer buf;
        fmt::format_to(std::back_inserter(buf), "# strategy: {}\n", trace.strategy_label());
        fmt::format_to(std::back_inserter(buf), "# scenario_digest: {}\n", trace.scenario_digest());
        fmt::format_to(std::back_inserter(buf), "# wavelength_m: {:.17g}\n", lambda);
        fmt::format_to(std::back_inserter(buf), "{}\n", trace_csv_header);

        const auto &samples = trace.samples();
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const auto &s = samples[i];
            fmt::format_to(std::back_inserter(buf), "{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                           s.step_index, s.time, s.moved_distance, s.moved_distance / lambda, s.h.real(), s.h.imag(),
                           to_db(s.h), wrapped[i], unwrapped[i]);
        }
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }

    void write_trace_csv(const Trace &trace, const std::filesystem::path &path)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open '" + path.string() + "' for writing");
        write_trace_csv(trace, out);
        if (!out)
            throw std::runtime_error("failed writing '" + path.string() + "'");
    }

    Trace read_trace_csv(std::istream &in, const std::string &fallback_label)
    {
        std::string label = fallback_label;
        std::string digest;
        double wavelength = std::numeric_limits<double>::quiet_NaN();
        double wavelength_from_rows = std::numeric_limits<double>::quiet_NaN();
        bool header_seen = false;

        std::vector<ChannelSample> samples;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line))
        {
            ++line_no;
            std::string_view view = trim(line);
            if (view.empty())
                continue;

            if (!header_seen)
            {
                if (view.front() == '#')
                {
                    view.remove_prefix(1);
                    std::size_t colon = view.find(':');
                    if (colon == std::string_view::npos)
                        continue; // Free-form comment
                    std::string_view key = trim(view.substr(0, colon));
                    std::string_view value = trim(view.substr(colon + 1));
                    if (key == "strategy")
                        label = std::string(value);
                    else if (key == "scenario_digest")
                        digest = std::string(value);
                    else if (key == "wavelength_m")
                    {
                        auto parsed = parse_double(value);
                        if (!parsed || !(*parsed > 0.0))
                            throw TraceParseError(line_no, "invalid wavelength_m '" + std::string(value) + "'");
                        wavelength = *parsed;
                    }
                    continue;
                }
                if (view != trace_csv_header)
                    throw TraceParseError(line_no, std::string("expected header '") + trace_csv_header + "'");
                header_seen = true;
                continue;
            }

            auto fields = split_csv(view);
            if (fields.size() != column_count)
                throw TraceParseError(line_no, fmt::format("expected {} columns, found {}", column_count, fields.size()));

            std::uint64_t step = 0;
            auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), step);
            if (ec != std::errc() || ptr != fields[0].data() + fields[0].size())
                throw TraceParseError(line_no, "invalid step_index '" + std::string(fields[0]) + "'");

            std::array<double, column_count - 1> values{};
            static constexpr const char *names[] = {"time_s", "moved_distance_m", "moved_distance_lambda", "h_re",
                                                    "h_im", "mag_db", "phase_wrapped_rad", "phase_unwrapped_rad"};
            for (std::size_t c = 1; c < column_count; ++c)
            {
                auto v = parse_double(fields[c]);
                if (!v)
                    throw TraceParseError(line_no, fmt::format("invalid {} '{}'", names[c - 1], fields[c]));
                values[c - 1] = *v;
            }

            ChannelSample s{step, values[0], values[1], cdouble{values[3], values[4]}};
            if (!samples.empty())
            {
                const auto &prev = samples.back();
                if (step != prev.step_index + 1)
                    throw TraceParseError(line_no, fmt::format("step_index gap: expected {}, found {}", prev.step_index + 1, step));
                if (!(s.time > prev.time))
                    throw TraceParseError(line_no, "time_s must strictly increase");
            }
            if (!std::isfinite(s.h.real()) || !std::isfinite(s.h.imag()) || !std::isfinite(s.time) || !std::isfinite(s.moved_distance))
                throw TraceParseError(line_no, "non-finite value");
            if (std::isnan(wavelength_from_rows) && values[1] != 0.0 && values[2] != 0.0)
                wavelength_from_rows = values[1] / values[2];
            samples.push_back(s);
        }

        if (!header_seen)
            throw TraceParseError(line_no, "missing header");
        if (samples.empty())
            throw TraceParseError(line_no, "trace has no samples");
        if (std::isnan(wavelength))
            wavelength = wavelength_from_rows;
        return Trace(std::move(samples), label, digest, wavelength);
    }

    Trace read_trace_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open '" + path.string() + "'");
        return read_trace_csv(in, path.stem().string());
    }
}
