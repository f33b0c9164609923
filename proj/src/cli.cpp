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

#include "cspa/cli.hpp"
#include "cspa/analysis.hpp"
#include "cspa/campaign.hpp"
#include "cspa/model.hpp"
#include "cspa/scenario_file.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace fs = std::filesystem;

namespace cspa::cli
{
    namespace
    {
        // Failure with a chosen exit code; the message is printed as "error: <message>"
        struct Failure
        {
            ExitCode code;
            std::string message;
        };

        struct GlobalOptions
        {
            std::optional<std::uint64_t> seed;
            std::string out_dir = ".";
            std::string format = "text";
        };

        struct SimulateOptions
        {
            std::string scenario_path;
            std::string strategy = "triple";
            std::vector<std::string> emit{"trace"};
        };

        struct ModelGenOptions
        {
            std::string params_path;
            std::optional<double> h0_db, h0_phase, var_amp, var_phase;
            std::size_t samples = 100000;
            std::string output;
        };

        void ensure_directory(const fs::path &dir)
        {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec || !fs::is_directory(dir))
                throw Failure{usage_error, "output directory '" + dir.string() + "' is not writable"};
        }

        void write_text(const fs::path &path, const std::string &text)
        {
            std::ofstream f(path, std::ios::binary);
            f << text;
            if (!f)
                throw Failure{runtime_error, "failed writing '" + path.string() + "'"};
        }

        Trace load_trace(const std::string &path)
        {
            try
            {
                return read_trace_csv(fs::path(path));
            }
            catch (const TraceParseError &e)
            {
                throw Failure{usage_error, path + ": " + e.what()};
            }
            catch (const std::exception &e)
            {
                throw Failure{usage_error, path + ": " + e.what()};
            }
        }

        std::string table_output(const SummaryTable &table, const GlobalOptions &g)
        {
            return g.format == "csv" ? table.to_csv() : table.to_text();
        }

        int cmd_simulate(const GlobalOptions &g, const SimulateOptions &o, std::ostream &out, std::ostream &err)
        {
            Scenario scenario = default_scenario();
            if (!o.scenario_path.empty())
            {
                try
                {
                    scenario = load_scenario(o.scenario_path);
                }
                catch (const ConfigError &e)
                {
                    throw Failure{usage_error, e.what()};
                }
            }
            if (auto violations = validate_scenario(scenario); !violations.empty())
            {
                std::string msg = "invalid scenario";
                for (const auto &v : violations)
                    msg += fmt::format("\n  {}: {}", v.field, v.rule);
                throw Failure{usage_error, msg};
            }

            for (const auto &e : o.emit)
                if (e != "trace" && e != "summary" && e != "plotdata")
                    throw Failure{usage_error, "--emit: unknown output '" + e + "' (trace, summary, plotdata)"};
            auto emits = [&](std::string_view what) { return std::find(o.emit.begin(), o.emit.end(), what) != o.emit.end(); };

            const std::uint64_t seed = g.seed.value_or(scenario.noise.seed);
            std::vector<std::pair<std::string, Trace>> traces; // file stem, trace
            try
            {
                if (o.strategy == "triple")
                {
                    CampaignResult result = run_triple(scenario, seed);
                    for (Strategy s : {Strategy::uncompensated, Strategy::with_movement, Strategy::no_movement})
                        traces.emplace_back(strategy_name(s), result.traces.at(strategy_label(s)));
                }
                else
                {
                    auto strategy = parse_strategy(o.strategy);
                    if (!strategy)
                        throw Failure{usage_error, "--strategy: unknown strategy '" + o.strategy + "'"};
                    traces.emplace_back(strategy_name(*strategy), run(scenario, *strategy, seed));
                }
            }
            catch (const SimulationError &e)
            {
                throw Failure{runtime_error, std::string("simulation failed at ") + e.what()};
            }

            const fs::path dir(g.out_dir);
            ensure_directory(dir);
            // Plot data is the trace CSV itself: moved_distance_lambda against mag_db / phase_wrapped_rad
            if (emits("trace") || emits("plotdata"))
                for (const auto &[stem, trace] : traces)
                {
                    fs::path path = dir / (stem + ".csv");
                    try
                    {
                        write_trace_csv(trace, path);
                    }
                    catch (const std::exception &e)
                    {
                        throw Failure{runtime_error, e.what()};
                    }
                    err << "wrote " << path.string() << "\n";
                }

            std::vector<Trace> ordered;
            for (const auto &entry : traces)
                ordered.push_back(entry.second);
            SummaryTable table = summarize(ordered);
            if (emits("summary"))
            {
                write_text(dir / "summary.txt", table.to_text());
                write_text(dir / "summary.csv", table.to_csv());
                err << "wrote " << (dir / "summary.txt").string() << ", " << (dir / "summary.csv").string() << "\n";
            }
            out << table_output(table, g);
            return ok;
        }

        int cmd_analyze(const GlobalOptions &g, const std::vector<std::string> &paths, std::ostream &out)
        {
            std::vector<Trace> traces;
            for (const auto &p : paths)
                traces.push_back(load_trace(p));
            out << table_output(summarize(traces), g);
            return ok;
        }

        int cmd_compare(const GlobalOptions &g, const std::vector<std::string> &paths, std::ostream &out)
        {
            if (paths.size() != 2)
                throw Failure{usage_error, "compare needs exactly two traces"};
            Comparison c = compare(load_trace(paths[0]), load_trace(paths[1]));
            if (g.format == "csv")
            {
                out << "metric,first,second,delta,more_static\n";
                for (const auto &m : c.metrics)
                    out << fmt::format("{},{:.17g},{:.17g},{:.17g},{}\n", m.metric, m.first, m.second, m.delta, verdict_name(m.verdict));
            }
            else
                out << c.to_text(paths[0], paths[1]);
            return ok;
        }

        int cmd_model_gen(const GlobalOptions &g, const ModelGenOptions &o, std::ostream &out, std::ostream &err)
        {
            StaticChannelModel channel = StaticChannelModel::from_db_phase(-43.4, -0.293);
            ResidualModel residual;
            if (!o.params_path.empty())
            {
                std::ifstream in(o.params_path);
                if (!in)
                    throw Failure{usage_error, "cannot open model parameter file '" + o.params_path + "'"};
                try
                {
                    std::tie(channel, residual) = parse_model(in);
                }
                catch (const ConfigError &e)
                {
                    throw Failure{usage_error, o.params_path + ": " + e.what()};
                }
            }
            if (o.h0_db || o.h0_phase)
                channel = StaticChannelModel::from_db_phase(o.h0_db.value_or(channel.h0_db()), o.h0_phase.value_or(channel.h0_phase()));
            if (o.var_amp)
                residual.var_amp_db2 = *o.var_amp;
            if (o.var_phase)
                residual.var_phase_rad2 = *o.var_phase;
            if (!(residual.var_amp_db2 >= 0.0))
                throw Failure{usage_error, "--var-amp-db2 must be >= 0"};
            if (!(residual.var_phase_rad2 >= 0.0))
                throw Failure{usage_error, "--var-phase-rad2 must be >= 0"};
            if (o.samples < 1)
                throw Failure{usage_error, "--samples must be >= 1"};

            Rng rng(g.seed.value_or(default_seed));
            IntervalPlan plan{{Interval{0, o.samples, channel.h0}}};
            Trace trace = generate_interval_stationary(plan, residual, rng);

            fs::path path = o.output.empty() ? fs::path(g.out_dir) / "model.csv" : fs::path(o.output);
            if (path.has_parent_path())
                ensure_directory(path.parent_path());
            try
            {
                write_trace_csv(trace, path);
            }
            catch (const std::exception &e)
            {
                throw Failure{runtime_error, e.what()};
            }
            err << "wrote " << path.string() << "\n";
            out << format_model(channel, residual);
            return ok;
        }

        int cmd_model_fit(const std::string &path, std::ostream &out)
        {
            Trace trace = load_trace(path);
            if (trace.size() < 2)
                throw Failure{usage_error, path + ": fit needs at least two samples"};
            FittedModel f = fit(trace);
            ResidualReport r = residual_diagnostics(trace, f);
            out << format_model(f.channel, f.residual);
            out << fmt::format("# samples = {}\n", f.samples);
            out << fmt::format("# residual_mean_db = {:.6g}\n# residual_mean_phase_rad = {:.6g}\n", r.mean_amp_db, r.mean_phase);
            out << fmt::format("# lag1_autocorr_db = {:.6g}\n# lag1_autocorr_phase = {:.6g}\n", r.lag1_autocorr_amp, r.lag1_autocorr_phase);
            out << fmt::format("# phase_outlier_fraction = {:.6g}\n", r.phase_outlier_fraction);
            return ok;
        }
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Channel static partner antenna simulator and analysis toolkit", "cspa"};
        app.require_subcommand(1);
        app.fallthrough();

        GlobalOptions g;
        app.add_option("--seed", g.seed, "Random seed (default: scenario seed, " + std::to_string(default_seed) + ")");
        app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
        app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();

        SimulateOptions sim;
        auto *simulate = app.add_subcommand("simulate", "Run a measurement campaign and write trace CSVs");
        simulate->add_option("--scenario", sim.scenario_path, "Scenario file (default: built-in free-space scenario)");
        simulate->add_option("--strategy", sim.strategy,
                             "uncompensated, with_movement, counter_movement, no_movement or triple")
            ->capture_default_str();
        simulate->add_option("--emit", sim.emit, "Outputs: trace, summary, plotdata")->delimiter(',')->capture_default_str();

        std::vector<std::string> analyze_paths;
        auto *analyze = app.add_subcommand("analyze", "Summary statistics of trace CSVs");
        analyze->add_option("traces", analyze_paths, "Trace CSV files")->required();

        std::vector<std::string> compare_paths;
        auto *compare_cmd = app.add_subcommand("compare", "Compare the statistics of two traces");
        compare_cmd->add_option("traces", compare_paths, "Two trace CSV files")->required()->expected(2);

        auto *model = app.add_subcommand("model", "Static channel model generation and fitting");
        model->require_subcommand(1);
        ModelGenOptions gen;
        auto *model_gen = model->add_subcommand("gen", "Generate a synthetic static-channel trace");
        model_gen->add_option("--params", gen.params_path, "Model parameter file");
        model_gen->add_option("--h0-db", gen.h0_db, "20 log10 |h0|");
        model_gen->add_option("--h0-phase-rad", gen.h0_phase, "arg h0");
        model_gen->add_option("--var-amp-db2", gen.var_amp, "Magnitude residual variance");
        model_gen->add_option("--var-phase-rad2", gen.var_phase, "Phase residual variance");
        model_gen->add_option("--samples,-n", gen.samples, "Number of samples")->capture_default_str();
        model_gen->add_option("--output,-o", gen.output, "Trace CSV path (default: <out>/model.csv)");
        std::string fit_path;
        auto *model_fit = model->add_subcommand("fit", "Fit a static channel model to a trace");
        model_fit->add_option("trace", fit_path, "Trace CSV file")->required();

        try
        {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app.parse(reversed);
        }
        catch (const CLI::ParseError &e)
        {
            int code = app.exit(e, out, err);
            return code == 0 ? ok : usage_error;
        }

        try
        {
            if (*simulate)
                return cmd_simulate(g, sim, out, err);
            if (*analyze)
                return cmd_analyze(g, analyze_paths, out);
            if (*compare_cmd)
                return cmd_compare(g, compare_paths, out);
            if (*model_gen)
                return cmd_model_gen(g, gen, out, err);
            if (*model_fit)
                return cmd_model_fit(fit_path, out);
        }
        catch (const Failure &f)
        {
            err << "error: " << f.message << "\n";
            return f.code;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << "\n";
            return runtime_error;
        }
        return usage_error;
    }
}
