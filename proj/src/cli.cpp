// Copyright 2026 The qurshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <utility>

#include "qurshadow/harness.hpp"

namespace qurshadow {

namespace {

enum ExitCode : int {
    kOk = 0,
    kInvalidConfig = 2,
    kIoFailure = 3,
    kRuntimeFailure = 4,
};

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string describe_paths(const std::vector<std::filesystem::path>& paths) {
    std::string s;
    for (const auto& p : paths) {
        if (!s.empty()) s += ' ';
        s += p.string();
    }
    return s;
}

void report_purity_sweep(const ExperimentConfig& cfg, const ExperimentOutput& result, std::ostream& out) {
    const ResultTable& t = result.tables.front();
    const double top = static_cast<double>(*std::max_element(cfg.n_s_grid.begin(), cfg.n_s_grid.end()));
    double gap = 0.0;
    int n = 0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (t.real(r, "n_s") != top) continue;
        gap += t.real(r, "abs_qst_minus_cs");
        ++n;
    }
    out << "purity-sweep: " << t.rows.size() << " rows, mean |P_qst - P_cs| at n_s=" << top << ": "
        << fmt4(n > 0 ? gap / n : 0.0);
}

void report_re(const ResultTable& t, std::ostream& out) {
    double slack = 1.0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (const char* b : {"yuan", "sanchez", "berta", "korzekwa"}) {
            slack = std::min(slack, t.real(r, "lhs_exact") - t.real(r, std::string(b) + "_exact_clamped"));
        }
    }
    out << "re-bounds c=" << fmt4(t.rows.empty() ? 0.0 : t.real(0, "c")) << ": " << t.rows.size()
        << " rows, min exact slack " << fmt4(slack);
}

void report_l1_cf(const ResultTable& t, std::ostream& out) {
    double tight = 0.0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        tight = std::max(tight, std::abs(t.real(r, "l1_lhs_exact") - t.real(r, "l1_bound_exact")));
    }
    out << "l1-cf: " << t.rows.size() << " rows, max |l1 lhs - bound| (exact) " << fmt4(tight);
}

void run_experiment(const std::string& name, const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    auto emit = [&](const ExperimentOutput& result, auto&& summarise) {
        for (const auto& w : result.warnings) err << "warning: " << w << '\n';
        const auto paths = write_outputs(cfg, result);
        summarise(result);
        return paths;
    };

    if (name == "purity-sweep" || name == "all") {
        const ExperimentOutput result = run_purity_sweep(cfg);
        const auto paths = emit(result, [&](const ExperimentOutput& r) { report_purity_sweep(cfg, r, out); });
        out << " -> " << describe_paths(paths) << '\n';
    }
    if (name == "re-bounds" || name == "all") {
        const ExperimentOutput result = run_re_qur(cfg);
        for (const auto& w : result.warnings) err << "warning: " << w << '\n';
        for (const ResultTable& t : result.tables) {
            ExperimentOutput single{{t}, {}};
            const auto paths = write_outputs(cfg, single);
            report_re(t, out);
            out << " -> " << describe_paths(paths) << '\n';
        }
    }
    if (name == "l1-cf" || name == "all") {
        const ExperimentOutput result = run_l1_cf(cfg);
        const auto paths = emit(result, [&](const ExperimentOutput& r) { report_l1_cf(r.tables.front(), out); });
        out << " -> " << describe_paths(paths) << '\n';
    }
    if (cfg.dump_snapshots) {
        const auto paths = write_snapshot_dumps(cfg);
        out << "snapshots: " << paths.size() << " dumps in " << cfg.out_dir.string() << '\n';
    }
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Classical-shadow simulator for coherence-based uncertainty relations", "qurshadow"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::vector<double> tau_list;
    std::size_t ns = 0;
    std::vector<std::size_t> ns_grid;
    std::size_t repeats = 0;
    std::uint64_t seed = 0;
    std::vector<double> c_list;
    std::int64_t shots = 0;
    std::string out_dir;
    std::string format;
    bool plot = true;
    bool dump = false;
    unsigned threads = 0;

    auto* o_config = app.add_option("--config", config_path, "JSON config file; flags override its values");
    auto* o_tau = app.add_option("--tau-list", tau_list, "Comma-separated tau values in [0, 1]")->delimiter(',');
    auto* o_ns = app.add_option("--ns", ns, "Snapshots per shadow run");
    auto* o_grid = app.add_option("--ns-grid", ns_grid, "Comma-separated snapshot counts for the purity sweep")
                       ->delimiter(',');
    auto* o_repeats = app.add_option("--repeats", repeats, "Independent shadow runs per cell");
    auto* o_seed = app.add_option("--seed", seed, "Base random seed");
    auto* o_c = app.add_option("--c-list", c_list, "Comma-separated basis overlaps c in [0.5, 1]")->delimiter(',');
    auto* o_shots = app.add_option("--shots", shots, "Projective / tomography shots per basis");
    auto* o_out = app.add_option("--out", out_dir, "Output directory");
    auto* o_format = app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}));
    auto* o_plot = app.add_flag("--plot,!--no-plot", plot, "Render SVG figures (default on)");
    auto* o_dump = app.add_flag("--dump-snapshots", dump, "Write snapshot audit dumps");
    auto* o_threads = app.add_option("--threads", threads, "Worker threads (0 = all cores)");

    std::string command;
    const std::pair<const char*, const char*> commands[] = {
        {"purity-sweep", "Purity convergence of shadow and tomography estimates"},
        {"re-bounds", "Relative-entropy uncertainty relations, one table per c"},
        {"l1-cf", "l1-norm and coherence-of-formation relations with A = Z, B = X"},
        {"all", "Run every experiment"}};
    for (const auto& [name, description] : commands) {
        app.add_subcommand(name, description)
            ->fallthrough()
            ->callback([&command, name] { command = name; });
    }

    std::vector<std::string> argv_store{"qurshadow"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    ExperimentConfig cfg;
    try {
        if (o_config->count() > 0) {
            std::ifstream f(config_path);
            if (!f) {
                err << "error: cannot read config file " << config_path << '\n';
                return kIoFailure;
            }
            nlohmann::json j;
            try {
                f >> j;
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError({std::string("config: ") + e.what()});
            }
            apply_json_config(cfg, j);
        }
        if (o_tau->count() > 0) cfg.tau_list = tau_list;
        if (o_ns->count() > 0) {
            cfg.n_s = ns;
            // A single snapshot count without an explicit grid sweeps just that count.
            if (command == "purity-sweep" && o_grid->count() == 0) cfg.n_s_grid = {ns};
        }
        if (o_grid->count() > 0) cfg.n_s_grid = ns_grid;
        if (o_repeats->count() > 0) cfg.repeats = repeats;
        if (o_seed->count() > 0) cfg.seed = seed;
        if (o_c->count() > 0) cfg.c_list = c_list;
        if (o_shots->count() > 0) cfg.shots_per_basis = shots;
        if (o_out->count() > 0) cfg.out_dir = out_dir;
        if (o_format->count() > 0) cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        if (o_plot->count() > 0) cfg.plot = plot;
        if (o_dump->count() > 0) cfg.dump_snapshots = dump;
        if (o_threads->count() > 0) cfg.threads = threads;

        validate(cfg);
        run_experiment(command, cfg, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return kOk;
}

}  // namespace qurshadow
