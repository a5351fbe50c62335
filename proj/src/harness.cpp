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

#include "qurshadow/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qurshadow/coherence_bounds.hpp"
#include "qurshadow/parallel.hpp"
#include "qurshadow/shadows.hpp"

namespace qurshadow {

namespace {

// Stream tags for derive_seed; every random quantity hangs off one of these.
enum StreamTag : std::uint64_t {
    kPuritySweepStream = 1,
    kQstStream = 2,
    kShadowStream = 3,
    kProjectiveStream = 4,
};

constexpr double kDeg = std::numbers::pi / 180.0;

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != 0) s += sep;
        s += parts[i];
    }
    return s;
}

Column real(std::string name) { return {std::move(name), ColumnKind::Real}; }
Column integer(std::string name) { return {std::move(name), ColumnKind::Integer}; }
Column text(std::string name) { return {std::move(name), ColumnKind::Text}; }

Cell flag(bool b) { return std::int64_t{b ? 1 : 0}; }

/// Shadow purity shared by the uncertainty-relation experiments.
std::vector<PuritySummary> shadow_purities(const ExperimentConfig& cfg) {
    std::vector<PuritySummary> out(cfg.tau_list.size());
    parallel_for(out.size(), cfg.threads, [&](std::size_t i) {
        out[i] = repeat_purity(make_rho_tau(cfg.tau_list[i]), cfg.n_s, cfg.repeats,
                               shadow_stream_seed(cfg.seed, i));
    });
    return out;
}

CountsTable qst_for_tau(const ExperimentConfig& cfg, std::size_t tau_index) {
    Rng rng(derive_seed(cfg.seed, {kQstStream, tau_index}));
    return qst_counts(make_rho_tau(cfg.tau_list[tau_index]), cfg.shots_per_basis, rng);
}

}  // namespace

std::vector<double> ExperimentConfig::default_tau_list() {
    std::vector<double> taus;
    for (int i = 0; i <= 10; ++i) taus.push_back(i / 10.0);
    return taus;
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::invalid_argument("invalid configuration: " + join(problems, "; ")), problems_(std::move(problems)) {}

std::vector<std::string> validation_errors(const ExperimentConfig& cfg) {
    std::vector<std::string> errs;
    if (cfg.tau_list.empty()) errs.emplace_back("tau_list: must not be empty");
    for (double t : cfg.tau_list) {
        if (!(t >= 0.0 && t <= 1.0)) {
            std::ostringstream msg;
            msg << "tau_list: value " << t << " outside [0, 1]";
            errs.push_back(msg.str());
        }
    }
    if (cfg.n_s < 2) errs.emplace_back("ns: must be at least 2");
    if (cfg.n_s_grid.empty()) errs.emplace_back("ns_grid: must not be empty");
    for (std::size_t n : cfg.n_s_grid) {
        if (n < 2) errs.emplace_back("ns_grid: every entry must be at least 2, got " + std::to_string(n));
    }
    if (cfg.repeats < 1) errs.emplace_back("repeats: must be positive");
    if (cfg.c_list.empty()) errs.emplace_back("c_list: must not be empty");
    for (double c : cfg.c_list) {
        if (!(c >= 0.5 && c <= 1.0)) {
            std::ostringstream msg;
            msg << "c_list: value " << c << " outside [0.5, 1]";
            errs.push_back(msg.str());
        }
    }
    if (cfg.shots_per_basis < 1) errs.emplace_back("shots: must be positive");
    if (cfg.out_dir.empty()) errs.emplace_back("out: must not be empty");
    return errs;
}

void validate(const ExperimentConfig& cfg) {
    auto errs = validation_errors(cfg);
    if (!errs.empty()) throw ConfigError(std::move(errs));
}

namespace {

// Non-negative integer; get<> alone would wrap a negative value.
template <typename T>
T json_count(const nlohmann::json& value) {
    if (!value.is_number_unsigned()) throw nlohmann::json::type_error::create(302, "expected a non-negative integer", &value);
    return value.get<T>();
}

std::vector<std::size_t> json_count_list(const nlohmann::json& value) {
    if (!value.is_array()) throw nlohmann::json::type_error::create(302, "expected an array", &value);
    std::vector<std::size_t> out;
    for (const auto& v : value) out.push_back(json_count<std::size_t>(v));
    return out;
}

}  // namespace

void apply_json_config(ExperimentConfig& cfg, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError({"config: top level must be a JSON object"});
    std::vector<std::string> errs;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "tau_list") {
                cfg.tau_list = value.get<std::vector<double>>();
            } else if (key == "ns") {
                cfg.n_s = json_count<std::size_t>(value);
            } else if (key == "ns_grid") {
                cfg.n_s_grid = json_count_list(value);
            } else if (key == "repeats") {
                cfg.repeats = json_count<std::size_t>(value);
            } else if (key == "seed") {
                cfg.seed = json_count<std::uint64_t>(value);
            } else if (key == "c_list") {
                cfg.c_list = value.get<std::vector<double>>();
            } else if (key == "shots") {
                cfg.shots_per_basis = value.get<std::int64_t>();
            } else if (key == "out") {
                cfg.out_dir = value.get<std::string>();
            } else if (key == "format") {
                const auto f = value.get<std::string>();
                if (f == "csv") {
                    cfg.format = OutputFormat::Csv;
                } else if (f == "json") {
                    cfg.format = OutputFormat::Json;
                } else {
                    errs.push_back("format: expected csv or json, got " + f);
                }
            } else if (key == "plot") {
                cfg.plot = value.get<bool>();
            } else if (key == "dump_snapshots") {
                cfg.dump_snapshots = value.get<bool>();
            } else if (key == "threads") {
                cfg.threads = json_count<unsigned>(value);
            } else {
                errs.push_back(key + ": unknown configuration key");
            }
        } catch (const nlohmann::json::exception&) {
            errs.push_back(key + ": wrong value type");
        }
    }
    if (!errs.empty()) throw ConfigError(std::move(errs));
}

std::size_t ResultTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    throw std::out_of_range(experiment + ": no column named " + name);
}

double ResultTable::real(std::size_t row, const std::string& name) const {
    const Cell& c = rows.at(row).at(column_index(name));
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    throw std::invalid_argument(experiment + ": column " + name + " is not numeric");
}

std::int64_t ResultTable::integer(std::size_t row, const std::string& name) const {
    return std::get<std::int64_t>(rows.at(row).at(column_index(name)));
}

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error(experiment + ": row has " + std::to_string(row.size()) + " cells, expected " +
                               std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

BasisPair basis_pair_for_overlap(double c) {
    if (!(c >= 0.5 && c <= 1.0)) throw std::domain_error("overlap c must lie in [0.5, 1]");
    BasisPair pair;
    pair.c_requested = c;
    if (std::abs(c - 0.5) < 1e-9) {
        pair.theta_deg = 90.0;
    } else if (std::abs(c - 0.7) < 1e-9) {
        pair.theta_deg = 66.42;
    } else if (std::abs(c - 0.9) < 1e-9) {
        pair.theta_deg = 36.86;
    } else {
        pair.theta_deg = 2.0 * std::acos(std::sqrt(c)) / kDeg;
    }
    pair.a = MeasBasis::from_angle(0.0);
    pair.b = MeasBasis::from_angle(pair.theta_deg * kDeg);
    pair.c_actual = overlap_c(pair.a, pair.b);
    return pair;
}

std::optional<std::string> basis_pair_warning(const BasisPair& pair) {
    const double half = 0.5 * pair.theta_deg * kDeg;
    const double implied = std::cos(half) * std::cos(half);
    if (std::abs(implied - pair.c_requested) <= 1e-3) return std::nullopt;
    std::ostringstream msg;
    msg << "theta = " << pair.theta_deg << " deg gives c = " << implied << ", requested " << pair.c_requested;
    return msg.str();
}

std::uint64_t shadow_stream_seed(std::uint64_t seed, std::size_t tau_index) {
    return derive_seed(seed, {kShadowStream, tau_index});
}

ExperimentOutput run_purity_sweep(const ExperimentConfig& cfg) {
    validate(cfg);
    const std::size_t n_tau = cfg.tau_list.size();
    const std::size_t n_grid = cfg.n_s_grid.size();

    std::vector<double> p_qst(n_tau);
    for (std::size_t i = 0; i < n_tau; ++i) p_qst[i] = purity_from_qst(qst_for_tau(cfg, i));

    std::vector<PuritySummary> cells(n_tau * n_grid);
    parallel_for(cells.size(), cfg.threads, [&](std::size_t k) {
        const std::size_t i = k / n_grid;
        const std::size_t j = k % n_grid;
        cells[k] = repeat_purity(make_rho_tau(cfg.tau_list[i]), cfg.n_s_grid[j], cfg.repeats,
                                 derive_seed(cfg.seed, {kPuritySweepStream, i, j}));
    });

    ResultTable summary{"purity-sweep",
                        {text("experiment"), real("tau"), integer("n_s"), integer("repeats"), real("p_true"),
                         real("p_cs_mean"), real("p_cs_std"), real("p_qst"), real("abs_qst_minus_cs"),
                         real("abs_cs_minus_true"), real("frac_runs_within_0.1")},
                        {}};
    ResultTable runs{"purity-runs",
                     {text("experiment"), real("tau"), integer("n_s"), integer("repeat"), real("p_true"),
                      real("p_cs"), real("abs_cs_minus_true")},
                     {}};

    // Rows sorted by (tau, n_s) regardless of the order given in the config.
    std::vector<std::size_t> tau_order(n_tau);
    std::vector<std::size_t> grid_order(n_grid);
    for (std::size_t i = 0; i < n_tau; ++i) tau_order[i] = i;
    for (std::size_t j = 0; j < n_grid; ++j) grid_order[j] = j;
    std::stable_sort(tau_order.begin(), tau_order.end(),
                     [&](std::size_t a, std::size_t b) { return cfg.tau_list[a] < cfg.tau_list[b]; });
    std::stable_sort(grid_order.begin(), grid_order.end(),
                     [&](std::size_t a, std::size_t b) { return cfg.n_s_grid[a] < cfg.n_s_grid[b]; });

    for (std::size_t i : tau_order) {
        const double tau = cfg.tau_list[i];
        const double p_true = purity(make_rho_tau(tau));
        for (std::size_t j : grid_order) {
            const PuritySummary& s = cells[i * n_grid + j];
            const auto n_s = static_cast<std::int64_t>(cfg.n_s_grid[j]);
            std::size_t within = 0;
            for (std::size_t r = 0; r < s.values.size(); ++r) {
                const double err = std::abs(s.values[r] - p_true);
                if (err < 0.1) ++within;
                runs.add_row({runs.experiment, tau, n_s, static_cast<std::int64_t>(r), p_true, s.values[r], err});
            }
            summary.add_row({summary.experiment, tau, n_s, static_cast<std::int64_t>(cfg.repeats), p_true, s.mean,
                             s.std, p_qst[i], std::abs(p_qst[i] - s.mean), std::abs(s.mean - p_true),
                             static_cast<double>(within) / static_cast<double>(s.values.size())});
        }
    }
    return {{std::move(summary), std::move(runs)}, {}};
}

ExperimentOutput run_re_qur(const ExperimentConfig& cfg) {
    validate(cfg);
    const std::vector<PuritySummary> shadows = shadow_purities(cfg);
    ExperimentOutput out;

    const std::vector<std::string> names{"yuan", "sanchez", "berta", "korzekwa"};
    std::vector<Column> columns{text("experiment"), real("tau"),     real("c"),    real("theta_deg"),
                                real("c_actual"),   real("p_true"),  real("p_cs"), real("p_cs_std"),
                                integer("purity_clipped"), real("s_cs"), real("h_a"), real("h_b"),
                                real("c_re_a"),     real("c_re_b"),  real("lhs")};
    for (const auto& n : names) columns.push_back(real(n));
    for (const auto& n : names) columns.push_back(real(n + "_clamped"));
    for (const char* n : {"s_exact", "c_re_a_exact", "c_re_b_exact", "lhs_exact"}) columns.push_back(real(n));
    for (const auto& n : names) columns.push_back(real(n + "_exact"));
    for (const auto& n : names) columns.push_back(real(n + "_exact_clamped"));

    for (std::size_t ci = 0; ci < cfg.c_list.size(); ++ci) {
        const BasisPair pair = basis_pair_for_overlap(cfg.c_list[ci]);
        if (auto w = basis_pair_warning(pair)) out.warnings.push_back(*w);

        ResultTable table{"re-bounds", columns, {}};
        for (std::size_t i = 0; i < cfg.tau_list.size(); ++i) {
            const double tau = cfg.tau_list[i];
            const QubitState rho = make_rho_tau(tau);

            Rng rng(derive_seed(cfg.seed, {kProjectiveStream, i, ci}));
            const auto counts_a = measure_counts(rho, pair.a, cfg.shots_per_basis, rng);
            const auto counts_b = measure_counts(rho, pair.b, cfg.shots_per_basis, rng);
            const double h_a = empirical_entropy(counts_a[0], counts_a[1]);
            const double h_b = empirical_entropy(counts_b[0], counts_b[1]);

            bool clipped = false;
            const BoundInputs measured = estimated_bound_inputs(shadows[i].mean, pair.c_actual, &clipped);
            const double c_re_a = c_re_from_measurement(h_a, measured.entropy);
            const double c_re_b = c_re_from_measurement(h_b, measured.entropy);
            QurReport report = re_report(c_re_a + c_re_b, measured);
            report.purity_clipped = clipped;

            const BoundInputs exact = exact_bound_inputs(rho, pair.a, pair.b);
            const double c_re_a_exact = c_re(rho, pair.a);
            const double c_re_b_exact = c_re(rho, pair.b);
            const QurReport exact_report = re_report(c_re_a_exact + c_re_b_exact, exact);

            std::vector<Cell> row{table.experiment, tau,          pair.c_requested,  pair.theta_deg,
                                  pair.c_actual,    purity(rho),  shadows[i].mean,   shadows[i].std,
                                  flag(clipped),    measured.entropy, h_a,           h_b,
                                  c_re_a,           c_re_b,       report.lhs};
            for (const auto& b : report.bounds) row.emplace_back(b.raw);
            for (const auto& b : report.bounds) row.emplace_back(b.clamped);
            row.insert(row.end(), {exact.entropy, c_re_a_exact, c_re_b_exact, exact_report.lhs});
            for (const auto& b : exact_report.bounds) row.emplace_back(b.raw);
            for (const auto& b : exact_report.bounds) row.emplace_back(b.clamped);
            table.add_row(std::move(row));
        }
        out.tables.push_back(std::move(table));
    }
    return out;
}

ExperimentOutput run_l1_cf(const ExperimentConfig& cfg) {
    validate(cfg);
    const std::vector<PuritySummary> shadows = shadow_purities(cfg);
    const MeasBasis z = MeasBasis::pauli(Pauli::Z);
    const MeasBasis x = MeasBasis::pauli(Pauli::X);
    const double c = overlap_c(z, x);

    ResultTable table{"l1-cf",
                      {text("experiment"),  real("tau"),         real("p_true"),      real("p_cs"),
                       real("p_cs_std"),    integer("purity_clipped"), real("p_qst"), real("l1_z"),
                       real("l1_x"),        real("l1_lhs"),      real("l1_bound"),    real("cf_z"),
                       real("cf_x"),        real("cf_lhs"),      real("cf_bound"),    real("l1_z_exact"),
                       real("l1_x_exact"),  real("l1_lhs_exact"), real("l1_bound_exact"), real("cf_z_exact"),
                       real("cf_x_exact"),  real("cf_lhs_exact"), real("cf_bound_exact")},
                      {}};

    for (std::size_t i = 0; i < cfg.tau_list.size(); ++i) {
        const double tau = cfg.tau_list[i];
        const QubitState rho = make_rho_tau(tau);
        const QubitState rho_qst = qst_reconstruct(qst_for_tau(cfg, i));

        bool clipped = false;
        const BoundInputs measured = estimated_bound_inputs(shadows[i].mean, c, &clipped);
        const double l1_z = c_l1(rho_qst, z);
        const double l1_x = c_l1(rho_qst, x);
        const double cf_z = c_f(rho_qst, z);
        const double cf_x = c_f(rho_qst, x);

        const BoundInputs exact = exact_bound_inputs(rho, z, x);
        const double l1_z_exact = c_l1(rho, z);
        const double l1_x_exact = c_l1(rho, x);
        const double cf_z_exact = c_f(rho, z);
        const double cf_x_exact = c_f(rho, x);

        table.add_row({table.experiment, tau, purity(rho), shadows[i].mean, shadows[i].std, flag(clipped),
                       purity(rho_qst), l1_z, l1_x, l1_z + l1_x, bound_l1(measured), cf_z, cf_x, cf_z + cf_x,
                       bound_cf(measured), l1_z_exact, l1_x_exact, l1_z_exact + l1_x_exact, bound_l1(exact),
                       cf_z_exact, cf_x_exact, cf_z_exact + cf_x_exact, bound_cf(exact)});
    }
    return {{std::move(table)}, {}};
}

std::vector<std::filesystem::path> write_snapshot_dumps(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<std::filesystem::path> paths;
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    for (std::size_t i = 0; i < cfg.tau_list.size(); ++i) {
        const ShadowRun run = ShadowRun::sample(make_rho_tau(cfg.tau_list[i]), cfg.n_s,
                                                repeat_seed(shadow_stream_seed(cfg.seed, i), 0));
        char name[64];
        std::snprintf(name, sizeof name, "snapshots_tau%.3f_seed%llu.txt", cfg.tau_list[i],
                      static_cast<unsigned long long>(cfg.seed));
        const auto path = cfg.out_dir / name;
        std::ofstream f(path);
        if (!f) throw IoError("cannot open " + path.string() + " for writing");
        write_snapshots(f, run);
        if (!f) throw IoError("failed writing " + path.string());
        paths.push_back(path);
    }
    return paths;
}

}  // namespace qurshadow
