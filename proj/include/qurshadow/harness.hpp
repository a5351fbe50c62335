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

#ifndef QURSHADOW_HARNESS_HPP
#define QURSHADOW_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qurshadow/statekit.hpp"

namespace qurshadow {

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::vector<double> tau_list = default_tau_list();
    std::size_t n_s = 2000;
    std::vector<std::size_t> n_s_grid{100, 200, 400, 600, 1000, 2000};
    std::size_t repeats = 20;
    std::uint64_t seed = 7;
    std::vector<double> c_list{0.5, 0.7, 0.9};
    std::int64_t shots_per_basis = 2000;
    std::filesystem::path out_dir = "out";
    OutputFormat format = OutputFormat::Csv;
    bool plot = true;
    bool dump_snapshots = false;
    /// Worker threads for independent cells; 0 = hardware concurrency.
    unsigned threads = 0;

    /// 0.0, 0.1, ..., 1.0.
    static std::vector<double> default_tau_list();
};

/// Thrown for invalid configuration values; what() names every offending field.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// Thrown when an output file cannot be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One message per invalid field, empty when the config is valid.
std::vector<std::string> validation_errors(const ExperimentConfig& cfg);
void validate(const ExperimentConfig& cfg);

/// Overlays the keys present in `j` onto `cfg`. Keys mirror the CLI flags:
/// tau_list, ns, ns_grid, repeats, seed, c_list, shots, out, format, plot,
/// dump_snapshots, threads. Unknown keys are a ConfigError.
void apply_json_config(ExperimentConfig& cfg, const nlohmann::json& j);

enum class ColumnKind { Text, Integer, Real };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Real;
};

using Cell = std::variant<std::string, std::int64_t, double>;

/// Rectangular result table with a fixed column order per experiment type.
struct ResultTable {
    std::string experiment;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t column_index(const std::string& name) const;
    double real(std::size_t row, const std::string& name) const;
    std::int64_t integer(std::size_t row, const std::string& name) const;
    void add_row(std::vector<Cell> row);
};

/// Measurement pair A = J(0), B = J(theta) realising a requested overlap.
struct BasisPair {
    double c_requested = 0.5;
    double theta_deg = 90.0;
    double c_actual = 0.5;
    MeasBasis a = MeasBasis::from_angle(0.0);
    MeasBasis b = MeasBasis::from_angle(0.0);
};

/// Uses the fixed angles 90, 66.42 and 36.86 degrees for c = 0.5, 0.7, 0.9 and
/// 2 acos(sqrt(c)) otherwise.
BasisPair basis_pair_for_overlap(double c);

/// Set when cos^2(theta/2) differs from the requested c by more than 1e-3.
std::optional<std::string> basis_pair_warning(const BasisPair& pair);

struct ExperimentOutput {
    std::vector<ResultTable> tables;
    std::vector<std::string> warnings;
};

/// Purity convergence: tables "purity-sweep" (one row per (tau, n_s)) and
/// "purity-runs" (one row per repeat).
ExperimentOutput run_purity_sweep(const ExperimentConfig& cfg);

/// Relative-entropy uncertainty relations, one "re-bounds" table per c.
ExperimentOutput run_re_qur(const ExperimentConfig& cfg);

/// l1-norm and coherence-of-formation relations with A = Z, B = X.
ExperimentOutput run_l1_cf(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const ResultTable& table);
void emit_csv(const ResultTable& table, const std::filesystem::path& path);
nlohmann::ordered_json table_to_json(const ResultTable& table);
void emit_json(const ResultTable& table, const std::filesystem::path& path);

struct PlotSpec {
    std::string title;
    std::string x_column;
    std::string x_label;
    std::string y_label;
    std::vector<std::string> series;
    /// Only rows whose `filter_column` equals `filter_value` are drawn when set.
    std::optional<std::string> filter_column;
    double filter_value = 0.0;
};

/// Figure layout for a table; nullopt for tables that have no figure.
std::optional<PlotSpec> plot_spec_for(const ResultTable& table);
std::string render_svg(const ResultTable& table, const PlotSpec& spec);
/// Throws std::invalid_argument for an empty table or one without a figure,
/// and writes nothing in that case.
void emit_plot(const ResultTable& table, const std::filesystem::path& path);

/// File stem encoding experiment, c (re-bounds only) and seed.
std::string output_stem(const ResultTable& table, std::uint64_t seed);

/// Writes every table of `output` (plus plots when enabled) under
/// cfg.out_dir and returns the written paths.
std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& cfg, const ExperimentOutput& output);

/// Writes one snapshot audit dump per tau (first repeat of the shadow stream
/// used by the uncertainty-relation experiments).
std::vector<std::filesystem::path> write_snapshot_dumps(const ExperimentConfig& cfg);

/// Seed of the shadow stream shared by the re-bounds and l1-cf experiments
/// for tau index `tau_index`.
std::uint64_t shadow_stream_seed(std::uint64_t seed, std::size_t tau_index);

/// Entry point of the command-line tool. args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qurshadow

#endif  // QURSHADOW_HARNESS_HPP
