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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qurshadow/coherence_bounds.hpp"
#include "qurshadow/harness.hpp"
#include "qurshadow/shadows.hpp"
#include "qurshadow/statekit.hpp"

using namespace qurshadow;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c, d);
    return buf;
}

std::vector<double> tau_grid(int steps) {
    std::vector<double> g;
    for (int i = 0; i <= steps; ++i) g.push_back(static_cast<double>(i) / steps);
    return g;
}

double trace_distance(const QubitState& a, const QubitState& b) {
    const oracle::Mat d = oracle::add(oracle::matrix_of(a), oracle::matrix_of(b), 1.0, -1.0);
    const auto ev = oracle::eigenvalues(d);
    return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

Outcome ac1_purity_convergence() {
    ExperimentConfig cfg;
    cfg.n_s_grid = {600, 2000};
    cfg.repeats = 20;
    cfg.seed = 7;
    const ExperimentOutput out = run_purity_sweep(cfg);
    const ResultTable& sweep = out.tables.at(0);
    const ResultTable& runs = out.tables.at(1);

    double worst_mean = 0.0;
    for (std::size_t r = 0; r < sweep.rows.size(); ++r) {
        if (sweep.integer(r, "n_s") != 2000) continue;
        const double tau = sweep.real(r, "tau");
        worst_mean = std::max(worst_mean, std::abs(sweep.real(r, "p_cs_mean") - 0.5 * (1.0 + tau * tau)));
    }
    int n2000 = 0, ok2000 = 0, n600 = 0, ok600 = 0;
    for (std::size_t r = 0; r < runs.rows.size(); ++r) {
        const double tau = runs.real(r, "tau");
        const double err = std::abs(runs.real(r, "p_cs") - 0.5 * (1.0 + tau * tau));
        if (runs.integer(r, "n_s") == 2000) {
            ++n2000;
            ok2000 += err <= 0.1 ? 1 : 0;
        } else {
            ++n600;
            ok600 += err < 0.1 ? 1 : 0;
        }
    }
    const double f2000 = static_cast<double>(ok2000) / n2000;
    const double f600 = static_cast<double>(ok600) / n600;
    return {worst_mean <= 0.02 && f2000 >= 0.95 && f600 >= 0.90 && n2000 == 220 && n600 == 220,
            fmt("max |mean P_cs - P_true| = %.4f (<= 0.02); runs within 0.1: %.3f at n_s=2000 (>= 0.95), "
                "%.3f at n_s=600 (>= 0.90)",
                worst_mean, f2000, f600)};
}

Outcome ac2_estimator_identity() {
    std::mt19937_64 gen(2);
    std::uniform_int_distribution<int> size(2, 200);
    int equal = 0;
    for (int i = 0; i < 100; ++i) {
        const QubitState rho = oracle::random_state(gen);
        const ShadowRun run = ShadowRun::sample(rho, static_cast<std::size_t>(size(gen)), gen());
        equal += estimate_purity(run) == oracle::naive_purity(run.snapshots) ? 1 : 0;
    }
    return {equal == 100, fmt("%.0f / 100 random runs bit-identical to the all-pairs sum", equal)};
}

Outcome ac3_validity_sweep() {
    const MeasBasis a = MeasBasis::from_angle(0.0);
    double worst = std::numeric_limits<double>::infinity();
    int points = 0;
    for (double tau : tau_grid(20)) {
        const QubitState rho = make_rho_tau(tau);
        for (int deg = 10; deg <= 90; deg += 5) {
            const MeasBasis b = MeasBasis::from_angle(deg * std::numbers::pi / 180.0);
            const BoundInputs in = exact_bound_inputs(rho, a, b);
            worst = std::min(worst, re_report(c_re(rho, a) + c_re(rho, b), in).min_slack());
            worst = std::min(worst, l1_report(c_l1(rho, a) + c_l1(rho, b), in).min_slack());
            worst = std::min(worst, cf_report(c_f(rho, a) + c_f(rho, b), in).min_slack());
            ++points;
        }
    }
    return {worst >= -1e-9 && points == 21 * 17,
            fmt("%.0f grid points, min slack over six relations = %.3e (>= -1e-9)", points, worst)};
}

Outcome ac4_l1_tightness() {
    const MeasBasis z = MeasBasis::pauli(Pauli::Z);
    const MeasBasis x = MeasBasis::pauli(Pauli::X);
    double worst = 0.0;
    for (double tau : tau_grid(100)) {
        const QubitState rho = make_rho_tau(tau);
        const double lhs = c_l1(rho, z) + c_l1(rho, x);
        worst = std::max(worst, std::abs(lhs - bound_l1(exact_bound_inputs(rho, z, x))));
    }
    return {worst <= 1e-12, fmt("max |lhs - bound_l1| over 101 tau values = %.3e (<= 1e-12)", worst)};
}

Outcome ac5_phenomenology() {
    // (a) mutually unbiased, pure
    const BoundInputs mub{1.0, 0.5, 0.0};
    const bool a_ok = std::abs(bound_re_berta(mub) - 1.0) < 1e-12 && std::abs(bound_re_korzekwa(mub) - 1.0) < 1e-12;

    // (b) pure, c = 0.9; reference values from the matrix-free oracle entropy
    const BoundInputs pure9{1.0, 0.9, 0.0};
    const double sanchez = bound_re_sanchez(pure9);
    const double yuan = bound_re_yuan(pure9);
    const double berta = bound_re_berta(pure9);
    const double korzekwa = bound_re_korzekwa(pure9);
    const double ref_sanchez = oracle::binary_entropy(0.5 * (1.0 + std::sqrt(0.8)));
    const double ref_yuan = oracle::binary_entropy(std::sqrt(0.9));
    const double ref_berta = -std::log(0.9) / std::log(2.0);
    const bool b_ok = sanchez > yuan && yuan > berta && std::abs(berta - korzekwa) < 1e-12 &&
                      std::abs(sanchez - ref_sanchez) <= 1e-4 && std::abs(yuan - ref_yuan) <= 1e-4 &&
                      std::abs(berta - ref_berta) <= 1e-4;

    // (c) tau = 0.894, c = 0.9
    const QubitState rho = make_rho_tau(0.894);
    const BoundInputs noisy{purity(rho), 0.9, vn_entropy(rho)};
    const double s_neg = bound_re_sanchez(noisy);
    const double b_neg = bound_re_berta(noisy);
    const bool c_ok = s_neg < 0.0 && b_neg < 0.0;

    Outcome o{a_ok && b_ok && c_ok, ""};
    o.detail = fmt("(a) berta = korzekwa = %.6f; ", bound_re_berta(mub)) +
               fmt("(b) sanchez %.5f > yuan %.5f > berta = korzekwa %.5f, each within 1e-4 of direct evaluation "
                   "(printed reference 0.2983 for sanchez is off by %.1e); ",
                   sanchez, yuan, berta, std::abs(0.2983 - ref_sanchez)) +
               fmt("(c) sanchez %.4f, berta %.4f pre-clamp", s_neg, b_neg);
    return o;
}

Outcome ac6_unbiasedness() {
    const QubitState rho = make_rho_tau(0.6);
    const SnapshotMatrix m = estimate_state_mean(ShadowRun::sample(rho, 100000, derive_seed(7, {6, 1})));
    const double entry_err = oracle::max_entry_diff(oracle::matrix_of(m), oracle::matrix_of(rho));

    const PuritySummary s = repeat_purity(rho, 500, 200, derive_seed(7, {6, 2}), 0);
    const double se = s.std / std::sqrt(200.0);
    const double gap = std::abs(s.mean - purity(rho));
    return {entry_err <= 0.02 && gap <= 3.0 * se,
            fmt("state mean max entry error %.4f (<= 0.02); purity grand mean off by %.4f = %.2f standard errors "
                "(<= 3)",
                entry_err, gap, gap / se)};
}

Outcome ac7_pipeline() {
    double worst = 0.0;
    for (double tau : tau_grid(10)) {
        worst = std::max(worst, oracle::max_entry_diff(oracle::matrix_of(prepare_via_pipeline(tau)),
                                                        oracle::matrix_of(make_rho_tau(tau))));
    }
    return {worst <= 1e-12, fmt("max entry difference over the tau grid = %.3e (<= 1e-12)", worst)};
}

Outcome ac8_qst() {
    double exact_worst = 0.0;
    double worst_fraction = 1.0;
    for (double tau : tau_grid(10)) {
        const QubitState rho = make_rho_tau(tau);
        std::array<double, 3> p0{};
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            p0[static_cast<int>(p)] = born_probabilities(rho, MeasBasis::pauli(p)).p0;
        }
        exact_worst = std::max(exact_worst, oracle::max_entry_diff(oracle::matrix_of(qst_reconstruct_frequencies(p0)),
                                                                   oracle::matrix_of(rho)));
        int ok = 0;
        for (std::uint64_t trial = 0; trial < 100; ++trial) {
            Rng rng(derive_seed(7, {8, static_cast<std::uint64_t>(tau * 10 + 0.5), trial}));
            ok += trace_distance(qst_reconstruct(qst_counts(rho, 2000, rng)), rho) <= 0.05 ? 1 : 0;
        }
        worst_fraction = std::min(worst_fraction, ok / 100.0);
    }
    return {exact_worst <= 1e-12 && worst_fraction >= 0.95,
            fmt("exact-frequency error %.3e (<= 1e-12); worst per-tau fraction of 100 trials with trace distance "
                "<= 0.05: %.2f (>= 0.95)",
                exact_worst, worst_fraction)};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Outcome ac9_determinism() {
    const fs::path root = fs::temp_directory_path() / ("qurshadow_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    std::vector<std::string> csvs[2];
    std::vector<std::string> contents[2];
    for (int run = 0; run < 2; ++run) {
        const fs::path dir = root / ("run" + std::to_string(run));
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli_main({"all", "--seed", "7", "--out", dir.string()}, out, err);
        if (code != 0) {
            fs::remove_all(root);
            return {false, "invocation " + std::to_string(run + 1) + " exited with " + std::to_string(code) + ": " +
                               err.str()};
        }
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(dir)) {
            if (e.path().extension() == ".csv") files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            csvs[run].push_back(f.filename().string());
            contents[run].push_back(slurp(f));
        }
    }
    fs::remove_all(root);
    const bool same = !csvs[0].empty() && csvs[0] == csvs[1] && contents[0] == contents[1];
    return {same, fmt("%.0f CSV files per invocation, byte-identical: ", static_cast<double>(csvs[0].size())) +
                      (same ? "yes" : "no")};
}

struct Criterion {
    const char* id;
    const char* title;
    double limit_s;
    std::function<Outcome()> check;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"AC1", "purity convergence", 10.0, ac1_purity_convergence},
        {"AC2", "estimator identity", 1.0, ac2_estimator_identity},
        {"AC3", "QUR validity sweep", 1.0, ac3_validity_sweep},
        {"AC4", "l1 tightness", 1.0, ac4_l1_tightness},
        {"AC5", "bound phenomenology", 1.0, ac5_phenomenology},
        {"AC6", "snapshot unbiasedness", 30.0, ac6_unbiasedness},
        {"AC7", "pipeline equivalence", 1.0, ac7_pipeline},
        {"AC8", "QST baseline", 5.0, ac8_qst},
        {"AC9", "determinism", 30.0, ac9_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = seconds < c.limit_s;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("[%s] %s %s: %s; runtime %.3f s (< %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title,
                    o.detail.c_str(), seconds, c.limit_s, in_time ? "" : ", exceeded");
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
