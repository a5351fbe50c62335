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

#include "qurshadow/coherence_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qurshadow {

namespace {

constexpr double kTol = kStateTolerance;

void check_range(double v, double lo, double hi, const char* what) {
    if (!(v >= lo - kTol && v <= hi + kTol)) {
        throw std::domain_error(std::string(what) + " out of range: " + std::to_string(v));
    }
}

void check_purity(double p) { check_range(p, 0.5, 1.0, "purity"); }

// Overlap in (0, 1].
void check_overlap(double c) {
    if (!(c > 0.0 && c <= 1.0 + kTol)) {
        throw std::domain_error("overlap c must lie in (0, 1], got " + std::to_string(c));
    }
}

void check_entropy(double s) { check_range(s, 0.0, 1.0, "entropy"); }

// sqrt(2P - 1) with rounding below 1/2 absorbed.
double purity_radius(double p) { return std::sqrt(std::max(0.0, 2.0 * p - 1.0)); }

NamedBound named(const char* name, double raw) { return {name, raw, clamp_nonnegative(raw)}; }

}  // namespace

const NamedBound& QurReport::bound(const std::string& name) const {
    for (const NamedBound& b : bounds) {
        if (b.name == name) return b;
    }
    throw std::out_of_range("no bound named " + name);
}

double QurReport::min_slack() const {
    double slack = std::numeric_limits<double>::infinity();
    for (const NamedBound& b : bounds) slack = std::min(slack, lhs - b.clamped);
    return slack;
}

double c_re(const QubitState& rho, const MeasBasis& basis) {
    const double h = binary_entropy(born_probabilities(rho, basis).p0);
    return std::max(0.0, h - vn_entropy(rho));
}

double c_re_from_measurement(double h_measured, double s) {
    check_entropy(h_measured);
    check_entropy(s);
    return clamp_nonnegative(h_measured - s);
}

double c_l1(const QubitState& rho, const MeasBasis& basis) {
    return 2.0 * std::abs(rho.sandwich(basis.ket(0), basis.ket(1)));
}

double c_f_qubit(double l1_value) {
    check_range(l1_value, 0.0, 1.0, "l1 coherence");
    const double l1 = std::clamp(l1_value, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - l1 * l1)));
}

double c_f(const QubitState& rho, const MeasBasis& basis) { return c_f_qubit(std::min(1.0, c_l1(rho, basis))); }

double bound_re_yuan(const BoundInputs& in) {
    check_purity(in.purity);
    check_overlap(in.overlap);
    check_entropy(in.entropy);
    const double arg = 0.5 * (purity_radius(in.purity) * (2.0 * std::sqrt(in.overlap) - 1.0) + 1.0);
    return binary_entropy(std::clamp(arg, 0.0, 1.0)) - in.entropy;
}

double bound_re_sanchez(const BoundInputs& in) {
    if (!(in.overlap >= 0.5 - kTol && in.overlap <= 1.0 + kTol)) {
        throw std::domain_error("overlap c must lie in [1/2, 1], got " + std::to_string(in.overlap));
    }
    check_entropy(in.entropy);
    const double arg = 0.5 * (1.0 + std::sqrt(std::max(0.0, 2.0 * in.overlap - 1.0)));
    return binary_entropy(std::min(arg, 1.0)) - 2.0 * in.entropy;
}

double bound_re_berta(const BoundInputs& in) {
    check_overlap(in.overlap);
    check_entropy(in.entropy);
    return -std::log2(in.overlap) - in.entropy;
}

double bound_re_korzekwa(const BoundInputs& in) {
    check_overlap(in.overlap);
    check_entropy(in.entropy);
    return -(1.0 - in.entropy) * std::log2(in.overlap);
}

double bound_l1(const BoundInputs& in) {
    check_purity(in.purity);
    check_overlap(in.overlap);
    const double c = std::min(in.overlap, 1.0);
    return 2.0 * std::sqrt(std::max(0.0, (2.0 * in.purity - 1.0) * c * (1.0 - c)));
}

double bound_cf(const BoundInputs& in) {
    check_purity(in.purity);
    check_overlap(in.overlap);
    const double root_c = std::sqrt(std::min(in.overlap, 1.0));
    const double inner = 1.0 - 4.0 * std::max(0.0, 2.0 * in.purity - 1.0) * root_c * (1.0 - root_c);
    if (inner < -kTol) {
        throw std::domain_error("coherence-of-formation bound: negative radicand " + std::to_string(inner));
    }
    return binary_entropy(std::min(1.0, 0.5 * (1.0 + std::sqrt(std::max(0.0, inner)))));
}

double clamp_nonnegative(double x) { return std::max(x, 0.0); }

ClippedPurity clip_purity(double estimated) {
    if (std::isnan(estimated)) throw std::domain_error("estimated purity is NaN");
    const double v = std::clamp(estimated, 0.5, 1.0);
    return {v, v != estimated};
}

double entropy_from_purity(double p) {
    check_purity(p);
    return binary_entropy(std::min(1.0, 0.5 * (1.0 + purity_radius(p))));
}

BoundInputs exact_bound_inputs(const QubitState& rho, const MeasBasis& a, const MeasBasis& b) {
    return {purity(rho), overlap_c(a, b), vn_entropy(rho)};
}

BoundInputs estimated_bound_inputs(double estimated_purity, double overlap, bool* clipped) {
    const ClippedPurity p = clip_purity(estimated_purity);
    if (clipped != nullptr) *clipped = p.clipped;
    return {p.value, overlap, entropy_from_purity(p.value)};
}

QurReport re_report(double lhs, const BoundInputs& in) {
    QurReport r;
    r.lhs = lhs;
    r.bounds = {named("yuan", bound_re_yuan(in)), named("sanchez", bound_re_sanchez(in)),
                named("berta", bound_re_berta(in)), named("korzekwa", bound_re_korzekwa(in))};
    return r;
}

QurReport l1_report(double lhs, const BoundInputs& in) {
    QurReport r;
    r.lhs = lhs;
    r.bounds = {named("l1", bound_l1(in))};
    return r;
}

QurReport cf_report(double lhs, const BoundInputs& in) {
    QurReport r;
    r.lhs = lhs;
    r.bounds = {named("cf", bound_cf(in))};
    return r;
}

}  // namespace qurshadow
