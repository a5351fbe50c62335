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

#ifndef QURSHADOW_COHERENCE_BOUNDS_HPP
#define QURSHADOW_COHERENCE_BOUNDS_HPP

#include <string>
#include <vector>

#include "qurshadow/statekit.hpp"

namespace qurshadow {

/// State and basis-pair quantities that every uncertainty bound is written in.
struct BoundInputs {
    double purity = 1.0;   // tr[rho^2], in [1/2, 1]
    double overlap = 0.5;  // c, in [1/2, 1]
    double entropy = 0.0;  // S_VN in bits, in [0, 1]
};

/// Purity after clipping into [1/2, 1], remembering whether a clip happened.
struct ClippedPurity {
    double value = 1.0;
    bool clipped = false;
};

struct NamedBound {
    std::string name;
    double raw = 0.0;
    double clamped = 0.0;
};

/// Left-hand side of one uncertainty relation together with its bounds.
struct QurReport {
    double lhs = 0.0;
    std::vector<NamedBound> bounds;
    bool purity_clipped = false;

    const NamedBound& bound(const std::string& name) const;
    /// lhs - clamped bound, minimised over all bounds.
    double min_slack() const;
};

/// Relative entropy of coherence H(diag of rho in basis) - S_VN(rho).
double c_re(const QubitState& rho, const MeasBasis& basis);

/// H - S with finite-sample negativity clamped to 0.
double c_re_from_measurement(double h_measured, double s);

/// l1 norm of coherence: sum of off-diagonal moduli in the basis.
double c_l1(const QubitState& rho, const MeasBasis& basis);

/// Qubit coherence of formation h((1 + sqrt(1 - l1^2)) / 2).
double c_f_qubit(double l1_value);
double c_f(const QubitState& rho, const MeasBasis& basis);

double bound_re_yuan(const BoundInputs& in);
double bound_re_sanchez(const BoundInputs& in);
double bound_re_berta(const BoundInputs& in);
double bound_re_korzekwa(const BoundInputs& in);
double bound_l1(const BoundInputs& in);
double bound_cf(const BoundInputs& in);

double clamp_nonnegative(double x);

ClippedPurity clip_purity(double estimated);

/// Entropy of a qubit state with purity P: h((1 + sqrt(2P - 1)) / 2).
double entropy_from_purity(double purity);

/// Inputs built from exact state quantities.
BoundInputs exact_bound_inputs(const QubitState& rho, const MeasBasis& a, const MeasBasis& b);

/// Inputs built from an estimated purity: the purity is clipped into
/// [1/2, 1] first and the entropy follows from the clipped value.
BoundInputs estimated_bound_inputs(double estimated_purity, double overlap, bool* clipped = nullptr);

/// The four relative-entropy bounds, named yuan, sanchez, berta, korzekwa.
QurReport re_report(double lhs, const BoundInputs& in);
QurReport l1_report(double lhs, const BoundInputs& in);
QurReport cf_report(double lhs, const BoundInputs& in);

}  // namespace qurshadow

#endif  // QURSHADOW_COHERENCE_BOUNDS_HPP
