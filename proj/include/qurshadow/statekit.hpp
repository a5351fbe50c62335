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

#ifndef QURSHADOW_STATEKIT_HPP
#define QURSHADOW_STATEKIT_HPP

#include <array>
#include <complex>
#include <span>
#include <string_view>

namespace qurshadow {

using complex_t = std::complex<double>;

/// Two-component complex column vector in the computational basis.
using Ket = std::array<complex_t, 2>;

/// Absolute tolerance guarding rounding in state invariants.
inline constexpr double kStateTolerance = 1e-12;

enum class Pauli { X = 0, Y = 1, Z = 2 };

char pauli_letter(Pauli p);
Pauli pauli_from_letter(char c);

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double length() const;
};

/// Single-qubit density matrix stored through its independent entries
/// (m00, m11 real, m01 complex; m10 = conj(m01)).
///
/// Every constructed value is Hermitian, has unit trace and is positive
/// semidefinite up to kStateTolerance. Construction of anything else throws
/// std::domain_error.
class QubitState {
public:
    /// Maximally mixed state I/2.
    QubitState() = default;

    static QubitState from_entries(double m00, double m11, complex_t m01);
    static QubitState from_bloch(const BlochVector& r);
    static QubitState pure(const Ket& psi);

    double m00() const { return m00_; }
    double m11() const { return m11_; }
    complex_t m01() const { return m01_; }
    complex_t m10() const { return std::conj(m01_); }

    BlochVector bloch() const;

    /// <a|rho|b>.
    complex_t sandwich(const Ket& a, const Ket& b) const;

    friend bool operator==(const QubitState&, const QubitState&) = default;

private:
    QubitState(double m00, double m11, complex_t m01) : m00_(m00), m11_(m11), m01_(m01) {}

    double m00_ = 0.5;
    double m11_ = 0.5;
    complex_t m01_{0.0, 0.0};
};

/// Orthonormal qubit measurement basis. The first ket carries outcome 0 and
/// is the +1 eigenstate of the defining observable.
class MeasBasis {
public:
    /// Eigenbasis of cos(theta) Z + sin(theta) X.
    static MeasBasis from_angle(double theta_rad);
    static MeasBasis pauli(Pauli p);

    const Ket& ket(int outcome) const { return kets_[outcome == 0 ? 0 : 1]; }
    const std::array<Ket, 2>& kets() const { return kets_; }

private:
    explicit MeasBasis(const std::array<Ket, 2>& kets) : kets_(kets) {}

    std::array<Ket, 2> kets_;
};

/// rho = lambda |psi><psi| + (1 - lambda) |psi_perp><psi_perp| with lambda >= 1/2.
struct SpectralDecomp {
    double lambda = 0.5;
    Ket psi{};
    Ket psi_perp{};
};

struct BornProbabilities {
    double p0 = 0.0;
    double p1 = 0.0;
};

struct WeightedState {
    double weight = 0.0;
    QubitState state;
};

complex_t inner(const Ket& a, const Ket& b);

/// tau |+><+| + (1 - tau) I/2; throws std::domain_error unless 0 <= tau <= 1.
QubitState make_rho_tau(double tau);

double purity(const QubitState& rho);

/// -x log2 x - (1-x) log2 (1-x), with 0 log 0 = 0.
double binary_entropy(double x);

/// Von Neumann entropy in bits.
double vn_entropy(const QubitState& rho);

/// Maximal squared overlap max_ij |<a_i|b_j>|^2.
double overlap_c(const MeasBasis& a, const MeasBasis& b);

BornProbabilities born_probabilities(const QubitState& rho, const MeasBasis& basis);

/// Completely dephasing channel in the given basis.
QubitState dephase(const QubitState& rho, const MeasBasis& basis);

/// Incoherent mixture sum_k w_k rho_k. Weights must be non-negative and sum to 1.
QubitState mix(std::span<const WeightedState> branches);

/// Reproduces the preparation chain: |+><+| is routed through an identity
/// branch with weight tau and a Z-dephasing branch with weight 1 - tau, then
/// the two branches are recombined incoherently.
QubitState prepare_via_pipeline(double tau);

/// Closed-form eigen-decomposition from the Bloch vector. I/2 returns the Z
/// basis with lambda = 1/2.
SpectralDecomp spectral_decompose(const QubitState& rho);

}  // namespace qurshadow

#endif  // QURSHADOW_STATEKIT_HPP
