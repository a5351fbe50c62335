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

#include "qurshadow/statekit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qurshadow {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Below this Bloch length the eigenbasis is taken to be Z.
constexpr double kDegenerateBloch = 1e-14;

void require_unit_interval(double value, const char* what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::domain_error(std::string(what) + " must lie in [0, 1], got " +
                                std::to_string(value));
    }
}

}  // namespace

char pauli_letter(Pauli p) {
    switch (p) {
        case Pauli::X:
            return 'X';
        case Pauli::Y:
            return 'Y';
        case Pauli::Z:
            return 'Z';
    }
    throw std::invalid_argument("unknown Pauli label");
}

Pauli pauli_from_letter(char c) {
    switch (c) {
        case 'X':
            return Pauli::X;
        case 'Y':
            return Pauli::Y;
        case 'Z':
            return Pauli::Z;
        default:
            throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
    }
}

double BlochVector::length() const { return std::sqrt(x * x + y * y + z * z); }

QubitState QubitState::from_entries(double m00, double m11, complex_t m01) {
    if (!std::isfinite(m00) || !std::isfinite(m11) || !std::isfinite(m01.real()) ||
        !std::isfinite(m01.imag())) {
        throw std::domain_error("density matrix entries must be finite");
    }
    if (std::abs(m00 + m11 - 1.0) > kStateTolerance) {
        throw std::domain_error("density matrix trace must be 1, got " + std::to_string(m00 + m11));
    }
    if (m00 < -kStateTolerance || m11 < -kStateTolerance) {
        throw std::domain_error("density matrix diagonal must be non-negative");
    }
    if (m00 * m11 - std::norm(m01) < -kStateTolerance) {
        throw std::domain_error("density matrix is not positive semidefinite");
    }
    return QubitState(m00, m11, m01);
}

QubitState QubitState::from_bloch(const BlochVector& r) {
    if (!(r.length() <= 1.0 + kStateTolerance)) {
        throw std::domain_error("Bloch vector longer than 1: " + std::to_string(r.length()));
    }
    return QubitState(0.5 * (1.0 + r.z), 0.5 * (1.0 - r.z), complex_t(0.5 * r.x, -0.5 * r.y));
}

QubitState QubitState::pure(const Ket& psi) {
    const double n = std::norm(psi[0]) + std::norm(psi[1]);
    if (std::abs(n - 1.0) > kStateTolerance) {
        throw std::domain_error("ket is not normalised");
    }
    return from_entries(std::norm(psi[0]), std::norm(psi[1]), psi[0] * std::conj(psi[1]));
}

BlochVector QubitState::bloch() const {
    return {2.0 * m01_.real(), -2.0 * m01_.imag(), m00_ - m11_};
}

complex_t QubitState::sandwich(const Ket& a, const Ket& b) const {
    const complex_t rb0 = m00_ * b[0] + m01_ * b[1];
    const complex_t rb1 = std::conj(m01_) * b[0] + m11_ * b[1];
    return std::conj(a[0]) * rb0 + std::conj(a[1]) * rb1;
}

MeasBasis MeasBasis::from_angle(double theta_rad) {
    const double c = std::cos(0.5 * theta_rad);
    const double s = std::sin(0.5 * theta_rad);
    return MeasBasis({Ket{complex_t(c), complex_t(s)}, Ket{complex_t(-s), complex_t(c)}});
}

MeasBasis MeasBasis::pauli(Pauli p) {
    const double h = kInvSqrt2;
    switch (p) {
        case Pauli::X:
            return MeasBasis({Ket{complex_t(h), complex_t(h)}, Ket{complex_t(h), complex_t(-h)}});
        case Pauli::Y:
            return MeasBasis(
                {Ket{complex_t(h), complex_t(0.0, h)}, Ket{complex_t(h), complex_t(0.0, -h)}});
        case Pauli::Z:
            return MeasBasis({Ket{complex_t(1.0), complex_t(0.0)}, Ket{complex_t(0.0), complex_t(1.0)}});
    }
    throw std::invalid_argument("unknown Pauli label");
}

complex_t inner(const Ket& a, const Ket& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; }

QubitState make_rho_tau(double tau) {
    require_unit_interval(tau, "tau");
    return QubitState::from_entries(0.5, 0.5, complex_t(0.5 * tau, 0.0));
}

double purity(const QubitState& rho) {
    return rho.m00() * rho.m00() + rho.m11() * rho.m11() + 2.0 * std::norm(rho.m01());
}

double binary_entropy(double x) {
    if (!(x >= -kStateTolerance && x <= 1.0 + kStateTolerance)) {
        throw std::domain_error("binary entropy argument must lie in [0, 1], got " + std::to_string(x));
    }
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double vn_entropy(const QubitState& rho) { return binary_entropy(spectral_decompose(rho).lambda); }

double overlap_c(const MeasBasis& a, const MeasBasis& b) {
    double best = 0.0;
    for (const Ket& ai : a.kets()) {
        for (const Ket& bj : b.kets()) {
            best = std::max(best, std::norm(inner(ai, bj)));
        }
    }
    return best;
}

BornProbabilities born_probabilities(const QubitState& rho, const MeasBasis& basis) {
    double p0 = std::clamp(rho.sandwich(basis.ket(0), basis.ket(0)).real(), 0.0, 1.0);
    return {p0, 1.0 - p0};
}

QubitState dephase(const QubitState& rho, const MeasBasis& basis) {
    const BornProbabilities p = born_probabilities(rho, basis);
    const Ket& k0 = basis.ket(0);
    const Ket& k1 = basis.ket(1);
    const double m00 = p.p0 * std::norm(k0[0]) + p.p1 * std::norm(k1[0]);
    const double m11 = p.p0 * std::norm(k0[1]) + p.p1 * std::norm(k1[1]);
    const complex_t m01 = p.p0 * k0[0] * std::conj(k0[1]) + p.p1 * k1[0] * std::conj(k1[1]);
    return QubitState::from_entries(m00, m11, m01);
}

QubitState mix(std::span<const WeightedState> branches) {
    double total = 0.0;
    double m00 = 0.0;
    double m11 = 0.0;
    complex_t m01{0.0, 0.0};
    for (const WeightedState& b : branches) {
        if (!(b.weight >= 0.0)) throw std::domain_error("mixture weights must be non-negative");
        total += b.weight;
        m00 += b.weight * b.state.m00();
        m11 += b.weight * b.state.m11();
        m01 += b.weight * b.state.m01();
    }
    if (std::abs(total - 1.0) > kStateTolerance) {
        throw std::domain_error("mixture weights must sum to 1, got " + std::to_string(total));
    }
    return QubitState::from_entries(m00, m11, m01);
}

QubitState prepare_via_pipeline(double tau) {
    require_unit_interval(tau, "tau");
    const QubitState plus = QubitState::pure(MeasBasis::pauli(Pauli::X).ket(0));
    const QubitState dephased = dephase(plus, MeasBasis::pauli(Pauli::Z));
    const std::array<WeightedState, 2> branches{WeightedState{tau, plus},
                                                WeightedState{1.0 - tau, dephased}};
    return mix(branches);
}

SpectralDecomp spectral_decompose(const QubitState& rho) {
    const BlochVector r = rho.bloch();
    const double len = r.length();
    SpectralDecomp out;
    if (len <= kDegenerateBloch) {
        out.lambda = 0.5;
        out.psi = {complex_t(1.0), complex_t(0.0)};
        out.psi_perp = {complex_t(0.0), complex_t(1.0)};
        return out;
    }
    out.lambda = std::min(1.0, 0.5 * (1.0 + len));

    const double nx = r.x / len;
    const double ny = r.y / len;
    const double nz = r.z / len;
    // Both forms are the +1 eigenvector of n.sigma; the chosen one has norm >= 1.
    Ket v = nz >= 0.0 ? Ket{complex_t(1.0 + nz), complex_t(nx, ny)}
                      : Ket{complex_t(nx, -ny), complex_t(1.0 - nz)};
    const double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    v[0] /= norm;
    v[1] /= norm;
    out.psi = v;
    out.psi_perp = {-std::conj(v[1]), std::conj(v[0])};
    return out;
}

}  // namespace qurshadow
