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

#ifndef QURSHADOW_SHADOWS_HPP
#define QURSHADOW_SHADOWS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "qurshadow/random.hpp"
#include "qurshadow/statekit.hpp"

namespace qurshadow {

/// One classical-shadow record: a uniformly drawn Pauli basis and the
/// measured outcome (0 selects the +1 eigenket).
struct Snapshot {
    Pauli basis = Pauli::Z;
    int outcome = 0;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

/// 2x2 Hermitian, unit-trace operator with the QubitState entry layout but no
/// positivity requirement. Used for single-snapshot estimators and their means.
struct SnapshotMatrix {
    double m00 = 0.0;
    double m11 = 0.0;
    complex_t m01{0.0, 0.0};

    double trace() const { return m00 + m11; }
};

struct ShadowRun {
    std::uint64_t seed = 0;
    std::vector<Snapshot> snapshots;

    std::size_t n_s() const { return snapshots.size(); }

    /// n_s snapshots of rho drawn from a stream seeded with `seed`.
    static ShadowRun sample(const QubitState& rho, std::size_t n_s, std::uint64_t seed);
};

/// Counts per (basis, outcome) bin, indexed [Pauli][outcome].
struct SnapshotHistogram {
    std::array<std::array<std::int64_t, 2>, 3> counts{};

    static SnapshotHistogram of(const ShadowRun& run);
    std::int64_t total() const;
};

struct PuritySummary {
    double mean = 0.0;
    /// Sample standard deviation over repeats (0 for a single repeat).
    double std = 0.0;
    std::vector<double> values;
};

/// Projective-measurement counts in the three Pauli bases.
struct CountsTable {
    std::array<std::array<std::int64_t, 2>, 3> counts{};
    std::int64_t shots_per_basis = 0;

    std::int64_t n0(Pauli p) const { return counts[static_cast<int>(p)][0]; }
    std::int64_t n1(Pauli p) const { return counts[static_cast<int>(p)][1]; }
};

class InsufficientSamples : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Snapshot sample_snapshot(const QubitState& rho, Rng& rng);

/// 3|k><k| - I for the eigenket selected by the snapshot.
SnapshotMatrix snapshot_matrix(const Snapshot& s);

/// tr[rho_i rho_j] = 9 |<k_i|k_j>|^2 - 4 for the two snapshot estimators.
double pair_overlap_trace(const Snapshot& si, const Snapshot& sj);

/// Unbiased U-statistic for tr[rho^2] over all ordered pairs i != j, evaluated
/// from the six-bin histogram. Throws InsufficientSamples when n_s < 2.
double estimate_purity(const ShadowRun& run);
double estimate_purity(const SnapshotHistogram& hist);

/// Entrywise mean of the snapshot matrices. Throws InsufficientSamples when
/// the run is empty.
SnapshotMatrix estimate_state_mean(const ShadowRun& run);

/// Seed of repeat `index` under `seed`.
std::uint64_t repeat_seed(std::uint64_t seed, std::size_t index);

/// `repeats` independent shadow runs of size n_s. Repeats are evaluated on up
/// to `threads` worker threads (0 picks the hardware concurrency); the result
/// does not depend on the thread count.
PuritySummary repeat_purity(const QubitState& rho, std::size_t n_s, std::size_t repeats,
                            std::uint64_t seed, unsigned threads = 1);

/// Born-rule counts in X, Y and Z with shots_per_basis shots each.
CountsTable qst_counts(const QubitState& rho, std::int64_t shots_per_basis, Rng& rng);

/// State for a linear-inversion Bloch estimate; vectors longer than 1 are
/// rescaled to unit length.
QubitState state_from_bloch_estimate(BlochVector r);

/// Linear inversion from the per-basis probability of outcome 0 (ordered X, Y, Z).
/// Bloch vectors longer than 1 are rescaled onto the sphere.
QubitState qst_reconstruct_frequencies(const std::array<double, 3>& p0);
QubitState qst_reconstruct(const CountsTable& counts);

double purity_from_qst(const CountsTable& counts);

/// Plug-in Shannon entropy (bits) of the empirical outcome frequencies.
double empirical_entropy(std::int64_t n0, std::int64_t n1);

/// Outcome counts of `shots` projective measurements of rho in `basis`.
std::array<std::int64_t, 2> measure_counts(const QubitState& rho, const MeasBasis& basis,
                                           std::int64_t shots, Rng& rng);

/// Text audit format: header `ns=<N> seed=<S>` then one `<basis><outcome>`
/// line per snapshot.
void write_snapshots(std::ostream& out, const ShadowRun& run);
ShadowRun read_snapshots(std::istream& in);

}  // namespace qurshadow

#endif  // QURSHADOW_SHADOWS_HPP
