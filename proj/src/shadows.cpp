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

#include "qurshadow/shadows.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qurshadow/parallel.hpp"

namespace qurshadow {

namespace {

const std::array<MeasBasis, 3>& pauli_bases() {
    static const std::array<MeasBasis, 3> bases{MeasBasis::pauli(Pauli::X), MeasBasis::pauli(Pauli::Y),
                                                MeasBasis::pauli(Pauli::Z)};
    return bases;
}

const MeasBasis& basis_of(Pauli p) { return pauli_bases()[static_cast<int>(p)]; }

}  // namespace

ShadowRun ShadowRun::sample(const QubitState& rho, std::size_t n_s, std::uint64_t seed) {
    Rng rng(seed);
    ShadowRun run;
    run.seed = seed;
    run.snapshots.reserve(n_s);
    for (std::size_t i = 0; i < n_s; ++i) run.snapshots.push_back(sample_snapshot(rho, rng));
    return run;
}

SnapshotHistogram SnapshotHistogram::of(const ShadowRun& run) {
    SnapshotHistogram h;
    for (const Snapshot& s : run.snapshots) ++h.counts[static_cast<int>(s.basis)][s.outcome];
    return h;
}

std::int64_t SnapshotHistogram::total() const {
    std::int64_t n = 0;
    for (const auto& b : counts) n += b[0] + b[1];
    return n;
}

Snapshot sample_snapshot(const QubitState& rho, Rng& rng) {
    const auto basis = static_cast<Pauli>(uniform_index(rng, 3));
    const double p0 = born_probabilities(rho, basis_of(basis)).p0;
    return {basis, uniform01(rng) < p0 ? 0 : 1};
}

SnapshotMatrix snapshot_matrix(const Snapshot& s) {
    const Ket& k = basis_of(s.basis).ket(s.outcome);
    return {3.0 * std::norm(k[0]) - 1.0, 3.0 * std::norm(k[1]) - 1.0, 3.0 * k[0] * std::conj(k[1])};
}

double pair_overlap_trace(const Snapshot& si, const Snapshot& sj) {
    // Stabilizer kets overlap with squared modulus 1, 0 or 1/2.
    if (si.basis != sj.basis) return 0.5;
    return si.outcome == sj.outcome ? 5.0 : -4.0;
}

double estimate_purity(const SnapshotHistogram& hist) {
    const std::int64_t n = hist.total();
    if (n < 2) {
        throw InsufficientSamples("purity estimate needs at least 2 snapshots, got " + std::to_string(n));
    }
    // Ordered pair counts by kind: same bin (trace 5), same basis with
    // opposite outcomes (trace -4), different bases (trace 1/2).
    std::int64_t same_bin = 0;
    std::int64_t opposite = 0;
    for (const auto& b : hist.counts) {
        same_bin += b[0] * (b[0] - 1) + b[1] * (b[1] - 1);
        opposite += 2 * b[0] * b[1];
    }
    const std::int64_t pairs = n * (n - 1);
    const std::int64_t cross_basis = pairs - same_bin - opposite;
    const double sum = 5.0 * static_cast<double>(same_bin) - 4.0 * static_cast<double>(opposite) +
                       0.5 * static_cast<double>(cross_basis);
    return sum / static_cast<double>(pairs);
}

double estimate_purity(const ShadowRun& run) { return estimate_purity(SnapshotHistogram::of(run)); }

SnapshotMatrix estimate_state_mean(const ShadowRun& run) {
    if (run.n_s() == 0) throw InsufficientSamples("state mean needs at least 1 snapshot");
    const SnapshotHistogram hist = SnapshotHistogram::of(run);
    SnapshotMatrix mean;
    for (int b = 0; b < 3; ++b) {
        for (int o = 0; o < 2; ++o) {
            const double w = static_cast<double>(hist.counts[b][o]);
            const SnapshotMatrix m = snapshot_matrix({static_cast<Pauli>(b), o});
            mean.m00 += w * m.m00;
            mean.m11 += w * m.m11;
            mean.m01 += w * m.m01;
        }
    }
    const double n = static_cast<double>(run.n_s());
    mean.m00 /= n;
    mean.m11 /= n;
    mean.m01 /= n;
    return mean;
}

std::uint64_t repeat_seed(std::uint64_t seed, std::size_t index) { return derive_seed(seed, {index}); }

PuritySummary repeat_purity(const QubitState& rho, std::size_t n_s, std::size_t repeats,
                            std::uint64_t seed, unsigned threads) {
    if (repeats < 1) throw std::invalid_argument("repeat_purity needs at least one repeat");
    if (n_s < 2) throw InsufficientSamples("purity estimate needs at least 2 snapshots");

    PuritySummary out;
    out.values.resize(repeats);
    parallel_for(repeats, threads, [&](std::size_t r) {
        out.values[r] = estimate_purity(ShadowRun::sample(rho, n_s, repeat_seed(seed, r)));
    });

    double sum = 0.0;
    for (double v : out.values) sum += v;
    out.mean = sum / static_cast<double>(repeats);
    if (repeats > 1) {
        double ss = 0.0;
        for (double v : out.values) ss += (v - out.mean) * (v - out.mean);
        out.std = std::sqrt(ss / static_cast<double>(repeats - 1));
    }
    return out;
}

std::array<std::int64_t, 2> measure_counts(const QubitState& rho, const MeasBasis& basis,
                                           std::int64_t shots, Rng& rng) {
    if (shots < 1) throw std::invalid_argument("shot count must be positive");
    const double p0 = born_probabilities(rho, basis).p0;
    std::int64_t n0 = 0;
    for (std::int64_t i = 0; i < shots; ++i) n0 += uniform01(rng) < p0 ? 1 : 0;
    return {n0, shots - n0};
}

CountsTable qst_counts(const QubitState& rho, std::int64_t shots_per_basis, Rng& rng) {
    CountsTable table;
    table.shots_per_basis = shots_per_basis;
    for (int b = 0; b < 3; ++b) table.counts[b] = measure_counts(rho, pauli_bases()[b], shots_per_basis, rng);
    return table;
}

QubitState state_from_bloch_estimate(BlochVector r) {
    const double len = r.length();
    if (len > 1.0) {
        r.x /= len;
        r.y /= len;
        r.z /= len;
    }
    return QubitState::from_bloch(r);
}

QubitState qst_reconstruct_frequencies(const std::array<double, 3>& p0) {
    for (double p : p0) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("outcome frequency outside [0, 1]");
    }
    return state_from_bloch_estimate({2.0 * p0[0] - 1.0, 2.0 * p0[1] - 1.0, 2.0 * p0[2] - 1.0});
}

QubitState qst_reconstruct(const CountsTable& counts) {
    const std::int64_t shots = counts.shots_per_basis;
    if (shots < 1) throw std::invalid_argument("counts table has no shots");
    std::array<double, 3> r{};
    for (int b = 0; b < 3; ++b) {
        const auto [n0, n1] = counts.counts[b];
        if (n0 < 0 || n1 < 0 || n0 + n1 != shots) {
            throw std::invalid_argument(std::string("inconsistent counts for basis ") +
                                        pauli_letter(static_cast<Pauli>(b)));
        }
        r[b] = static_cast<double>(n0 - n1) / static_cast<double>(shots);
    }
    return state_from_bloch_estimate({r[0], r[1], r[2]});
}

double purity_from_qst(const CountsTable& counts) { return purity(qst_reconstruct(counts)); }

double empirical_entropy(std::int64_t n0, std::int64_t n1) {
    if (n0 < 0 || n1 < 0) throw std::invalid_argument("outcome counts must be non-negative");
    if (n0 + n1 < 1) throw std::invalid_argument("entropy of zero shots is undefined");
    return binary_entropy(static_cast<double>(n0) / static_cast<double>(n0 + n1));
}

void write_snapshots(std::ostream& out, const ShadowRun& run) {
    out << "ns=" << run.n_s() << " seed=" << run.seed << '\n';
    for (const Snapshot& s : run.snapshots) out << pauli_letter(s.basis) << s.outcome << '\n';
}

ShadowRun read_snapshots(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("snapshot dump: missing header");

    std::size_t ns = 0;
    ShadowRun run;
    {
        std::istringstream header(line);
        std::string ns_field;
        std::string seed_field;
        header >> ns_field >> seed_field;
        if (ns_field.rfind("ns=", 0) != 0 || seed_field.rfind("seed=", 0) != 0) {
            throw std::runtime_error("snapshot dump: malformed header '" + line + "'");
        }
        try {
            ns = std::stoull(ns_field.substr(3));
            run.seed = std::stoull(seed_field.substr(5));
        } catch (const std::exception&) {
            throw std::runtime_error("snapshot dump: malformed header '" + line + "'");
        }
    }

    run.snapshots.reserve(ns);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.size() != 2 || (line[1] != '0' && line[1] != '1')) {
            throw std::runtime_error("snapshot dump: malformed record '" + line + "'");
        }
        Pauli basis{};
        try {
            basis = pauli_from_letter(line[0]);
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("snapshot dump: malformed record '" + line + "'");
        }
        run.snapshots.push_back({basis, line[1] - '0'});
    }
    if (run.n_s() != ns) {
        throw std::runtime_error("snapshot dump: header announces " + std::to_string(ns) + " records, found " +
                                 std::to_string(run.n_s()));
    }
    return run;
}

}  // namespace qurshadow
