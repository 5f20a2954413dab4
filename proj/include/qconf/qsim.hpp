// Copyright 2026 The qconf Authors
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

#ifndef QCONF_QSIM_HPP
#define QCONF_QSIM_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qconf/errors.hpp"
#include "qconf/rng.hpp"

namespace qconf {

using Amplitude = std::complex<double>;

/// Tolerance for exact probability-table comparisons and state normalization.
inline constexpr double kAmplitudeTolerance = 1e-12;
/// Tolerance for unitarity checks (accumulated rounding in U^dagger U).
inline constexpr double kUnitaryTolerance = 1e-10;
/// Largest joint state the simulator will build.
inline constexpr std::size_t kMaxQubits = 16;

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

enum class Basis : std::uint8_t { Z = 0, X = 1 };

inline Basis other_basis(Basis b) {
    return b == Basis::Z ? Basis::X : Basis::Z;
}

inline const char *basis_name(Basis b) {
    return b == Basis::Z ? "Z" : "X";
}

/// Symbolic single-qubit preparation: (Z,0)=|0>, (Z,1)=|1>, (X,0)=|+>, (X,1)=|->.
struct QubitSpec {
    Basis basis = Basis::Z;
    std::uint8_t bit = 0;

    bool operator==(const QubitSpec &) const = default;

    std::string to_string() const {
        if (basis == Basis::Z) {
            return bit ? "|1>" : "|0>";
        }
        return bit ? "|->" : "|+>";
    }
};

/// Normalized state vector over `num_qubits` qubits. Qubit 0 is the most
/// significant bit of the computational index.
class PureState {
   public:
    PureState(std::size_t num_qubits, std::vector<Amplitude> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
        if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
            throw ResourceLimitError("PureState: qubit count must be in [1, 16]");
        }
        if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
            throw ContractError("PureState: amplitude count must be 2^num_qubits");
        }
        if (std::abs(norm_squared() - 1.0) > kAmplitudeTolerance) {
            throw ContractError("PureState: amplitudes are not normalized");
        }
    }

    static PureState computational(std::size_t num_qubits, std::size_t index) {
        std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
        if (index >= amps.size()) {
            throw ContractError("PureState::computational: index out of range");
        }
        amps[index] = 1.0;
        return PureState(num_qubits, std::move(amps));
    }

    std::size_t num_qubits() const noexcept {
        return num_qubits_;
    }
    std::size_t dimension() const noexcept {
        return amplitudes_.size();
    }
    std::span<const Amplitude> amplitudes() const noexcept {
        return amplitudes_;
    }
    const Amplitude &operator[](std::size_t i) const {
        return amplitudes_[i];
    }

    double norm_squared() const {
        double s = 0;
        for (const auto &a : amplitudes_) {
            s += std::norm(a);
        }
        return s;
    }

    /// Bit mask of `qubit` inside the computational index.
    std::size_t mask_of(std::size_t qubit) const {
        if (qubit >= num_qubits_) {
            throw ContractError("PureState: qubit index out of range");
        }
        return std::size_t{1} << (num_qubits_ - 1 - qubit);
    }

   private:
    struct Unchecked {};
    PureState(Unchecked, std::size_t num_qubits, std::vector<Amplitude> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    }

    friend PureState tensor(std::span<const PureState> states);
    friend PureState apply_1q_unitary(const PureState &, const std::array<Amplitude, 4> &, std::size_t);
    friend PureState apply_cnot(const PureState &, std::size_t, std::size_t);
    friend std::uint8_t measure_qubit(PureState &, std::size_t, Basis, Rng &);

    std::size_t num_qubits_;
    std::vector<Amplitude> amplitudes_;
};

inline Amplitude inner_product(const PureState &bra, const PureState &ket) {
    if (bra.dimension() != ket.dimension()) {
        throw ContractError("inner_product: dimension mismatch");
    }
    Amplitude s = 0;
    for (std::size_t i = 0; i < bra.dimension(); i++) {
        s += std::conj(bra[i]) * ket[i];
    }
    return s;
}

inline bool approx_equal(const PureState &a, const PureState &b, double tol = kAmplitudeTolerance) {
    if (a.dimension() != b.dimension()) {
        return false;
    }
    for (std::size_t i = 0; i < a.dimension(); i++) {
        if (std::abs(a[i] - b[i]) > tol) {
            return false;
        }
    }
    return true;
}

inline PureState materialize(QubitSpec spec) {
    if (spec.basis == Basis::Z) {
        return PureState::computational(1, spec.bit ? 1 : 0);
    }
    double s = spec.bit ? -kInvSqrt2 : kInvSqrt2;
    return PureState(1, {kInvSqrt2, s});
}

/// Kronecker product; the first state supplies the most significant qubits.
inline PureState tensor(std::span<const PureState> states) {
    if (states.empty()) {
        throw ContractError("tensor: empty sequence");
    }
    std::size_t n = 0;
    for (const auto &s : states) {
        n += s.num_qubits();
    }
    if (n > kMaxQubits) {
        throw ResourceLimitError("tensor: result exceeds 16 qubits");
    }
    std::vector<Amplitude> acc(states[0].amplitudes().begin(), states[0].amplitudes().end());
    for (std::size_t k = 1; k < states.size(); k++) {
        auto rhs = states[k].amplitudes();
        std::vector<Amplitude> next(acc.size() * rhs.size());
        for (std::size_t i = 0; i < acc.size(); i++) {
            for (std::size_t j = 0; j < rhs.size(); j++) {
                next[i * rhs.size() + j] = acc[i] * rhs[j];
            }
        }
        acc = std::move(next);
    }
    return PureState(PureState::Unchecked{}, n, std::move(acc));
}

inline PureState tensor(std::initializer_list<PureState> states) {
    return tensor(std::span<const PureState>(states.begin(), states.size()));
}

using Matrix2 = std::array<Amplitude, 4>;  // row-major

namespace pauli {
inline const Matrix2 I{1.0, 0.0, 0.0, 1.0};
inline const Matrix2 X{0.0, 1.0, 1.0, 0.0};
/// i * sigma_y, which is real.
inline const Matrix2 iY{0.0, 1.0, -1.0, 0.0};
inline const Matrix2 Z{1.0, 0.0, 0.0, -1.0};
}  // namespace pauli

inline bool is_unitary(const Matrix2 &u, double tol = kUnitaryTolerance) {
    // (U^dagger U)_{rc} = sum_k conj(U_{kr}) U_{kc}
    for (int r = 0; r < 2; r++) {
        for (int c = 0; c < 2; c++) {
            Amplitude s = std::conj(u[r]) * u[c] + std::conj(u[2 + r]) * u[2 + c];
            Amplitude expected = r == c ? 1.0 : 0.0;
            if (std::abs(s - expected) > tol) {
                return false;
            }
        }
    }
    return true;
}

inline PureState apply_1q_unitary(const PureState &state, const Matrix2 &u, std::size_t target) {
    if (!is_unitary(u)) {
        throw ContractError("apply_1q_unitary: matrix is not unitary");
    }
    std::size_t mask = state.mask_of(target);
    std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t i = 0; i < out.size(); i++) {
        if (i & mask) {
            continue;
        }
        Amplitude a0 = state[i];
        Amplitude a1 = state[i | mask];
        out[i] = u[0] * a0 + u[1] * a1;
        out[i | mask] = u[2] * a0 + u[3] * a1;
    }
    return PureState(PureState::Unchecked{}, state.num_qubits(), std::move(out));
}

inline PureState apply_cnot(const PureState &state, std::size_t control, std::size_t target) {
    if (control == target) {
        throw ContractError("apply_cnot: control and target must differ");
    }
    std::size_t cm = state.mask_of(control);
    std::size_t tm = state.mask_of(target);
    std::vector<Amplitude> out(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t i = 0; i < out.size(); i++) {
        if ((i & cm) && !(i & tm)) {
            std::swap(out[i], out[i | tm]);
        }
    }
    return PureState(PureState::Unchecked{}, state.num_qubits(), std::move(out));
}

/// Projective measurement of one qubit of a (possibly larger) register in Z or X.
/// Collapses `state` in place and returns the outcome bit (for X: 0 = |+>, 1 = |->).
inline std::uint8_t measure_qubit(PureState &state, std::size_t target, Basis basis, Rng &rng) {
    std::size_t mask = state.mask_of(target);
    auto &amps = state.amplitudes_;
    // Basis vectors v_b as (v_b[0], v_b[1]); all real.
    double v[2][2];
    if (basis == Basis::Z) {
        v[0][0] = 1, v[0][1] = 0, v[1][0] = 0, v[1][1] = 1;
    } else {
        v[0][0] = kInvSqrt2, v[0][1] = kInvSqrt2, v[1][0] = kInvSqrt2, v[1][1] = -kInvSqrt2;
    }
    double p0 = 0;
    for (std::size_t i = 0; i < amps.size(); i++) {
        if (!(i & mask)) {
            p0 += std::norm(v[0][0] * amps[i] + v[0][1] * amps[i | mask]);
        }
    }
    std::uint8_t b = rng.uniform01() < p0 ? 0 : 1;
    if (p0 > 1.0 - kAmplitudeTolerance) {
        b = 0;
    } else if (p0 < kAmplitudeTolerance) {
        b = 1;
    }
    double pb = b == 0 ? p0 : 1.0 - p0;
    double scale = 1.0 / std::sqrt(pb);
    for (std::size_t i = 0; i < amps.size(); i++) {
        if (i & mask) {
            continue;
        }
        Amplitude c = v[b][0] * amps[i] + v[b][1] * amps[i | mask];
        amps[i] = v[b][0] * c * scale;
        amps[i | mask] = v[b][1] * c * scale;
    }
    return b;
}

struct SingleMeasurement {
    std::uint8_t bit;
    PureState state;
};

inline SingleMeasurement measure_single(const PureState &state, Basis basis, Rng &rng) {
    if (state.num_qubits() != 1) {
        throw ContractError("measure_single: expected a single-qubit state");
    }
    PureState s = state;
    std::uint8_t b = measure_qubit(s, 0, basis, rng);
    return {b, std::move(s)};
}

enum class Sign : std::uint8_t { plus = 0, minus = 1 };

/// Joint-measurement result Phi_index^sign; `code() = 2*index + sign`.
struct Outcome {
    std::uint32_t index = 0;
    Sign sign = Sign::plus;

    bool operator==(const Outcome &) const = default;

    std::uint32_t code() const {
        return 2 * index + static_cast<std::uint32_t>(sign);
    }

    static Outcome from_code(std::uint32_t code) {
        return {code >> 1, (code & 1) ? Sign::minus : Sign::plus};
    }

    std::string to_string() const {
        return "Phi" + std::to_string(index) + (sign == Sign::plus ? "+" : "-");
    }
};

/// The GHZ-type basis B_N: Phi_i^{+-} = (|i> +- |2^N-1-i>)/sqrt(2), i < 2^(N-1),
/// listed in order Phi_0^+, Phi_0^-, Phi_1^+, ...
///
/// Vectors are produced on demand; the overlaps used for measurement only touch
/// two amplitudes each, so the basis costs O(1) memory for any supported N.
class JointBasis {
   public:
    explicit JointBasis(std::size_t num_qubits) : n_(num_qubits) {
        if (n_ < 2 || n_ > kMaxQubits) {
            throw ResourceLimitError("JointBasis: N must be in [2, 16]");
        }
    }

    std::size_t num_qubits() const noexcept {
        return n_;
    }
    /// Number of basis vectors, 2^N.
    std::size_t size() const noexcept {
        return std::size_t{1} << n_;
    }
    std::uint32_t num_indices() const noexcept {
        return static_cast<std::uint32_t>(size() / 2);
    }

    PureState vector(std::uint32_t code) const {
        if (code >= size()) {
            throw ContractError("JointBasis::vector: code out of range");
        }
        Outcome o = Outcome::from_code(code);
        std::vector<Amplitude> amps(size());
        amps[o.index] = kInvSqrt2;
        amps[size() - 1 - o.index] = o.sign == Sign::plus ? kInvSqrt2 : -kInvSqrt2;
        return PureState(n_, std::move(amps));
    }

    std::vector<PureState> vectors() const {
        if (n_ > 10) {
            throw ResourceLimitError("JointBasis::vectors: refusing to materialize more than 2^10 vectors");
        }
        std::vector<PureState> out;
        out.reserve(size());
        for (std::uint32_t c = 0; c < size(); c++) {
            out.push_back(vector(c));
        }
        return out;
    }

    /// <Phi_code | psi> for a vector indexed over the N measured qubits.
    Amplitude overlap(std::uint32_t code, std::span<const Amplitude> psi) const {
        Outcome o = Outcome::from_code(code);
        Amplitude a = psi[o.index];
        Amplitude b = psi[size() - 1 - o.index];
        return kInvSqrt2 * (o.sign == Sign::plus ? a + b : a - b);
    }

   private:
    std::size_t n_;
};

/// Born-rule probabilities of every basis outcome, indexed by outcome code.
inline std::vector<double> outcome_distribution(const PureState &state, const JointBasis &basis) {
    if (state.num_qubits() != basis.num_qubits()) {
        throw ContractError("outcome_distribution: state and basis dimensions differ");
    }
    std::vector<double> p(basis.size());
    for (std::uint32_t c = 0; c < basis.size(); c++) {
        p[c] = std::norm(basis.overlap(c, state.amplitudes()));
    }
    return p;
}

/// Outcome probabilities for measuring the qubits `targets` (in that order) of a
/// larger register in B_N; the remaining qubits are traced out.
inline std::vector<double> outcome_distribution(const PureState &state, std::span<const std::size_t> targets,
                                                const JointBasis &basis) {
    if (targets.size() != basis.num_qubits() || targets.size() > state.num_qubits()) {
        throw ContractError("outcome_distribution: target count does not match basis");
    }
    std::size_t nt = targets.size();
    std::size_t ne = state.num_qubits() - nt;
    std::vector<std::size_t> target_masks(nt);
    std::size_t all_targets = 0;
    for (std::size_t k = 0; k < nt; k++) {
        target_masks[k] = state.mask_of(targets[k]);
        if (all_targets & target_masks[k]) {
            throw ContractError("outcome_distribution: repeated target qubit");
        }
        all_targets |= target_masks[k];
    }
    std::vector<std::size_t> env_masks;
    for (std::size_t q = 0; q < state.num_qubits(); q++) {
        if (!(all_targets & state.mask_of(q))) {
            env_masks.push_back(state.mask_of(q));
        }
    }
    std::vector<double> p(basis.size(), 0.0);
    std::vector<Amplitude> slice(std::size_t{1} << nt);
    for (std::size_t e = 0; e < (std::size_t{1} << ne); e++) {
        std::size_t env_bits = 0;
        for (std::size_t k = 0; k < ne; k++) {
            if (e & (std::size_t{1} << (ne - 1 - k))) {
                env_bits |= env_masks[k];
            }
        }
        for (std::size_t x = 0; x < slice.size(); x++) {
            std::size_t idx = env_bits;
            for (std::size_t k = 0; k < nt; k++) {
                if (x & (std::size_t{1} << (nt - 1 - k))) {
                    idx |= target_masks[k];
                }
            }
            slice[x] = state[idx];
        }
        for (std::uint32_t c = 0; c < basis.size(); c++) {
            p[c] += std::norm(basis.overlap(c, slice));
        }
    }
    return p;
}

/// Index drawn from a discrete distribution; zero-probability entries are never chosen.
inline std::size_t sample_index(std::span<const double> probabilities, Rng &rng) {
    double u = rng.uniform01();
    double total = 0;
    for (double p : probabilities) {
        total += p;
    }
    double acc = 0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < probabilities.size(); i++) {
        if (probabilities[i] < kAmplitudeTolerance) {
            continue;
        }
        last_nonzero = i;
        acc += probabilities[i] / total;
        if (u < acc) {
            return i;
        }
    }
    return last_nonzero;
}

inline Outcome measure_joint(const PureState &state, const JointBasis &basis, Rng &rng) {
    auto p = outcome_distribution(state, basis);
    return Outcome::from_code(static_cast<std::uint32_t>(sample_index(p, rng)));
}

inline Outcome measure_joint(const PureState &state, std::span<const std::size_t> targets, const JointBasis &basis,
                             Rng &rng) {
    auto p = outcome_distribution(state, targets, basis);
    return Outcome::from_code(static_cast<std::uint32_t>(sample_index(p, rng)));
}

}  // namespace qconf

#endif  // QCONF_QSIM_HPP
