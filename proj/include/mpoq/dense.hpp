#pragma once

// Brute-force statevector oracle. Shares only the gate matrices with the
// tensor code; every contraction here is plain index arithmetic.

#include <cstdint>
#include <utility>
#include <vector>

#include "mpoq/gates.hpp"

namespace mpoq::dense {

inline constexpr Index kMaxQubits = 20;

/// Amplitudes indexed by x = sum_i x_i 2^{n-i}.
struct DenseState {
  std::vector<Complex> amplitudes;
  Index n = 0;
};

DenseState basis_state(Index n, std::uint64_t x);
DenseState from_amplitudes(std::vector<Complex> amplitudes);
DenseState named_state(NamedState state, Index n);

DenseState apply_gate_dense(const DenseState& state, const GatePlacement& g);
DenseState apply_gates_dense(DenseState state, const std::vector<GatePlacement>& gates);

/// Unitary of a gate list (first entry acts first), n <= 10.
Matrix gates_unitary(Index n, const std::vector<GatePlacement>& gates);

/// e^{2 pi i x y / 2^n} / sqrt(2^n), row y, column x.
Matrix dft_matrix(Index n);

/// x with its n-bit binary representation reversed.
std::uint64_t reverse_bits(std::uint64_t x, Index n);

/// (sum, carry_out)
std::pair<int, int> full_adder_truth(int c_in, int a, int b);
std::uint64_t mod_exp(std::uint64_t a, std::uint64_t x, std::uint64_t m);

/// |psi_x|^2 / Z
std::vector<double> born_distribution_dense(const DenseState& state);

/// Marginal over the 1-based positions `measured` (ascending), indexed with
/// the first measured qubit most significant.
std::vector<double> marginal(const std::vector<double>& p, Index n, const std::vector<int>& measured);

/// Input-register distribution of period finding for f(x) = a^x mod m with a
/// 2t-qubit input register and the exact inverse DFT, indexed by y.
std::vector<double> shor_input_distribution(std::uint64_t a, std::uint64_t m, Index t);

}  // namespace mpoq::dense
