#include <doctest.h>

#include <numbers>

#include "mpoq/dense.hpp"
#include "support.hpp"

using namespace mpoq;
using testing::max_diff;

TEST_CASE("gate application") {
  const auto s = dense::apply_gate_dense(dense::basis_state(1, 0), place_h(1));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(max_diff(s.amplitudes, {h, h}) < 1e-15);
  const auto c = dense::apply_gate_dense(dense::basis_state(2, 0b10), place_cnot(1, 2));
  CHECK(max_diff(c.amplitudes, {0.0, 0.0, 0.0, 1.0}) == 0.0);
  // Flip qubit 4 only when qubits 1 and 3 are both set.
  for (std::uint64_t x = 0; x < 16; ++x) {
    const auto out = dense::apply_gate_dense(dense::basis_state(4, x), place_ccnot(1, 3, 4));
    const std::uint64_t want = (x & 0b1010) == 0b1010 ? x ^ 1 : x;
    CHECK(std::abs(out.amplitudes[want] - 1.0) < 1e-15);
  }
  CHECK_THROWS_AS(dense::basis_state(21, 0), DenseCapExceeded);
}

TEST_CASE("gate unitaries agree with the MPO bridge") {
  const std::vector<GatePlacement> gates{place_h(2), place_ccnot(2, 4, 1), place_cphase(3, 3, 1), place_rk(5, 4)};
  CHECK(max_diff(dense::gates_unitary(4, gates), mpo_to_dense(placements_mpo(4, gates, TruncationPolicy::lossless()))) <
        1e-14);
}

TEST_CASE("DFT matrix") {
  CHECK(max_diff(dense::dft_matrix(1), Matrix(gate::hadamard())) < 1e-15);
  const Matrix f2 = dense::dft_matrix(2);
  const std::vector<Complex> col1{0.5, Complex(0, 0.5), -0.5, Complex(0, -0.5)};
  for (Index y = 0; y < 4; ++y) CHECK(std::abs(f2(static_cast<Eigen::Index>(y), 1) - col1[y]) < 1e-15);
  const Matrix f3 = dense::dft_matrix(3);
  CHECK(max_diff(f3.adjoint() * f3, Matrix::Identity(8, 8)) < 1e-14);
  CHECK(dense::reverse_bits(0b0011, 4) == 0b1100);
  CHECK(dense::reverse_bits(1, 8) == 128);
}

TEST_CASE("classical oracles") {
  CHECK(dense::full_adder_truth(1, 1, 1) == std::pair{1, 1});
  CHECK(dense::full_adder_truth(0, 1, 1) == std::pair{0, 1});
  CHECK(dense::full_adder_truth(1, 0, 0) == std::pair{1, 0});
  CHECK(dense::mod_exp(7, 4, 15) == 1);
  CHECK(dense::mod_exp(7, 1, 15) == 7);
  CHECK(dense::mod_exp(2, 0, 15) == 1);
  CHECK(dense::mod_exp(13, 3, 15) == 13 * 13 * 13 % 15);
}

TEST_CASE("Born distributions and marginals") {
  std::mt19937_64 rng(2);
  std::vector<Complex> amps(32);
  for (Complex& a : amps) a = testing::random_complex(rng);
  const auto p = dense::born_distribution_dense(dense::from_amplitudes(amps));
  double total = 0.0;
  for (double v : p) total += v;
  CHECK(std::abs(total - 1.0) < 1e-12);
  const auto m = dense::marginal(p, 5, {2, 5});
  for (std::uint64_t key = 0; key < 4; ++key) {
    double want = 0.0;
    for (std::uint64_t x = 0; x < 32; ++x) {
      if ((((x >> 3) & 1) << 1 | (x & 1)) == key) want += p[x];
    }
    CHECK(std::abs(m[key] - want) < 1e-15);
  }
  CHECK_THROWS_AS(dense::born_distribution_dense(dense::from_amplitudes(std::vector<Complex>(4, 0.0))), NumericalError);
}

TEST_CASE("named states match the tensor factory") {
  for (auto s : {NamedState::ghz, NamedState::w}) {
    for (Index n = 2; n <= 6; ++n) CHECK(max_diff(dense::named_state(s, n).amplitudes, mps_to_dense(mps_named_state(s, n))) < 1e-14);
  }
  CHECK(max_diff(dense::named_state(NamedState::bell_psi_minus, 2).amplitudes,
                 mps_to_dense(mps_named_state(NamedState::bell_psi_minus, 2))) < 1e-15);
}

TEST_CASE("period-finding distribution") {
  const auto p = dense::shor_input_distribution(7, 15, 4);
  CHECK(p.size() == 256);
  for (std::uint64_t y = 0; y < 256; ++y) {
    const double want = y % 64 == 0 ? 0.25 : 0.0;
    CHECK(std::abs(p[y] - want) < 1e-12);
  }
  const auto q = dense::shor_input_distribution(11, 15, 4);
  CHECK(std::abs(q[0] - 0.5) < 1e-12);
  CHECK(std::abs(q[128] - 0.5) < 1e-12);
}
