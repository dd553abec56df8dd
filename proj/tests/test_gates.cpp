#include <doctest.h>

#include <numbers>

#include "mpoq/gates.hpp"
#include "support.hpp"

using namespace mpoq;
using testing::kron_all;
using testing::max_diff;

namespace {

const Matrix I2 = Matrix::Identity(2, 2);

Matrix h_matrix() {
  Matrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Matrix x_matrix() {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

bool unitary(const Matrix& u) { return max_diff(u.adjoint() * u, Matrix::Identity(u.rows(), u.cols())) < 1e-12; }

// Phase e^{i phi} on every basis state where both qubits are 1.
Matrix cphase_dense(Index n, int p, int q, double phi) {
  const Index dim = Index{1} << n;
  Matrix m = Matrix::Identity(dim, dim);
  for (Index x = 0; x < dim; ++x) {
    if (((x >> (n - p)) & 1) && ((x >> (n - q)) & 1)) {
      m(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) = std::polar(1.0, phi);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("gate matrices") {
  CHECK(max_diff(gate::hadamard(), h_matrix()) < 1e-15);
  CHECK(max_diff(gate::pauli_x(), x_matrix()) == 0.0);
  CHECK(max_diff(gate::rk(2), gate::phase(std::numbers::pi / 2)) < 1e-15);
  CHECK(std::abs(gate::rk(3)(1, 1) - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
  CHECK(max_diff(gate::proj0() + gate::proj1(), I2) == 0.0);
  for (const Matrix2& u : {gate::pauli_x(), gate::pauli_y(), gate::pauli_z(), gate::hadamard(), gate::phase(0.3)}) {
    CHECK(unitary(u));
  }
}

TEST_CASE("single-qubit MPOs") {
  CHECK(max_diff(mpo_to_dense(single_qubit_mpo(1, gate::hadamard(), 1)), h_matrix()) < 1e-15);
  const MPO g = single_qubit_mpo(3, gate::hadamard(), 2);
  CHECK(g.max_rank() == 1);
  CHECK(max_diff(mpo_to_dense(g), kron_all({I2, h_matrix(), I2})) < 1e-15);
  const Matrix a = mpo_to_dense(single_qubit_mpo(3, gate::phase(0.4), 3));
  const Matrix b = mpo_to_dense(single_qubit_mpo(3, gate::phase(1.1), 3));
  CHECK(max_diff(a * b, b * a) < 1e-14);
  CHECK_THROWS_AS(single_qubit_mpo(3, gate::hadamard(), 4), ShapeError);
  CHECK_THROWS_AS(single_qubit_mpo(3, gate::hadamard(), 0), ShapeError);
}

TEST_CASE("controlled MPOs") {
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  CHECK(max_diff(mpo_to_dense(placement_mpo(2, place_cnot(1, 2))), cnot) < 1e-15);

  const Matrix toffoli = testing::permutation(3, [](std::uint64_t x) { return (x & 6) == 6 ? x ^ 1 : x; });
  CHECK(max_diff(mpo_to_dense(placement_mpo(3, place_ccnot(1, 2, 3))), toffoli) < 1e-15);

  // Control below the target and a gap in between.
  const Matrix rev = testing::permutation(4, [](std::uint64_t x) { return (x & 1) ? x ^ 8 : x; });
  const MPO far = placement_mpo(4, place_cnot(4, 1));
  CHECK(max_diff(mpo_to_dense(far), rev) < 1e-15);
  CHECK(far.ranks() == std::vector<Index>{1, 2, 2, 2, 1});

  const MPO mid = controlled_mpo(6, gate::pauli_x(), {2, 5}, 4);
  CHECK(mid.ranks() == std::vector<Index>{1, 1, 2, 2, 2, 1, 1});
  const Matrix three = testing::permutation(6, [](std::uint64_t x) {
    return ((x >> 4) & 1) && ((x >> 1) & 1) ? x ^ 4 : x;
  });
  CHECK(max_diff(mpo_to_dense(mid), three) < 1e-15);

  CHECK_THROWS_AS(placement_mpo(3, place_cnot(2, 2)), ShapeError);
  CHECK_THROWS_AS(placement_mpo(3, place_ccnot(1, 1, 3)), ShapeError);
}

TEST_CASE("controlled phase is symmetric in control and target") {
  for (Index n = 2; n <= 6; ++n) {
    for (int p = 1; p <= static_cast<int>(n); ++p) {
      for (int q = 1; q <= static_cast<int>(n); ++q) {
        if (p == q) continue;
        const Matrix a = mpo_to_dense(placement_mpo(n, place_cphase(3, p, q)));
        const Matrix b = mpo_to_dense(placement_mpo(n, place_cphase(3, q, p)));
        CHECK(max_diff(a, b) < 1e-15);
        CHECK(max_diff(a, cphase_dense(n, p, q, std::numbers::pi / 4)) < 1e-14);
      }
    }
  }
}

TEST_CASE("factored CNOT after a core transform") {
  // I + C1 (x) (X - I) moved to C0 (x) I + C1 (x) X.
  const MPO g = controlled_mpo(2, gate::pauli_x(), {1}, 2);
  Matrix q(2, 2);
  q << 1.0, 0.0, -1.0, 1.0;
  const MPO f = core_transform_paired(g, 0, q);
  CHECK(max_diff(mpo_to_dense(f), mpo_to_dense(g)) < 1e-15);
  const Matrix c0 = gate::proj0();
  const Matrix c1 = gate::proj1();
  const Core& first = f.core(0);
  const Core& second = f.core(1);
  for (Index x = 0; x < 2; ++x) {
    for (Index y = 0; y < 2; ++y) {
      CHECK(std::abs(first(0, x + 2 * y, 0) - c0(x, y)) < 1e-15);
      CHECK(std::abs(first(0, x + 2 * y, 1) - c1(x, y)) < 1e-15);
      CHECK(std::abs(second(0, x + 2 * y, 0) - I2(x, y)) < 1e-15);
      CHECK(std::abs(second(1, x + 2 * y, 0) - x_matrix()(x, y)) < 1e-15);
    }
  }
}

TEST_CASE("hadamard layers") {
  CHECK(max_diff(mpo_to_dense(hadamard_layer(2)), kron_all({h_matrix(), h_matrix()})) < 1e-15);
  CHECK(max_diff(mpo_to_dense(hadamard_layer(3, {2})), kron_all({I2, h_matrix(), I2})) < 1e-15);
  const MPO simon_g1 = hadamard_layer(8, {1, 3, 5, 7});
  CHECK(simon_g1.max_rank() == 1);
  CHECK(max_diff(mpo_to_dense(simon_g1), kron_all({h_matrix(), I2, h_matrix(), I2, h_matrix(), I2, h_matrix(), I2})) <
        1e-14);
  CHECK(max_diff(mpo_to_dense(hadamard_layer(3, {})), Matrix::Identity(8, 8)) == 0.0);
}

TEST_CASE("every gate MPO is unitary") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> pos(1, 6);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int a = pos(rng);
    int b = pos(rng);
    int c = pos(rng);
    while (b == a) b = pos(rng);
    while (c == a || c == b) c = pos(rng);
    const std::vector<GatePlacement> gates{place_h(a),        place_x(a),         place_phase(angle(rng), a),
                                           place_rk(trial % 7 + 1, a), place_cnot(a, b), place_cphase(trial % 5 + 1, a, b),
                                           place_ccnot(a, b, c)};
    for (const GatePlacement& g : gates) CHECK(unitary(mpo_to_dense(placement_mpo(6, g))));
    const MPO u = controlled_mpo(6, gate::pauli_y(), {a, b}, c);
    CHECK(u.max_rank() == 2);
    CHECK(unitary(mpo_to_dense(u)));
  }
}

TEST_CASE("placement lists") {
  const std::vector<GatePlacement> gates{place_h(1), place_cnot(1, 2), place_cphase(2, 2, 3)};
  const Matrix want =
      cphase_dense(3, 2, 3, std::numbers::pi / 2) *
      testing::permutation(3, [](std::uint64_t x) { return (x & 4) ? x ^ 2 : x; }) * kron_all({h_matrix(), I2, I2});
  CHECK(max_diff(mpo_to_dense(placements_mpo(3, gates)), want) < 1e-14);
  CHECK_THROWS_AS(validate_placement(place_h(5), 4), ShapeError);
}
