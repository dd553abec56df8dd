#include "mpoq/dense.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace mpoq::dense {

namespace {

void check_size(Index n) {
  if (n == 0) throw ShapeError("dense state needs at least one qubit");
  if (n > kMaxQubits) throw DenseCapExceeded(fmt::format("dense oracle limited to {} qubits, got {}", kMaxQubits, n));
}

std::uint64_t bit_mask(Index n, int q) { return std::uint64_t{1} << (n - static_cast<Index>(q)); }

}  // namespace

DenseState basis_state(Index n, std::uint64_t x) {
  check_size(n);
  DenseState s{std::vector<Complex>(std::size_t{1} << n), n};
  if (x >= s.amplitudes.size()) throw ShapeError("basis index out of range");
  s.amplitudes[x] = 1.0;
  return s;
}

DenseState from_amplitudes(std::vector<Complex> amplitudes) {
  Index n = 0;
  while ((std::size_t{1} << n) < amplitudes.size()) ++n;
  if ((std::size_t{1} << n) != amplitudes.size()) throw ShapeError("amplitude count is not a power of two");
  check_size(n);
  return {std::move(amplitudes), n};
}

DenseState named_state(NamedState state, Index n) {
  check_size(n);
  if (n < 2) throw ShapeError("named states need at least two qubits");
  DenseState s{std::vector<Complex>(std::size_t{1} << n), n};
  const double h = 1.0 / std::sqrt(2.0);
  const std::uint64_t ones = (std::uint64_t{1} << n) - 1;
  switch (state) {
    case NamedState::ghz:
      s.amplitudes[0] = h;
      s.amplitudes[ones] = h;
      break;
    case NamedState::w:
      for (Index i = 0; i < n; ++i) s.amplitudes[std::uint64_t{1} << i] = 1.0 / std::sqrt(static_cast<double>(n));
      break;
    default: {
      if (n != 2) throw ShapeError("Bell states are defined on 2 qubits");
      const bool flip = state == NamedState::bell_psi_plus || state == NamedState::bell_psi_minus;
      const double sign = state == NamedState::bell_phi_minus || state == NamedState::bell_psi_minus ? -1.0 : 1.0;
      s.amplitudes[flip ? 1 : 0] = h;
      s.amplitudes[flip ? 2 : 3] = sign * h;
    }
  }
  return s;
}

DenseState apply_gate_dense(const DenseState& state, const GatePlacement& g) {
  check_size(state.n);
  validate_placement(g, state.n);
  std::uint64_t cmask = 0;
  for (int c : g.controls) cmask |= bit_mask(state.n, c);
  const std::uint64_t tmask = bit_mask(state.n, g.target);
  DenseState out = state;
  const std::uint64_t size = state.amplitudes.size();
  for (std::uint64_t i = 0; i < size; ++i) {
    if ((i & tmask) || (i & cmask) != cmask) continue;
    const std::uint64_t j = i | tmask;
    const Complex a0 = state.amplitudes[i];
    const Complex a1 = state.amplitudes[j];
    out.amplitudes[i] = g.u(0, 0) * a0 + g.u(0, 1) * a1;
    out.amplitudes[j] = g.u(1, 0) * a0 + g.u(1, 1) * a1;
  }
  return out;
}

DenseState apply_gates_dense(DenseState state, const std::vector<GatePlacement>& gates) {
  for (const GatePlacement& g : gates) state = apply_gate_dense(state, g);
  return state;
}

Matrix gates_unitary(Index n, const std::vector<GatePlacement>& gates) {
  if (n > 10) throw DenseCapExceeded("dense unitaries limited to 10 qubits");
  const std::uint64_t dim = std::uint64_t{1} << n;
  Matrix u(dim, dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    DenseState s = apply_gates_dense(basis_state(n, x), gates);
    for (std::uint64_t y = 0; y < dim; ++y) u(y, x) = s.amplitudes[y];
  }
  return u;
}

Matrix dft_matrix(Index n) {
  if (n > 12) throw DenseCapExceeded("dense DFT limited to 12 qubits");
  const std::uint64_t dim = std::uint64_t{1} << n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  Matrix f(dim, dim);
  for (std::uint64_t y = 0; y < dim; ++y) {
    for (std::uint64_t x = 0; x < dim; ++x) {
      // Reduce the exponent first so the angle stays exact.
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((x * y) % dim) / static_cast<double>(dim);
      f(y, x) = std::polar(scale, angle);
    }
  }
  return f;
}

std::uint64_t reverse_bits(std::uint64_t x, Index n) {
  std::uint64_t r = 0;
  for (Index i = 0; i < n; ++i) {
    r = (r << 1) | (x & 1);
    x >>= 1;
  }
  return r;
}

std::pair<int, int> full_adder_truth(int c_in, int a, int b) {
  const int total = c_in + a + b;
  return {total & 1, total >> 1};
}

std::uint64_t mod_exp(std::uint64_t a, std::uint64_t x, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  std::uint64_t result = 1 % m;
  std::uint64_t base = a % m;
  while (x > 0) {
    if (x & 1) result = result * base % m;
    base = base * base % m;
    x >>= 1;
  }
  return result;
}

std::vector<double> born_distribution_dense(const DenseState& state) {
  std::vector<double> p(state.amplitudes.size());
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::norm(state.amplitudes[i]);
    z += p[i];
  }
  if (!(z > 0.0)) throw NumericalError("zero state has no Born distribution");
  for (double& v : p) v /= z;
  return p;
}

std::vector<double> marginal(const std::vector<double>& p, Index n, const std::vector<int>& measured) {
  std::vector<double> out(std::size_t{1} << measured.size(), 0.0);
  for (std::uint64_t x = 0; x < p.size(); ++x) {
    std::uint64_t key = 0;
    for (int q : measured) key = (key << 1) | ((x & bit_mask(n, q)) ? 1 : 0);
    out[key] += p[x];
  }
  return out;
}

std::vector<double> shor_input_distribution(std::uint64_t a, std::uint64_t m, Index t) {
  const Index in_bits = 2 * t;
  const std::uint64_t dim = std::uint64_t{1} << in_bits;
  const Matrix inverse = dft_matrix(in_bits).adjoint();
  std::vector<double> p(dim, 0.0);
  // The target register is left in |f>, so the input-register branches for
  // distinct f are orthogonal and add in probability.
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::uint64_t f = 0; f < m; ++f) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    bool any = false;
    for (std::uint64_t x = 0; x < dim; ++x) {
      if (mod_exp(a, x, m) == f) {
        v(x) = amp;
        any = true;
      }
    }
    if (!any) continue;
    Eigen::VectorXcd w = inverse * v;
    for (std::uint64_t y = 0; y < dim; ++y) p[y] += std::norm(w(y));
  }
  return p;
}

}  // namespace mpoq::dense
