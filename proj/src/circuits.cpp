#include "mpoq/circuits.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace mpoq {

namespace {

const Matrix kI = gate::identity();
const Matrix kX = gate::pauli_x();
const Matrix kC0 = gate::proj0();
const Matrix kC1 = gate::proj1();
const Matrix kZero;  // empty block = zero

Core site(const Matrix& a) { return operator_core({{a}}); }

// QFA cores G1..G4.
Core qfa_core1() { return operator_core({{kX * kC0, kI, kX * kC1}}); }
Core qfa_core2() {
  return operator_core({{kC0, kC1, kZero, kZero}, {kZero, kC0, kC1, kZero}, {kZero, kZero, kC0, kC1}});
}
Core qfa_core3() { return operator_core({{kC1, kZero}, {kC0, kZero}, {kZero, kC1}, {kZero, kC0}}); }
Core qfa_core4() { return operator_core({{kI}, {kX}}); }
// Carry coupling between adders: core 1 of the next adder times core 4 of the previous.
Core qfa_coupling() { return operator_core({{kX * kC0, kI, kX * kC1}, {kC1, kX, kC0}}); }

void check_group(Index i, Index n) {
  if (n == 0 || i < 1 || i > n) throw ShapeError(fmt::format("gate group {} outside 1..{}", i, n));
}

// Shared shape of the QFT groups: first core [a0, a1], diag(I, R) blocks in
// between, [[I], [R]] last. `conj` conjugates every phase.
MPO qft_like_group(Index i, Index n, const Matrix& a0, const Matrix& a1, bool conj) {
  check_group(i, n);
  auto phase = [&](Index k) -> Matrix {
    Matrix r = gate::rk(static_cast<int>(k));
    return conj ? Matrix(r.conjugate()) : r;
  };
  std::vector<Core> cores;
  for (Index j = 1; j < i; ++j) cores.push_back(site(kI));
  if (i == n) {
    cores.push_back(site(a0 + a1));
    return MPO(std::move(cores));
  }
  cores.push_back(operator_core({{a0, a1}}));
  for (Index j = i + 1; j < n; ++j) cores.push_back(operator_core({{kI, kZero}, {kZero, phase(j - i + 1)}}));
  cores.push_back(operator_core({{kI}, {phase(n - i + 1)}}));
  return MPO(std::move(cores));
}

GatePlacement conj_cphase(int k, int control, int target) {
  GatePlacement g = place_cphase(k, control, target);
  g.u = g.u.conjugate().eval();
  g.label = fmt::format("cphase{}_dg", k);
  return g;
}

}  // namespace

// ---- QFA --------------------------------------------------------------------

MPO qfa_mpo() { return MPO({qfa_core1(), qfa_core2(), qfa_core3(), qfa_core4()}); }

std::vector<GatePlacement> qfa_placements(int offset) {
  const int o = offset;
  return {place_ccnot(o + 2, o + 3, o + 4), place_cnot(o + 2, o + 3), place_ccnot(o + 1, o + 3, o + 4),
          place_cnot(o + 3, o + 1), place_cnot(o + 2, o + 3)};
}

MPO qfa_network_mpo(Index count) {
  if (count < 1) throw ShapeError("a full-adder network needs at least one adder");
  std::vector<Core> cores{qfa_core1()};
  for (Index k = 1; k <= count; ++k) {
    cores.push_back(qfa_core2());
    cores.push_back(qfa_core3());
    cores.push_back(k == count ? qfa_core4() : qfa_coupling());
  }
  return MPO(std::move(cores));
}

std::vector<GatePlacement> qfa_network_placements(Index count) {
  std::vector<GatePlacement> gates;
  for (Index k = 0; k < count; ++k) {
    auto adder = qfa_placements(static_cast<int>(3 * k));
    gates.insert(gates.end(), adder.begin(), adder.end());
  }
  return gates;
}

std::vector<int> qfa_network_outputs(Index count) {
  std::vector<int> out;
  for (Index k = 0; k < count; ++k) out.push_back(static_cast<int>(3 * k + 1));
  out.push_back(static_cast<int>(3 * count + 1));
  return out;
}

std::vector<int> qfa_network_inputs(Index count) {
  std::vector<int> in;
  for (Index k = 0; k < count; ++k) {
    in.push_back(static_cast<int>(3 * k + 2));
    in.push_back(static_cast<int>(3 * k + 3));
  }
  return in;
}

// ---- Simon ------------------------------------------------------------------

MPO simon_circuit_mpo() {
  const Matrix h = gate::hadamard();
  const Matrix a = h * kC0 * h;
  const Matrix b = h * kC1 * h;
  return MPO({
      operator_core({{a, b}}),
      operator_core({{kI, kZero}, {kZero, kI}}),
      operator_core({{a, b, kZero, kZero}, {kZero, kZero, a, b}}),
      operator_core({{kI, kZero}, {kX, kZero}, {kZero, kI}, {kZero, kX}}),
      operator_core({{a, b}, {b, a}}),
      operator_core({{kI}, {kX}}),
      operator_core({{a, b}}),
      operator_core({{kI}, {kX}}),
  });
}

std::vector<std::vector<GatePlacement>> simon_group_placements() {
  std::vector<GatePlacement> hadamards{place_h(1), place_h(3), place_h(5), place_h(7)};
  std::vector<GatePlacement> copy{place_cnot(1, 2), place_cnot(3, 4), place_cnot(5, 6), place_cnot(7, 8)};
  // x -> x xor b whenever the first register bit is set, b = 1010.
  std::vector<GatePlacement> shift{place_cnot(1, 2), place_cnot(1, 6)};
  return {hadamards, copy, shift, hadamards};
}

RegisterLayout simon_layout() { return {{"register1", {1, 3, 5, 7}}, {"register2", {2, 4, 6, 8}}}; }

std::vector<std::uint64_t> solve_gf2_nullspace(const std::vector<std::uint64_t>& rows, Index m) {
  if (m == 0 || m > 24) throw ShapeError("GF(2) solver supports 1..24 unknowns");
  // Column j corresponds to bit m-1-j.
  auto bit = [m](std::uint64_t v, Index j) { return (v >> (m - 1 - j)) & 1U; };
  std::vector<std::uint64_t> a = rows;
  std::vector<int> pivot_col;
  Index r = 0;
  for (Index j = 0; j < m && r < a.size(); ++j) {
    Index p = r;
    while (p < a.size() && !bit(a[p], j)) ++p;
    if (p == a.size()) continue;
    std::swap(a[r], a[p]);
    for (Index q = 0; q < a.size(); ++q) {
      if (q != r && bit(a[q], j)) a[q] ^= a[r];
    }
    pivot_col.push_back(static_cast<int>(j));
    ++r;
  }
  std::vector<Index> free_cols;
  for (Index j = 0; j < m; ++j) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(j)) == pivot_col.end()) free_cols.push_back(j);
  }
  std::vector<std::uint64_t> solutions;
  const std::uint64_t combos = std::uint64_t{1} << free_cols.size();
  for (std::uint64_t c = 1; c < combos; ++c) {
    std::uint64_t x = 0;
    for (Index f = 0; f < free_cols.size(); ++f) {
      if ((c >> f) & 1U) x |= std::uint64_t{1} << (m - 1 - free_cols[f]);
    }
    // Pivot variables follow from the reduced rows.
    for (Index q = 0; q < pivot_col.size(); ++q) {
      const std::uint64_t row = a[q] & ~(std::uint64_t{1} << (m - 1 - pivot_col[q]));
      if (__builtin_popcountll(row & x) & 1) x |= std::uint64_t{1} << (m - 1 - pivot_col[q]);
    }
    solutions.push_back(x);
  }
  std::sort(solutions.begin(), solutions.end());
  return solutions;
}

// ---- QFT --------------------------------------------------------------------

MPO qft_group_mpo(Index i, Index n) {
  const Matrix h = gate::hadamard();
  return qft_like_group(i, n, kC0 * h, kC1 * h, false);
}

MPO inverse_qft_group_mpo(Index i, Index n) {
  const Matrix h = gate::hadamard();
  return qft_like_group(i, n, h * kC0, h * kC1, true);
}

MPO conj_qft_group_mpo(Index i, Index n) {
  const Matrix h = gate::hadamard();
  return qft_like_group(i, n, kC0 * h, kC1 * h, true);
}

std::vector<GatePlacement> qft_group_placements(Index i, Index n) {
  check_group(i, n);
  std::vector<GatePlacement> g{place_h(static_cast<int>(i))};
  for (Index j = i + 1; j <= n; ++j) {
    g.push_back(place_cphase(static_cast<int>(j - i + 1), static_cast<int>(j), static_cast<int>(i)));
  }
  return g;
}

std::vector<GatePlacement> inverse_qft_group_placements(Index i, Index n) {
  check_group(i, n);
  std::vector<GatePlacement> g;
  for (Index j = n; j > i; --j) {
    g.push_back(conj_cphase(static_cast<int>(j - i + 1), static_cast<int>(j), static_cast<int>(i)));
  }
  g.push_back(place_h(static_cast<int>(i)));
  return g;
}

std::vector<GatePlacement> conj_qft_group_placements(Index i, Index n) {
  check_group(i, n);
  std::vector<GatePlacement> g{place_h(static_cast<int>(i))};
  for (Index j = i + 1; j <= n; ++j) {
    g.push_back(conj_cphase(static_cast<int>(j - i + 1), static_cast<int>(j), static_cast<int>(i)));
  }
  return g;
}

GateGroupSequence qft_sequence(Index n) {
  GateGroupSequence s;
  s.label = fmt::format("qft({})", n);
  for (Index i = 1; i <= n; ++i) {
    s.groups.push_back(qft_group_mpo(i, n));
    s.group_labels.push_back(fmt::format("G{}", i));
  }
  return s;
}

GateGroupSequence inverse_qft_sequence(Index n) {
  GateGroupSequence s;
  s.label = fmt::format("inverse-qft({})", n);
  for (Index i = n; i >= 1; --i) {
    s.groups.push_back(inverse_qft_group_mpo(i, n));
    s.group_labels.push_back(fmt::format("G{}^-1", i));
  }
  return s;
}

GateGroupSequence conj_qft_sequence(Index n) {
  GateGroupSequence s;
  s.label = fmt::format("conj-qft({})", n);
  for (Index i = 1; i <= n; ++i) {
    s.groups.push_back(conj_qft_group_mpo(i, n));
    s.group_labels.push_back(fmt::format("G{}*", i));
  }
  return s;
}

// ---- execution ----------------------------------------------------------------

SequenceResult run_gate_sequence(const GateGroupSequence& seq, const MPS& initial, const TruncationPolicy& policy) {
  SequenceResult result{initial, {}, {}};
  if (seq.groups.empty()) return result;
  for (const MPO& g : seq.groups) {
    if (g.size() != initial.size()) {
      throw ShapeError(fmt::format("group acts on {} qubits, state has {}", g.size(), initial.size()));
    }
    MPS applied = mpo_apply(g, result.state);
    result.applied_max_ranks.push_back(applied.max_rank());
    result.state = compress(applied, policy);
    result.rank_trajectory.push_back(result.state.ranks());
  }
  result.state = mps_normalize(result.state);
  return result;
}

MPO embed(const MPO& g, Index offset, Index n) {
  if (offset + g.size() > n) {
    throw ShapeError(fmt::format("operator on {} qubits at offset {} does not fit {} qubits", g.size(), offset, n));
  }
  std::vector<Core> cores;
  for (Index i = 0; i < offset; ++i) cores.push_back(site(kI));
  cores.insert(cores.end(), g.cores().begin(), g.cores().end());
  for (Index i = offset + g.size(); i < n; ++i) cores.push_back(site(kI));
  return MPO(std::move(cores));
}

}  // namespace mpoq
