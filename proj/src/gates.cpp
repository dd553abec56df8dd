#include "mpoq/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace mpoq {

namespace gate {

Matrix2 identity() { return Matrix2::Identity(); }

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix2 pauli_y() {
  Matrix2 m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

Matrix2 pauli_z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix2 hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  Matrix2 m;
  m << h, h, h, -h;
  return m;
}

Matrix2 phase(double phi) {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, std::polar(1.0, phi);
  return m;
}

Matrix2 rk(int k) { return phase(2.0 * std::numbers::pi / std::ldexp(1.0, k)); }

Matrix2 proj0() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, 0.0;
  return m;
}

Matrix2 proj1() {
  Matrix2 m;
  m << 0.0, 0.0, 0.0, 1.0;
  return m;
}

}  // namespace gate

GatePlacement place_h(int target) { return {gate::hadamard(), target, {}, "h"}; }
GatePlacement place_x(int target) { return {gate::pauli_x(), target, {}, "x"}; }
GatePlacement place_phase(double phi, int target) {
  return {gate::phase(phi), target, {}, fmt::format("phase({:.6g})", phi)};
}
GatePlacement place_rk(int k, int target) { return {gate::rk(k), target, {}, fmt::format("r{}", k)}; }
GatePlacement place_cnot(int control, int target) { return {gate::pauli_x(), target, {control}, "cnot"}; }
GatePlacement place_cphase(int k, int control, int target) {
  return {gate::rk(k), target, {control}, fmt::format("cphase{}", k)};
}
GatePlacement place_ccnot(int control1, int control2, int target) {
  return {gate::pauli_x(), target, {control1, control2}, "ccnot"};
}

void validate_placement(const GatePlacement& g, Index n) {
  std::vector<int> all = g.controls;
  all.push_back(g.target);
  for (int q : all) {
    if (q < 1 || static_cast<Index>(q) > n) {
      throw ShapeError(fmt::format("gate position {} outside 1..{}", q, n));
    }
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw ShapeError("gate control and target positions must be distinct");
  }
}

namespace {

Core site_core(const Matrix2& m) { return operator_core({{Matrix(m)}}); }

}  // namespace

MPO single_qubit_mpo(Index n, const Matrix2& u, int target) {
  return controlled_mpo(n, u, {}, target);
}

MPO controlled_mpo(Index n, const Matrix2& u, const std::vector<int>& controls, int target) {
  validate_placement({u, target, controls, ""}, n);
  if (controls.empty()) {
    std::vector<Core> cores;
    for (Index i = 1; i <= n; ++i) cores.push_back(site_core(i == static_cast<Index>(target) ? u : gate::identity()));
    return MPO(std::move(cores));
  }
  int lo = target;
  int hi = target;
  for (int c : controls) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  const Matrix id = gate::identity();
  auto factor = [&](int q) -> Matrix {
    if (q == target) return u - Matrix2::Identity();
    if (std::find(controls.begin(), controls.end(), q) != controls.end()) return gate::proj1();
    return id;
  };
  std::vector<Core> cores;
  for (int q = 1; q <= static_cast<int>(n); ++q) {
    if (q < lo || q > hi) {
      cores.push_back(site_core(gate::identity()));
    } else if (q == lo) {
      cores.push_back(operator_core({{id, factor(q)}}));
    } else if (q == hi) {
      cores.push_back(operator_core({{id}, {factor(q)}}));
    } else {
      cores.push_back(operator_core({{id, Matrix()}, {Matrix(), factor(q)}}));
    }
  }
  return MPO(std::move(cores));
}

MPO placement_mpo(Index n, const GatePlacement& g) { return controlled_mpo(n, g.u, g.controls, g.target); }

MPO hadamard_layer(Index n) {
  std::vector<Core> cores(n, site_core(gate::hadamard()));
  return MPO(std::move(cores));
}

MPO hadamard_layer(Index n, const std::vector<int>& positions) {
  std::vector<bool> on(n, false);
  for (int q : positions) {
    if (q < 1 || static_cast<Index>(q) > n) throw ShapeError(fmt::format("position {} outside 1..{}", q, n));
    on[q - 1] = true;
  }
  std::vector<Core> cores;
  for (Index i = 0; i < n; ++i) cores.push_back(site_core(on[i] ? gate::hadamard() : gate::identity()));
  return MPO(std::move(cores));
}

MPO placements_mpo(Index n, const std::vector<GatePlacement>& gates, const TruncationPolicy& policy) {
  MPO acc = mpo_identity(n);
  for (const GatePlacement& g : gates) acc = compress(mpo_multiply(placement_mpo(n, g), acc), policy);
  return acc;
}

}  // namespace mpoq
