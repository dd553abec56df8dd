#include "mpoq/shor.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "mpoq/sampler.hpp"

namespace mpoq {

namespace {

constexpr Index kInputQubits = 8;
constexpr Index kTargetQubits = 4;

// One term: projectors on input qubits 7 and 8 (-1 = identity) and the f value
// written into the target register (qubit 9 most significant).
struct UfTerm {
  int c7;
  int c8;
  unsigned f;
};

const std::vector<UfTerm>& closed_form_terms(std::uint64_t a) {
  static const std::vector<UfTerm> t2{{0, 0, 1}, {0, 1, 2}, {1, 0, 4}, {1, 1, 8}};
  static const std::vector<UfTerm> t4{{-1, 0, 1}, {-1, 1, 4}};
  static const std::vector<UfTerm> t7{{0, 0, 1}, {0, 1, 7}, {1, 0, 4}, {1, 1, 13}};
  static const std::vector<UfTerm> t8{{0, 0, 1}, {0, 1, 8}, {1, 0, 4}, {1, 1, 2}};
  static const std::vector<UfTerm> t11{{-1, 0, 1}, {-1, 1, 11}};
  static const std::vector<UfTerm> t13{{0, 0, 1}, {0, 1, 13}, {1, 0, 4}, {1, 1, 7}};
  static const std::vector<UfTerm> t14{{-1, 0, 1}, {-1, 1, 14}};
  switch (a) {
    case 2: return t2;
    case 4: return t4;
    case 7: return t7;
    case 8: return t8;
    case 11: return t11;
    case 13: return t13;
    case 14: return t14;
    default: throw std::invalid_argument(fmt::format("no closed-form U_f for base {}", a));
  }
}

Matrix control(int c) {
  if (c < 0) return gate::identity();
  return c == 0 ? Matrix(gate::proj0()) : Matrix(gate::proj1());
}

// Rank-one product operator from per-qubit 2x2 factors.
MPO product_mpo(const std::vector<Matrix>& factors) {
  std::vector<Core> cores;
  for (const Matrix& f : factors) cores.push_back(operator_core({{f}}));
  return MPO(std::move(cores));
}

std::vector<Matrix> flips(unsigned f, Index t) {
  std::vector<Matrix> out;
  for (Index j = 0; j < t; ++j) {
    const bool set = (f >> (t - 1 - j)) & 1U;
    out.push_back(set ? Matrix(gate::pauli_x()) : Matrix(gate::identity()));
  }
  return out;
}

std::uint64_t reversed(std::uint64_t x, Index width) {
  std::uint64_t r = 0;
  for (Index i = 0; i < width; ++i, x >>= 1) r = (r << 1) | (x & 1U);
  return r;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  for (; e > 0; e >>= 1) {
    if (e & 1U) r = r * a % m;
    a = a * a % m;
  }
  return r;
}

}  // namespace

const std::vector<std::uint64_t>& shor_bases() {
  static const std::vector<std::uint64_t> bases{2, 4, 7, 8, 11, 13, 14};
  return bases;
}

MPO shor_uf_mpo(std::uint64_t a, std::uint64_t m) {
  if (m != 15) throw std::invalid_argument(fmt::format("closed-form U_f exists only for M = 15, got {}", m));
  std::optional<MPO> sum;
  for (const UfTerm& term : closed_form_terms(a)) {
    std::vector<Matrix> factors(kInputQubits - 2, gate::identity());
    factors.push_back(control(term.c7));
    factors.push_back(control(term.c8));
    auto target = flips(term.f, kTargetQubits);
    factors.insert(factors.end(), target.begin(), target.end());
    MPO t = product_mpo(factors);
    sum = sum ? mpo_add(*sum, t) : t;
  }
  return *sum;
}

MPO shor_uf_generic(std::uint64_t a, std::uint64_t m, Index t) {
  if (m < 2 || (std::uint64_t{1} << t) < m) throw std::invalid_argument("target register too small for the modulus");
  if (std::gcd(a, m) != 1) throw std::invalid_argument(fmt::format("base {} is not coprime to {}", a, m));
  const Index in = 2 * t;
  std::optional<MPO> sum;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << in); ++x) {
    std::vector<Matrix> factors;
    for (Index j = 0; j < in; ++j) factors.push_back(control(static_cast<int>((x >> (in - 1 - j)) & 1U)));
    auto target = flips(static_cast<unsigned>(pow_mod(a, x, m)), t);
    factors.insert(factors.end(), target.begin(), target.end());
    MPO term = product_mpo(factors);
    sum = sum ? compress(mpo_add(*sum, term)) : term;
  }
  return *sum;
}

GateGroupSequence shor_sequence(std::uint64_t a, std::uint64_t m) {
  const Index n = kInputQubits + kTargetQubits;
  GateGroupSequence s;
  s.label = fmt::format("shor(a={}, M={})", a, m);
  std::vector<int> input;
  for (Index i = 1; i <= kInputQubits; ++i) input.push_back(static_cast<int>(i));
  s.groups.push_back(hadamard_layer(n, input));
  s.group_labels.push_back("H");
  s.groups.push_back(shor_uf_mpo(a, m));
  s.group_labels.push_back("U_f");
  for (Index i = 1; i <= kInputQubits; ++i) {
    s.groups.push_back(embed(conj_qft_group_mpo(i, kInputQubits), 0, n));
    s.group_labels.push_back(fmt::format("G{}*", i));
  }
  s.layout = {{"input", input}, {"target", {9, 10, 11, 12}}};
  return s;
}

PeriodResult extract_period(std::uint64_t y, std::uint64_t n_squared, std::uint64_t a, std::uint64_t m) {
  if (n_squared == 0 || y >= n_squared) throw std::invalid_argument("measurement outside [0, N^2)");
  PeriodResult r;
  r.y = y;
  // Convergents h/k of y / N^2.
  std::uint64_t num = y;
  std::uint64_t den = n_squared;
  std::uint64_t k1 = 0;
  std::uint64_t k2 = 1;
  while (den != 0) {
    const std::uint64_t term = num / den;
    const std::uint64_t k = term * k1 + k2;
    if (k >= m) break;
    r.q = k;
    k2 = k1;
    k1 = k;
    const std::uint64_t rem = num - term * den;
    num = den;
    den = rem;
  }
  r.verified = pow_mod(a, r.q, m) == 1;
  if (y == 0 || r.q % 2 == 1) return r;
  const std::uint64_t h = pow_mod(a, r.q / 2, m);
  if (h == m - 1) return r;
  r.factors = std::make_pair(std::gcd(h + m - 1, m), std::gcd(h + 1, m));
  return r;
}

std::uint64_t shor_readout(const std::string& bits) {
  if (bits.size() != kInputQubits || bits.find_first_not_of("01") != std::string::npos) {
    throw std::invalid_argument(fmt::format("expected {} bits, got '{}'", kInputQubits, bits));
  }
  std::uint64_t y = 0;
  for (Index i = bits.size(); i > 0; --i) y = (y << 1) | (bits[i - 1] == '1' ? 1U : 0U);
  return y;
}

ShorRun shor_run(std::uint64_t a, std::uint64_t m, const TruncationPolicy& policy) {
  if (std::gcd(a, m) != 1) throw std::invalid_argument(fmt::format("base {} is not coprime to {}", a, m));
  const std::vector<int> zeros(kInputQubits + kTargetQubits, 0);
  ShorRun run{a, m, run_gate_sequence(shor_sequence(a, m), mps_from_basis_state(zeros), policy), 0, {}};
  run.rank = run.sequence.state.max_rank();
  std::vector<int> input;
  for (Index i = 1; i <= kInputQubits; ++i) input.push_back(static_cast<int>(i));
  const auto p = probability_marginal_dense(run.sequence.state, input);
  const std::uint64_t n_squared = std::uint64_t{1} << kInputQubits;
  for (std::uint64_t key = 0; key < p.size(); ++key) {
    if (p[key] <= kZeroProbability) continue;
    const std::uint64_t y = reversed(key, kInputQubits);
    run.outcomes.push_back({y, p[key], extract_period(y, n_squared, a, m)});
  }
  std::sort(run.outcomes.begin(), run.outcomes.end(),
            [](const ShorOutcome& l, const ShorOutcome& r) { return l.y < r.y; });
  return run;
}

}  // namespace mpoq
