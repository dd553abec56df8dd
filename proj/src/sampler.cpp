#include "mpoq/sampler.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <unordered_map>

#include <fmt/format.h>

namespace mpoq {

namespace {

constexpr double kNegativeTolerance = 1e-12;
constexpr double kMassTolerance = 1e-8;

void require_qubits(const MPS& t) {
  for (Index d : t.dims()) {
    if (d != 2) throw ShapeError("sampling supports qubit registers only (all d_i = 2)");
  }
}

std::vector<int> resolve_measured(const std::vector<int>& measured, Index n) {
  if (measured.empty()) {
    std::vector<int> all(n);
    for (Index i = 0; i < n; ++i) all[i] = static_cast<int>(i + 1);
    return all;
  }
  for (Index k = 0; k < measured.size(); ++k) {
    if (measured[k] < 1 || static_cast<Index>(measured[k]) > n) {
      throw ShapeError(fmt::format("measured position {} outside 1..{}", measured[k], n));
    }
    if (k > 0 && measured[k] <= measured[k - 1]) throw ShapeError("measured positions must be strictly ascending");
  }
  return measured;
}

// M <- sum_x A_x^dagger M A_x
Matrix trace_out(const Core& a, const Matrix& m) {
  Matrix out = Matrix::Zero(a.right(), a.right());
  for (Index x = 0; x < a.phys(); ++x) {
    Matrix s = a.slice(x);
    out.noalias() += s.adjoint() * m * s;
  }
  return out;
}

Matrix fix_site(const Core& a, const Matrix& m, Index x) {
  Matrix s = a.slice(x);
  return s.adjoint() * m * s;
}

// Real coordinates of an r x r Hermitian matrix: the diagonal, then Re and Im
// of each upper-triangle entry.
std::vector<double> to_coords(const Matrix& m) {
  const Index r = m.rows();
  std::vector<double> c;
  c.reserve(r * r);
  for (Index a = 0; a < r; ++a) c.push_back(m(a, a).real());
  for (Index a = 0; a < r; ++a) {
    for (Index b = a + 1; b < r; ++b) {
      c.push_back(m(a, b).real());
      c.push_back(m(a, b).imag());
    }
  }
  return c;
}

// Hermitian basis element whose coordinate vector is e_j.
Matrix coord_basis(Index j, Index r) {
  Matrix e = Matrix::Zero(r, r);
  if (j < r) {
    e(j, j) = 1.0;
    return e;
  }
  Index idx = r;
  for (Index a = 0; a < r; ++a) {
    for (Index b = a + 1; b < r; ++b) {
      if (idx == j) {
        e(a, b) = 1.0;
        e(b, a) = 1.0;
        return e;
      }
      if (idx + 1 == j) {
        e(a, b) = Complex(0.0, 1.0);
        e(b, a) = Complex(0.0, -1.0);
        return e;
      }
      idx += 2;
    }
  }
  return e;
}

// p(M) = Re tr(M Q) as a dot product with the coordinates of M.
std::vector<double> trace_functional(const Matrix& q) {
  const Index r = q.rows();
  std::vector<double> w;
  w.reserve(r * r);
  for (Index a = 0; a < r; ++a) w.push_back(q(a, a).real());
  for (Index a = 0; a < r; ++a) {
    for (Index b = a + 1; b < r; ++b) {
      w.push_back(2.0 * q(a, b).real());
      w.push_back(2.0 * q(a, b).imag());
    }
  }
  return w;
}

// One measured qubit plus the unmeasured run after it, as real linear maps.
struct Step {
  Index in = 0;
  Index out = 0;
  std::array<std::vector<double>, 2> weight;
  std::array<std::vector<double>, 2> update;  // out x in, row-major
};

std::vector<Step> build_steps(const MPS& t, const std::vector<int>& measured) {
  std::vector<Step> steps;
  for (Index k = 0; k < measured.size(); ++k) {
    const Index site = measured[k] - 1;
    const Core& a = t.core(site);
    const bool last = k + 1 == measured.size();
    const Index next = last ? t.size() : static_cast<Index>(measured[k + 1] - 1);
    Step st;
    st.in = a.left() * a.left();
    for (Index x = 0; x < 2; ++x) {
      Matrix s = a.slice(x);
      st.weight[x] = trace_functional(s * s.adjoint());
      if (last) continue;
      std::vector<Matrix> images;
      for (Index j = 0; j < st.in; ++j) {
        Matrix m = fix_site(a, coord_basis(j, a.left()), x);
        for (Index u = site + 1; u < next; ++u) m = trace_out(t.core(u), m);
        images.push_back(std::move(m));
      }
      st.out = images.front().rows() * images.front().rows();
      st.update[x].assign(st.out * st.in, 0.0);
      for (Index j = 0; j < st.in; ++j) {
        auto c = to_coords(images[j]);
        for (Index i = 0; i < st.out; ++i) st.update[x][i * st.in + j] = c[i];
      }
    }
    steps.push_back(std::move(st));
  }
  return steps;
}

double dot(const std::vector<double>& w, const double* v) {
  double acc = 0.0;
  for (Index i = 0; i < w.size(); ++i) acc += w[i] * v[i];
  return acc;
}

// Clamps small negatives; returns the total mass.
double checked_pair(double& p0, double& p1) {
  const double scale = std::max({std::abs(p0), std::abs(p1), 1.0});
  double lost = 0.0;
  for (double* p : {&p0, &p1}) {
    if (*p < 0.0) {
      if (*p < -kNegativeTolerance * scale) {
        throw NumericalError(fmt::format("conditional probability {:.3e} is negative beyond tolerance", *p));
      }
      lost -= *p;
      *p = 0.0;
    }
  }
  const double total = p0 + p1;
  if (lost > kMassTolerance || std::abs(total - 1.0) > kMassTolerance) {
    throw NumericalError(fmt::format("conditional distribution lost mass (total {:.12g})", total));
  }
  return total;
}

}  // namespace

bool dense_marginal_allowed(Index measured_count) {
  return measured_count < 63 && (Index{1} << measured_count) <= default_state_dense_cap();
}

MPS prepare_for_sampling(const MPS& t) {
  if (t.orthogonality() == Orthogonality::right) return mps_normalize(t);
  return mps_normalize(orthonormalize_right(t));
}

std::vector<double> probability_marginal_dense(const MPS& t, const std::vector<int>& measured_in) {
  require_qubits(t);
  const std::vector<int> measured = resolve_measured(measured_in, t.size());
  if (!dense_marginal_allowed(measured.size())) {
    throw DenseCapExceeded(fmt::format("exact marginal over {} qubits exceeds the dense cap", measured.size()));
  }
  const MPS s = prepare_for_sampling(t);
  std::vector<double> out(std::size_t{1} << measured.size(), 0.0);
  const Index last_site = measured.back();  // sites after it contribute identity
  std::vector<bool> is_measured(t.size(), false);
  for (int q : measured) is_measured[q - 1] = true;

  std::function<void(Index, const Matrix&, std::uint64_t)> visit = [&](Index site, const Matrix& m,
                                                                         std::uint64_t key) {
    if (site == last_site) {
      out[key] = std::max(0.0, m.trace().real());
      return;
    }
    const Core& a = s.core(site);
    if (!is_measured[site]) {
      visit(site + 1, trace_out(a, m), key);
      return;
    }
    for (Index x = 0; x < 2; ++x) visit(site + 1, fix_site(a, m, x), (key << 1) | x);
  };
  visit(0, Matrix::Ones(1, 1), 0);
  return out;
}

namespace {

MPS project(const MPS& t, const std::vector<std::pair<int, int>>& assignment) {
  std::vector<Core> cores = t.cores();
  std::vector<bool> seen(t.size(), false);
  for (auto [pos, bit] : assignment) {
    if (pos < 1 || static_cast<Index>(pos) > t.size()) {
      throw ShapeError(fmt::format("postselected position {} outside 1..{}", pos, t.size()));
    }
    if (bit != 0 && bit != 1) throw ShapeError(fmt::format("postselected value {} is not a bit", bit));
    if (seen[pos - 1]) throw ShapeError(fmt::format("position {} postselected twice", pos));
    seen[pos - 1] = true;
    Core& c = cores[pos - 1];
    for (Index l = 0; l < c.right(); ++l) {
      for (Index k = 0; k < c.left(); ++k) c(k, 1 - bit, l) = 0.0;
    }
  }
  return MPS(std::move(cores));
}

}  // namespace

double assignment_probability(const MPS& t, const std::vector<std::pair<int, int>>& assignment) {
  require_qubits(t);
  const double total = mps_norm(t);
  if (!(total > 0.0)) throw NumericalError("zero state has no Born distribution");
  const double kept = mps_norm(project(t, assignment));
  return (kept * kept) / (total * total);
}

MPS postselect(const MPS& t, const std::vector<std::pair<int, int>>& assignment) {
  const double p = assignment_probability(t, assignment);
  if (p <= kZeroProbability) {
    throw ZeroProbabilityError(fmt::format("postselected outcome has probability {:.3e}", p));
  }
  return prepare_for_sampling(project(t, assignment));
}

SampleReport sample(const MPS& t, const MeasurementPlan& plan) {
  const auto start = std::chrono::steady_clock::now();
  require_qubits(t);
  const std::vector<int> measured = resolve_measured(plan.measured, t.size());
  for (auto [pos, bit] : plan.postselect) {
    (void)bit;
    if (std::find(measured.begin(), measured.end(), pos) != measured.end()) {
      throw ShapeError(fmt::format("position {} is both measured and postselected", pos));
    }
  }
  const MPS s = plan.postselect.empty() ? prepare_for_sampling(t) : postselect(t, plan.postselect);

  SampleReport report;
  report.measured = measured;
  report.n = t.size();
  report.samples = plan.samples;
  report.seed = plan.seed;
  const Index m = measured.size();

  if (plan.exact_probabilities && dense_marginal_allowed(m)) {
    const auto p = probability_marginal_dense(s, measured);
    for (std::uint64_t key = 0; key < p.size(); ++key) {
      if (p[key] > kZeroProbability) report.probabilities.emplace(render_bits(key, m), p[key]);
    }
  }

  if (plan.samples > 0) {
    // Shared prefix: everything before the first measured qubit.
    Matrix prefix = Matrix::Ones(1, 1);
    for (Index site = 0; site + 1 < static_cast<Index>(measured.front()); ++site) {
      prefix = trace_out(s.core(site), prefix);
    }
    const std::vector<double> v0 = to_coords(prefix);
    const std::vector<Step> steps = build_steps(s, measured);
    Index width = v0.size();
    for (const Step& st : steps) width = std::max({width, st.in, st.out});

    std::vector<double> v(width);
    std::vector<double> w(width);
    std::string bits(m, '0');
    std::unordered_map<std::string, std::uint64_t> counts;
    for (Index i = 0; i < plan.samples; ++i) {
      SplitMix64 rng = SplitMix64::substream(plan.seed, i);
      std::copy(v0.begin(), v0.end(), v.begin());
      for (Index k = 0; k < m; ++k) {
        const Step& st = steps[k];
        double p0 = dot(st.weight[0], v.data());
        double p1 = dot(st.weight[1], v.data());
        const double total = checked_pair(p0, p1);
        const Index x = rng.uniform() * total < p0 ? 0 : 1;
        bits[k] = x ? '1' : '0';
        if (k + 1 == m) break;
        const double inv = 1.0 / (x ? p1 : p0);
        const double* op = st.update[x].data();
        for (Index r = 0; r < st.out; ++r) {
          double acc = 0.0;
          const double* row = op + r * st.in;
          for (Index c = 0; c < st.in; ++c) acc += row[c] * v[c];
          w[r] = acc * inv;
        }
        std::swap(v, w);
      }
      ++counts[bits];
    }
    report.counts = std::map<std::string, std::uint64_t>(counts.begin(), counts.end());
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Matrix left_environment(const MPS& t, const std::vector<int>& fixed, Index k) {
  if (k > t.size() || fixed.size() < k) throw ShapeError("left environment range exceeds the state");
  Matrix m = Matrix::Ones(1, 1);
  for (Index site = 0; site < k; ++site) {
    m = fixed[site] < 0 ? trace_out(t.core(site), m) : fix_site(t.core(site), m, fixed[site]);
  }
  return m;
}

Matrix right_environment(const MPS& t, Index k) {
  if (k > t.size()) throw ShapeError("right environment range exceeds the state");
  Matrix e = Matrix::Ones(1, 1);
  for (Index site = t.size(); site > k; --site) {
    const Core& a = t.core(site - 1);
    Matrix next = Matrix::Zero(a.left(), a.left());
    for (Index x = 0; x < a.phys(); ++x) {
      Matrix s = a.slice(x);
      next.noalias() += s * e * s.adjoint();
    }
    e = std::move(next);
  }
  return e;
}

std::string render_bits(std::uint64_t value, Index width) {
  std::string s(width, '0');
  for (Index i = 0; i < width; ++i) {
    if ((value >> (width - 1 - i)) & 1U) s[i] = '1';
  }
  return s;
}

SplitMix64 SplitMix64::substream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 a(seed);
  SplitMix64 b(a.next() + index * 0xd1b54a32d192ed03ULL);
  return SplitMix64(b.next());
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace mpoq
