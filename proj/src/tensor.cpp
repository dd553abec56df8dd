#include "mpoq/tensor.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <fmt/format.h>

namespace mpoq {

namespace {

void check_chain(const std::vector<Core>& cores) {
  if (cores.empty()) throw ShapeError("a tensor train needs at least one core");
  if (cores.front().left() != 1) {
    throw ShapeError(fmt::format("first core must have left rank 1, got {}", cores.front().left()));
  }
  if (cores.back().right() != 1) {
    throw ShapeError(fmt::format("last core must have right rank 1, got {}", cores.back().right()));
  }
  for (Index i = 0; i + 1 < cores.size(); ++i) {
    if (cores[i].right() != cores[i + 1].left()) {
      throw ShapeError(fmt::format("rank mismatch between cores {} and {}: {} vs {}", i, i + 1,
                                   cores[i].right(), cores[i + 1].left()));
    }
  }
}

std::vector<Index> chain_ranks(const std::vector<Core>& cores) {
  std::vector<Index> r;
  r.reserve(cores.size() + 1);
  r.push_back(cores.front().left());
  for (const Core& c : cores) r.push_back(c.right());
  return r;
}

Index kept_count(const Eigen::VectorXd& sigma, const TruncationPolicy& policy) {
  if (sigma.size() == 0) return 0;
  const double cutoff = policy.rel_threshold * sigma(0);
  Index keep = 0;
  for (Eigen::Index j = 0; j < sigma.size(); ++j) {
    if (sigma(j) > cutoff) ++keep;
  }
  keep = std::max<Index>(keep, 1);
  if (policy.max_rank) keep = std::min(keep, std::max<Index>(*policy.max_rank, 1));
  return std::min<Index>(keep, sigma.size());
}

// Core i <- core i * q (no consistency check).
void right_multiply(std::vector<Core>& cores, Index i, const Matrix& q) {
  Core& c = cores[i];
  if (static_cast<Index>(q.rows()) != c.right()) {
    throw ShapeError(fmt::format("transform has {} rows, core {} has right rank {}", q.rows(), i, c.right()));
  }
  Matrix m = c.left_unfolding() * q;
  c = Core::from_left_unfolding(m, c.left(), c.phys());
}

void left_multiply(std::vector<Core>& cores, Index i, const Matrix& q) {
  Core& c = cores[i];
  if (static_cast<Index>(q.cols()) != c.left()) {
    throw ShapeError(fmt::format("transform has {} columns, core {} has left rank {}", q.cols(), i, c.left()));
  }
  Matrix m = q * c.right_unfolding();
  c = Core::from_right_unfolding(m, c.phys(), c.right());
}

void check_site(Index i, Index n) {
  if (i >= n) throw ShapeError(fmt::format("core index {} out of range for {} cores", i, n));
}

void check_bond(Index i, Index n) {
  if (i + 1 >= n) throw ShapeError(fmt::format("bond index {} out of range for {} cores", i, n));
}

Matrix checked_inverse(const Matrix& q) {
  if (q.rows() != q.cols()) throw ShapeError("paired transform needs a square matrix");
  Eigen::FullPivLU<Matrix> lu(q);
  if (!lu.isInvertible()) throw ShapeError("paired transform matrix is singular");
  return lu.inverse();
}

void sweep_right(std::vector<Core>& cores, const TruncationPolicy& policy) {
  for (Index i = cores.size() - 1; i >= 1; --i) {
    const Core& c = cores[i];
    Eigen::BDCSVD<Matrix> svd(Matrix(c.right_unfolding()), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Index keep = kept_count(svd.singularValues(), policy);
    Matrix vh = svd.matrixV().leftCols(keep).adjoint();
    Matrix us = svd.matrixU().leftCols(keep) * svd.singularValues().head(keep).asDiagonal();
    cores[i] = Core::from_right_unfolding(vh, c.phys(), c.right());
    right_multiply(cores, i - 1, us);
  }
}

void sweep_left(std::vector<Core>& cores, const TruncationPolicy& policy) {
  for (Index i = 0; i + 1 < cores.size(); ++i) {
    const Core& c = cores[i];
    Eigen::BDCSVD<Matrix> svd(Matrix(c.left_unfolding()), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Index keep = kept_count(svd.singularValues(), policy);
    Matrix u = svd.matrixU().leftCols(keep);
    Matrix sv = svd.singularValues().head(keep).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    cores[i] = Core::from_left_unfolding(u, c.left(), c.phys());
    left_multiply(cores, i + 1, sv);
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return out;
}

}  // namespace

// ---- MPS / MPO ------------------------------------------------------------

MPS::MPS(std::vector<Core> cores) : cores_(std::move(cores)) { check_chain(cores_); }

std::vector<Index> MPS::dims() const {
  std::vector<Index> d;
  d.reserve(cores_.size());
  for (const Core& c : cores_) d.push_back(c.phys());
  return d;
}

std::vector<Index> MPS::ranks() const { return chain_ranks(cores_); }

Index MPS::max_rank() const {
  auto r = ranks();
  return *std::max_element(r.begin(), r.end());
}

MPS MPS::certified(Orthogonality orth, double tol) const {
  const Index n = cores_.size();
  if (orth == Orthogonality::right) {
    for (Index i = 1; i < n; ++i) {
      if (!is_right_orthonormal(cores_[i], tol)) {
        throw NumericalError(fmt::format("core {} is not right-orthonormal", i));
      }
    }
  } else if (orth == Orthogonality::left) {
    for (Index i = 0; i + 1 < n; ++i) {
      if (!is_left_orthonormal(cores_[i], tol)) {
        throw NumericalError(fmt::format("core {} is not left-orthonormal", i));
      }
    }
  }
  MPS out = *this;
  out.orth_ = orth;
  return out;
}

MPO::MPO(std::vector<Core> cores, std::vector<Index> dims) : cores_(std::move(cores)), dims_(std::move(dims)) {
  check_chain(cores_);
  if (dims_.size() != cores_.size()) {
    throw ShapeError(fmt::format("{} dims given for {} operator cores", dims_.size(), cores_.size()));
  }
  for (Index i = 0; i < cores_.size(); ++i) {
    if (cores_[i].phys() != dims_[i] * dims_[i]) {
      throw ShapeError(fmt::format("operator core {} has physical size {}, expected {}", i, cores_[i].phys(),
                                   dims_[i] * dims_[i]));
    }
  }
}

MPO::MPO(std::vector<Core> cores) : MPO(cores, std::vector<Index>(cores.size(), 2)) {}

std::vector<Index> MPO::ranks() const { return chain_ranks(cores_); }

Index MPO::max_rank() const {
  auto r = ranks();
  return *std::max_element(r.begin(), r.end());
}

// ---- construction -----------------------------------------------------------

MPS mps_from_basis_state(std::span<const int> bits) {
  std::vector<Core> cores;
  cores.reserve(bits.size());
  for (Index i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) {
      throw ShapeError(fmt::format("basis state entry {} is {}, expected 0 or 1", i + 1, bits[i]));
    }
    Core c(1, 2, 1);
    c(0, bits[i], 0) = 1.0;
    cores.push_back(std::move(c));
  }
  return MPS(std::move(cores)).certified(Orthogonality::right);
}

MPS mps_product_state(const std::vector<std::vector<Complex>>& sites) {
  std::vector<Core> cores;
  cores.reserve(sites.size());
  for (const auto& v : sites) {
    if (v.empty()) throw ShapeError("product state site vector is empty");
    cores.emplace_back(1, v.size(), 1, v);
  }
  return MPS(std::move(cores));
}

NamedState parse_named_state(std::string_view name) {
  const std::string s = lower(name);
  if (s == "ghz") return NamedState::ghz;
  if (s == "w") return NamedState::w;
  if (s == "bell_phi_plus") return NamedState::bell_phi_plus;
  if (s == "bell_phi_minus") return NamedState::bell_phi_minus;
  if (s == "bell_psi_plus") return NamedState::bell_psi_plus;
  if (s == "bell_psi_minus") return NamedState::bell_psi_minus;
  throw std::invalid_argument(fmt::format("unknown named state '{}'", name));
}

MPS mps_named_state(NamedState state, Index n) {
  if (n < 2) throw ShapeError("named states need at least two qubits");
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<Core> cores;
  switch (state) {
    case NamedState::ghz: {
      Core first(1, 2, 2);
      first(0, 0, 0) = h;
      first(0, 1, 1) = h;
      cores.push_back(first);
      for (Index i = 1; i + 1 < n; ++i) {
        Core mid(2, 2, 2);
        mid(0, 0, 0) = 1.0;
        mid(1, 1, 1) = 1.0;
        cores.push_back(mid);
      }
      Core last(2, 2, 1);
      last(0, 0, 0) = 1.0;
      last(1, 1, 0) = 1.0;
      cores.push_back(last);
      break;
    }
    case NamedState::w: {
      // Bond state 0: no excitation yet, 1: excitation placed.
      const double s = 1.0 / std::sqrt(static_cast<double>(n));
      Core first(1, 2, 2);
      first(0, 0, 0) = s;
      first(0, 1, 1) = s;
      cores.push_back(first);
      for (Index i = 1; i + 1 < n; ++i) {
        Core mid(2, 2, 2);
        mid(0, 0, 0) = 1.0;
        mid(0, 1, 1) = 1.0;
        mid(1, 0, 1) = 1.0;
        cores.push_back(mid);
      }
      Core last(2, 2, 1);
      last(0, 1, 0) = 1.0;
      last(1, 0, 0) = 1.0;
      cores.push_back(last);
      break;
    }
    default: {
      if (n != 2) throw ShapeError(fmt::format("Bell states are defined on 2 qubits, got {}", n));
      const bool flip = state == NamedState::bell_psi_plus || state == NamedState::bell_psi_minus;
      const bool minus = state == NamedState::bell_phi_minus || state == NamedState::bell_psi_minus;
      Core first(1, 2, 2);
      first(0, 0, 0) = h;
      first(0, 1, 1) = h;
      Core last(2, 2, 1);
      last(0, flip ? 1 : 0, 0) = 1.0;
      last(1, flip ? 0 : 1, 0) = minus ? -1.0 : 1.0;
      cores = {first, last};
      break;
    }
  }
  return MPS(std::move(cores));
}

MPS mps_named_state(std::string_view name, Index n) { return mps_named_state(parse_named_state(name), n); }

MPO mpo_identity(Index n, Index d) {
  if (n == 0) throw ShapeError("identity needs at least one site");
  std::vector<Core> cores;
  for (Index i = 0; i < n; ++i) {
    Core c(1, d * d, 1);
    for (Index x = 0; x < d; ++x) c(0, x + d * x, 0) = 1.0;
    cores.push_back(std::move(c));
  }
  return MPO(std::move(cores), std::vector<Index>(n, d));
}

// ---- access -----------------------------------------------------------------

Complex mps_element(const MPS& t, std::span<const Index> x) {
  if (x.size() != t.size()) {
    throw ShapeError(fmt::format("index has {} entries, state has {} sites", x.size(), t.size()));
  }
  Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Ones(1);
  for (Index i = 0; i < t.size(); ++i) {
    const Core& c = t.core(i);
    if (x[i] >= c.phys()) throw ShapeError(fmt::format("index {} out of range at site {}", x[i], i));
    Eigen::RowVectorXcd next = Eigen::RowVectorXcd::Zero(c.right());
    for (Index l = 0; l < c.right(); ++l) {
      Complex acc = 0.0;
      for (Index k = 0; k < c.left(); ++k) acc += v(k) * c(k, x[i], l);
      next(l) = acc;
    }
    v = std::move(next);
  }
  return v(0);
}

Index default_state_dense_cap() {
  if (const char* env = std::getenv("MPOQ_DENSE_CAP")) {
    char* end = nullptr;
    const unsigned long q = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && q < 40) return Index{1} << q;
  }
  return Index{1} << 20;
}

Index default_operator_dense_cap() { return Index{1} << 10; }

std::vector<Complex> mps_to_dense(const MPS& t, Index cap) {
  Index total = 1;
  for (Index d : t.dims()) {
    if (total > cap / d) throw DenseCapExceeded(fmt::format("dense state would exceed {} entries", cap));
    total *= d;
  }
  // rows: prefix index (x_1 most significant), columns: open bond.
  Matrix v = Matrix::Ones(1, 1);
  for (const Core& c : t.cores()) {
    const Index p = v.rows();
    Matrix next(p * c.phys(), c.right());
    for (Index x = 0; x < c.phys(); ++x) {
      Matrix part = v * c.slice(x);
      for (Index r = 0; r < p; ++r) next.row(r * c.phys() + x) = part.row(r);
    }
    v = std::move(next);
  }
  return std::vector<Complex>(v.data(), v.data() + v.size());
}

Matrix mpo_to_dense(const MPO& g, Index cap) {
  Index total = 1;
  for (Index d : g.dims()) {
    if (total > cap / d) throw DenseCapExceeded(fmt::format("dense operator would exceed dimension {}", cap));
    total *= d;
  }
  std::vector<Matrix> acc{Matrix::Ones(1, 1)};
  for (Index i = 0; i < g.size(); ++i) {
    const Core& c = g.core(i);
    const Index d = g.dims()[i];
    const Index p = acc.front().rows();
    std::vector<Matrix> next(c.right(), Matrix::Zero(p * d, p * d));
    for (Index k = 0; k < c.left(); ++k) {
      for (Index l = 0; l < c.right(); ++l) {
        for (Index y = 0; y < d; ++y) {
          for (Index x = 0; x < d; ++x) {
            const Complex w = c(k, x + d * y, l);
            if (w == Complex{0.0, 0.0}) continue;
            for (Index b = 0; b < p; ++b) {
              for (Index a = 0; a < p; ++a) next[l](a * d + x, b * d + y) += w * acc[k](a, b);
            }
          }
        }
      }
    }
    acc = std::move(next);
  }
  return acc.front();
}

// ---- algebra ----------------------------------------------------------------

MPS mpo_apply(const MPO& g, const MPS& t) {
  if (g.size() != t.size()) {
    throw ShapeError(fmt::format("operator has {} sites, state has {}", g.size(), t.size()));
  }
  std::vector<Core> cores;
  cores.reserve(t.size());
  for (Index i = 0; i < t.size(); ++i) {
    const Core& a = g.core(i);
    const Core& b = t.core(i);
    const Index d = g.dims()[i];
    if (b.phys() != d) throw ShapeError(fmt::format("physical dimension mismatch at site {}", i));
    const Index ra = a.left();
    const Index ra2 = a.right();
    Core c(ra * b.left(), d, ra2 * b.right());
    for (Index lb = 0; lb < b.right(); ++lb) {
      for (Index la = 0; la < ra2; ++la) {
        for (Index y = 0; y < d; ++y) {
          for (Index kb = 0; kb < b.left(); ++kb) {
            const Complex tv = b(kb, y, lb);
            if (tv == Complex{0.0, 0.0}) continue;
            for (Index x = 0; x < d; ++x) {
              for (Index ka = 0; ka < ra; ++ka) {
                c(ka + ra * kb, x, la + ra2 * lb) += a(ka, x + d * y, la) * tv;
              }
            }
          }
        }
      }
    }
    cores.push_back(std::move(c));
  }
  return MPS(std::move(cores));
}

MPO mpo_multiply(const MPO& g, const MPO& h) {
  if (g.size() != h.size() || g.dims() != h.dims()) throw ShapeError("operator shapes differ");
  std::vector<Core> cores;
  cores.reserve(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    const Core& a = g.core(i);
    const Core& b = h.core(i);
    const Index d = g.dims()[i];
    const Index ra = a.left();
    const Index ra2 = a.right();
    Core c(ra * b.left(), d * d, ra2 * b.right());
    for (Index lb = 0; lb < b.right(); ++lb) {
      for (Index la = 0; la < ra2; ++la) {
        for (Index y = 0; y < d; ++y) {
          for (Index z = 0; z < d; ++z) {
            for (Index kb = 0; kb < b.left(); ++kb) {
              const Complex hv = b(kb, z + d * y, lb);
              if (hv == Complex{0.0, 0.0}) continue;
              for (Index x = 0; x < d; ++x) {
                for (Index ka = 0; ka < ra; ++ka) {
                  c(ka + ra * kb, x + d * y, la + ra2 * lb) += a(ka, x + d * z, la) * hv;
                }
              }
            }
          }
        }
      }
    }
    cores.push_back(std::move(c));
  }
  return MPO(std::move(cores), g.dims());
}

MPO mpo_add(const MPO& a, const MPO& b) {
  if (a.size() != b.size() || a.dims() != b.dims()) throw ShapeError("operator shapes differ");
  const Index n = a.size();
  std::vector<Core> cores;
  for (Index i = 0; i < n; ++i) {
    const Core& ca = a.core(i);
    const Core& cb = b.core(i);
    const bool first = i == 0;
    const bool last = i + 1 == n;
    const Index left = first ? 1 : ca.left() + cb.left();
    const Index right = last ? 1 : ca.right() + cb.right();
    Core c(left, ca.phys(), right);
    const Index kb0 = first ? 0 : ca.left();
    const Index lb0 = last ? 0 : ca.right();
    for (Index p = 0; p < ca.phys(); ++p) {
      for (Index l = 0; l < ca.right(); ++l) {
        for (Index k = 0; k < ca.left(); ++k) c(k, p, l) += ca(k, p, l);
      }
      for (Index l = 0; l < cb.right(); ++l) {
        for (Index k = 0; k < cb.left(); ++k) c(kb0 + k, p, lb0 + l) += cb(k, p, l);
      }
    }
    cores.push_back(std::move(c));
  }
  return MPO(std::move(cores), a.dims());
}

MPO mpo_adjoint(const MPO& g) {
  std::vector<Core> cores;
  for (Index i = 0; i < g.size(); ++i) {
    const Core& a = g.core(i);
    const Index d = g.dims()[i];
    Core c(a.left(), a.phys(), a.right());
    for (Index l = 0; l < a.right(); ++l) {
      for (Index y = 0; y < d; ++y) {
        for (Index x = 0; x < d; ++x) {
          for (Index k = 0; k < a.left(); ++k) c(k, x + d * y, l) = std::conj(a(k, y + d * x, l));
        }
      }
    }
    cores.push_back(std::move(c));
  }
  return MPO(std::move(cores), g.dims());
}

MPO mpo_kron(const MPO& a, const MPO& b) {
  std::vector<Core> cores = a.cores();
  cores.insert(cores.end(), b.cores().begin(), b.cores().end());
  std::vector<Index> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return MPO(std::move(cores), std::move(dims));
}

MPS mps_scaled(const MPS& t, Complex factor) {
  std::vector<Core> cores = t.cores();
  for (Complex& v : cores.front().data()) v *= factor;
  return MPS(std::move(cores));
}

MPO mpo_scaled(const MPO& g, Complex factor) {
  std::vector<Core> cores = g.cores();
  for (Complex& v : cores.front().data()) v *= factor;
  return MPO(std::move(cores), g.dims());
}

MPS core_transform_right(const MPS& t, Index i, const Matrix& q) {
  check_site(i, t.size());
  std::vector<Core> cores = t.cores();
  right_multiply(cores, i, q);
  return MPS(std::move(cores));
}

MPO core_transform_right(const MPO& g, Index i, const Matrix& q) {
  check_site(i, g.size());
  std::vector<Core> cores = g.cores();
  right_multiply(cores, i, q);
  return MPO(std::move(cores), g.dims());
}

MPS core_transform_left(const MPS& t, Index i, const Matrix& q) {
  check_site(i, t.size());
  std::vector<Core> cores = t.cores();
  left_multiply(cores, i, q);
  return MPS(std::move(cores));
}

MPO core_transform_left(const MPO& g, Index i, const Matrix& q) {
  check_site(i, g.size());
  std::vector<Core> cores = g.cores();
  left_multiply(cores, i, q);
  return MPO(std::move(cores), g.dims());
}

MPS core_transform_pair(const MPS& t, Index i, const Matrix& q, const Matrix& p) {
  check_bond(i, t.size());
  std::vector<Core> cores = t.cores();
  right_multiply(cores, i, q);
  left_multiply(cores, i + 1, p);
  return MPS(std::move(cores));
}

MPO core_transform_pair(const MPO& g, Index i, const Matrix& q, const Matrix& p) {
  check_bond(i, g.size());
  std::vector<Core> cores = g.cores();
  right_multiply(cores, i, q);
  left_multiply(cores, i + 1, p);
  return MPO(std::move(cores), g.dims());
}

MPS core_transform_paired(const MPS& t, Index i, const Matrix& q) {
  return core_transform_pair(t, i, q, checked_inverse(q));
}

MPO core_transform_paired(const MPO& g, Index i, const Matrix& q) {
  return core_transform_pair(g, i, q, checked_inverse(q));
}

// ---- orthonormalization -------------------------------------------------------

MPS orthonormalize_right(const MPS& t, const TruncationPolicy& policy) {
  std::vector<Core> cores = t.cores();
  sweep_right(cores, policy);
  return MPS(std::move(cores)).certified(Orthogonality::right);
}

MPS orthonormalize_left(const MPS& t, const TruncationPolicy& policy) {
  std::vector<Core> cores = t.cores();
  sweep_left(cores, policy);
  return MPS(std::move(cores)).certified(Orthogonality::left);
}

MPS compress(const MPS& t, const TruncationPolicy& policy) {
  std::vector<Core> cores = t.cores();
  sweep_left(cores, policy);
  sweep_right(cores, policy);
  return MPS(std::move(cores)).certified(Orthogonality::right);
}

MPO orthonormalize_right(const MPO& g, const TruncationPolicy& policy) {
  std::vector<Core> cores = g.cores();
  sweep_right(cores, policy);
  return MPO(std::move(cores), g.dims());
}

MPO orthonormalize_left(const MPO& g, const TruncationPolicy& policy) {
  std::vector<Core> cores = g.cores();
  sweep_left(cores, policy);
  return MPO(std::move(cores), g.dims());
}

MPO compress(const MPO& g, const TruncationPolicy& policy) {
  std::vector<Core> cores = g.cores();
  sweep_left(cores, policy);
  sweep_right(cores, policy);
  return MPO(std::move(cores), g.dims());
}

bool is_right_orthonormal(const Core& c, double tol) {
  auto r = c.right_unfolding();
  Matrix gram = r * r.adjoint();
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_left_orthonormal(const Core& c, double tol) {
  auto l = c.left_unfolding();
  Matrix gram = l.adjoint() * l;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= tol;
}

// ---- norms ----------------------------------------------------------------------

Complex mps_inner(const MPS& a, const MPS& b) {
  if (a.dims() != b.dims()) throw ShapeError("states have different shapes");
  Matrix env = Matrix::Ones(1, 1);
  for (Index i = 0; i < a.size(); ++i) {
    const Core& ca = a.core(i);
    const Core& cb = b.core(i);
    Matrix next = Matrix::Zero(ca.right(), cb.right());
    for (Index x = 0; x < ca.phys(); ++x) next += ca.slice(x).adjoint() * env * cb.slice(x);
    env = std::move(next);
  }
  return env(0, 0);
}

double mps_norm(const MPS& t) { return std::sqrt(std::max(0.0, mps_inner(t, t).real())); }

MPS mps_normalize(const MPS& t) {
  const double norm = mps_norm(t);
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericalError("cannot normalize a zero or non-finite state");
  std::vector<Core> cores = t.cores();
  // Scale the core that carries the weight so the orthogonality flag survives.
  Core& target = t.orthogonality() == Orthogonality::left ? cores.back() : cores.front();
  for (Complex& v : target.data()) v /= norm;
  MPS out(std::move(cores));
  if (t.orthogonality() != Orthogonality::none) return out.certified(t.orthogonality());
  return out;
}

MPO diag_mpo(const MPS& t) {
  std::vector<Core> cores;
  for (const Core& a : t.cores()) {
    const Index d = a.phys();
    Core c(a.left(), d * d, a.right());
    for (Index l = 0; l < a.right(); ++l) {
      for (Index x = 0; x < d; ++x) {
        for (Index k = 0; k < a.left(); ++k) c(k, x + d * x, l) = a(k, x, l);
      }
    }
    cores.push_back(std::move(c));
  }
  return MPO(std::move(cores), t.dims());
}

}  // namespace mpoq
