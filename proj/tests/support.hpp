#pragma once

// Shared fixtures for the test binaries: random tensors and a brute-force
// contraction that only touches core entries.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mpoq/tensor.hpp"

namespace testing {

using mpoq::Complex;
using mpoq::Core;
using mpoq::Index;
using mpoq::Matrix;

inline Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

inline Core random_core(std::mt19937_64& rng, Index left, Index phys, Index right) {
  Core c(left, phys, right);
  for (Complex& v : c.data()) v = random_complex(rng);
  return c;
}

/// Bond ranks drawn from [1, max_rank], boundary ranks 1.
inline std::vector<Index> random_ranks(std::mt19937_64& rng, Index n, Index max_rank) {
  std::uniform_int_distribution<Index> pick(1, max_rank);
  std::vector<Index> r(n + 1, 1);
  for (Index i = 1; i < n; ++i) r[i] = pick(rng);
  return r;
}

inline mpoq::MPS random_mps(std::mt19937_64& rng, Index n, Index max_rank, Index d = 2) {
  const auto r = random_ranks(rng, n, max_rank);
  std::vector<Core> cores;
  for (Index i = 0; i < n; ++i) cores.push_back(random_core(rng, r[i], d, r[i + 1]));
  return mpoq::MPS(std::move(cores));
}

inline mpoq::MPO random_mpo(std::mt19937_64& rng, Index n, Index max_rank) {
  const auto r = random_ranks(rng, n, max_rank);
  std::vector<Core> cores;
  for (Index i = 0; i < n; ++i) cores.push_back(random_core(rng, r[i], 4, r[i + 1]));
  return mpoq::MPO(std::move(cores));
}

/// Digit i of x in base d, site 0 most significant.
inline Index digit(std::uint64_t x, Index i, Index n, Index d = 2) {
  for (Index k = n - 1; k > i; --k) x /= d;
  return static_cast<Index>(x % d);
}

/// Full contraction by summing over every bond configuration.
inline std::vector<Complex> brute_dense(const mpoq::MPS& t) {
  const Index n = t.size();
  Index total = 1;
  for (Index d : t.dims()) total *= d;
  std::vector<Complex> out(total);
  for (std::uint64_t x = 0; x < total; ++x) {
    std::vector<Complex> v{1.0};
    for (Index i = 0; i < n; ++i) {
      const Core& c = t.core(i);
      std::vector<Complex> w(c.right(), 0.0);
      const Index xi = digit(x, i, n, c.phys());
      for (Index k = 0; k < c.left(); ++k) {
        for (Index l = 0; l < c.right(); ++l) w[l] += v[k] * c(k, xi, l);
      }
      v = std::move(w);
    }
    out[x] = v[0];
  }
  return out;
}

/// Row = output multi-index, column = input multi-index (qubit operators).
inline Matrix brute_dense(const mpoq::MPO& g) {
  const Index n = g.size();
  const Index dim = Index{1} << n;
  Matrix out = Matrix::Zero(dim, dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t y = 0; y < dim; ++y) {
      std::vector<Complex> v{1.0};
      for (Index i = 0; i < n; ++i) {
        const Core& c = g.core(i);
        std::vector<Complex> w(c.right(), 0.0);
        const Index p = digit(x, i, n) + 2 * digit(y, i, n);
        for (Index k = 0; k < c.left(); ++k) {
          for (Index l = 0; l < c.right(); ++l) w[l] += v[k] * c(k, p, l);
        }
        v = std::move(w);
      }
      out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = v[0];
    }
  }
  return out;
}

inline double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return INFINITY;
  double m = 0.0;
  for (Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a - b).cwiseAbs().maxCoeff();
}

inline double norm2(const std::vector<Complex>& a) {
  double s = 0.0;
  for (const Complex& v : a) s += std::norm(v);
  return std::sqrt(s);
}

/// Kronecker product, first factor acts on the most significant qubit.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline Matrix kron_all(const std::vector<Matrix>& factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const Matrix& f : factors) out = kron(out, f);
  return out;
}

/// Permutation matrix of a classical reversible map on n bits.
template <typename F>
Matrix permutation(Index n, F f) {
  const Index dim = Index{1} << n;
  Matrix p = Matrix::Zero(dim, dim);
  for (std::uint64_t x = 0; x < dim; ++x) p(static_cast<Eigen::Index>(f(x)), static_cast<Eigen::Index>(x)) = 1.0;
  return p;
}

}  // namespace testing
