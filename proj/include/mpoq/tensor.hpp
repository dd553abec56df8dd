#pragma once

// Matrix product states and operators.
//
// Core indices in this header are 0-based (container positions). Qubit
// positions in the gate, circuit and sampler layers are 1-based.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mpoq/core.hpp"

namespace mpoq {

/// Tolerance for certifying orthonormal cores.
inline constexpr double kOrthTolerance = 1e-10;

/// Singular values below rel_threshold * sigma_max are dropped; max_rank caps
/// the kept count. rel_threshold = 0 without max_rank is lossless.
struct TruncationPolicy {
  double rel_threshold = 1e-12;
  std::optional<Index> max_rank;

  static TruncationPolicy lossless() { return {0.0, std::nullopt}; }
};

enum class Orthogonality { none, left, right };

/// Tensor train over physical dimensions d_i with ranks (1, r_1, ..., r_{n-1}, 1).
class MPS {
 public:
  explicit MPS(std::vector<Core> cores);

  Index size() const { return cores_.size(); }
  const std::vector<Core>& cores() const { return cores_; }
  const Core& core(Index i) const { return cores_.at(i); }
  std::vector<Index> dims() const;
  std::vector<Index> ranks() const;
  Index max_rank() const;

  /// right: cores 1..n-1 satisfy R R^dagger = I. left: cores 0..n-2 satisfy L^dagger L = I.
  Orthogonality orthogonality() const { return orth_; }

  /// Returns a copy flagged with `orth` after checking every affected core
  /// against `tol`. Throws NumericalError if the check fails.
  MPS certified(Orthogonality orth, double tol = kOrthTolerance) const;

 private:
  std::vector<Core> cores_;
  Orthogonality orth_ = Orthogonality::none;
};

/// Operator train; core i has lumped physical index x + d_i * y.
class MPO {
 public:
  MPO(std::vector<Core> cores, std::vector<Index> dims);
  /// All physical dimensions 2.
  explicit MPO(std::vector<Core> cores);

  Index size() const { return cores_.size(); }
  const std::vector<Core>& cores() const { return cores_; }
  const Core& core(Index i) const { return cores_.at(i); }
  const std::vector<Index>& dims() const { return dims_; }
  std::vector<Index> ranks() const;
  Index max_rank() const;

  /// G^{(i)}_{k, x, y, l}
  Complex entry(Index i, Index k, Index x, Index y, Index l) const {
    return cores_[i](k, x + dims_[i] * y, l);
  }

 private:
  std::vector<Core> cores_;
  std::vector<Index> dims_;
};

// ---- construction -------------------------------------------------------

/// Rank-one MPS of the basis state |bits_1 ... bits_n>, bits_1 most significant.
MPS mps_from_basis_state(std::span<const int> bits);

/// Rank-one MPS from per-site vectors.
MPS mps_product_state(const std::vector<std::vector<Complex>>& sites);

enum class NamedState { ghz, w, bell_phi_plus, bell_phi_minus, bell_psi_plus, bell_psi_minus };

/// Accepts "ghz", "w", "bell_phi_plus", ... (case-insensitive). Throws std::invalid_argument.
NamedState parse_named_state(std::string_view name);
MPS mps_named_state(NamedState state, Index n);
MPS mps_named_state(std::string_view name, Index n);

MPO mpo_identity(Index n, Index d = 2);

// ---- access and dense bridges ------------------------------------------

Complex mps_element(const MPS& t, std::span<const Index> x);

/// Largest state vector (entries) / operator dimension the dense bridges accept.
/// MPOQ_DENSE_CAP (a qubit count) overrides the state cap; default 2^20 and 2^10.
Index default_state_dense_cap();
Index default_operator_dense_cap();

std::vector<Complex> mps_to_dense(const MPS& t, Index cap = default_state_dense_cap());
Matrix mpo_to_dense(const MPO& g, Index cap = default_operator_dense_cap());

// ---- algebra ------------------------------------------------------------

/// G T without truncation; output ranks are R_i * r_i.
MPS mpo_apply(const MPO& g, const MPS& t);
/// G H (H acts first); output ranks are products.
MPO mpo_multiply(const MPO& g, const MPO& h);
MPO mpo_add(const MPO& a, const MPO& b);
MPO mpo_adjoint(const MPO& g);
/// a on the leading sites, b on the trailing ones.
MPO mpo_kron(const MPO& a, const MPO& b);
MPS mps_scaled(const MPS& t, Complex factor);
MPO mpo_scaled(const MPO& g, Complex factor);

/// Core i <- core i * q. Only legal when the chain stays consistent, i.e. q is
/// square or i is the last core.
MPS core_transform_right(const MPS& t, Index i, const Matrix& q);
MPO core_transform_right(const MPO& g, Index i, const Matrix& q);
/// Core i <- q * core i.
MPS core_transform_left(const MPS& t, Index i, const Matrix& q);
MPO core_transform_left(const MPO& g, Index i, const Matrix& q);
/// Core i <- core i * q and core i+1 <- p * core i+1. The represented tensor
/// is unchanged whenever q p = I.
MPS core_transform_pair(const MPS& t, Index i, const Matrix& q, const Matrix& p);
MPO core_transform_pair(const MPO& g, Index i, const Matrix& q, const Matrix& p);
/// core_transform_pair with p = q^{-1}; throws ShapeError if q is singular.
MPS core_transform_paired(const MPS& t, Index i, const Matrix& q);
MPO core_transform_paired(const MPO& g, Index i, const Matrix& q);

// ---- orthonormalization -------------------------------------------------

/// Right-to-left SVD sweep; cores 1..n-1 end right-orthonormal, U*Sigma is
/// absorbed into the left neighbour.
MPS orthonormalize_right(const MPS& t, const TruncationPolicy& policy = {});
/// Left-to-right SVD sweep; cores 0..n-2 end left-orthonormal.
MPS orthonormalize_left(const MPS& t, const TruncationPolicy& policy = {});
/// Left sweep followed by a right sweep: minimal ranks for the policy, result right-orthonormal.
MPS compress(const MPS& t, const TruncationPolicy& policy = {});

MPO orthonormalize_right(const MPO& g, const TruncationPolicy& policy = {});
MPO orthonormalize_left(const MPO& g, const TruncationPolicy& policy = {});
MPO compress(const MPO& g, const TruncationPolicy& policy = {});

bool is_right_orthonormal(const Core& c, double tol = kOrthTolerance);
bool is_left_orthonormal(const Core& c, double tol = kOrthTolerance);

// ---- norms ----------------------------------------------------------------

/// <a|b>
Complex mps_inner(const MPS& a, const MPS& b);
double mps_norm(const MPS& t);
/// Throws NumericalError for the zero tensor.
MPS mps_normalize(const MPS& t);

/// Diagonal embedding: diag(T)_{x,y} = T_x if x == y else 0, core by core.
MPO diag_mpo(const MPS& t);

}  // namespace mpoq
