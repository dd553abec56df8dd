#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace mpoq {

using Complex = std::complex<double>;
using Index = std::size_t;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Input violates a shape or index contract (dimension mismatch, bad position).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dense conversion would exceed the configured size guard.
class DenseCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A floating-point procedure produced a result outside its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Postselection on an outcome whose probability is (numerically) zero.
class ZeroProbabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Order-3 block (left rank, physical, right rank) stored colexicographically:
/// the left rank index varies fastest. This makes both unfoldings plain
/// column-major matrices over the same buffer.
///
/// MPO cores reuse this type with a lumped physical index p = x + d*y
/// (x = output/row index, y = input/column index).
class Core {
 public:
  using LeftUnfolding = Eigen::Map<Matrix>;
  using ConstLeftUnfolding = Eigen::Map<const Matrix>;

  Core() = default;
  Core(Index left, Index phys, Index right);
  Core(Index left, Index phys, Index right, std::vector<Complex> data);

  Index left() const { return left_; }
  Index phys() const { return phys_; }
  Index right() const { return right_; }
  Index size() const { return data_.size(); }

  Complex& operator()(Index k, Index p, Index l) { return data_[k + left_ * (p + phys_ * l)]; }
  const Complex& operator()(Index k, Index p, Index l) const {
    return data_[k + left_ * (p + phys_ * l)];
  }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  /// (left*phys) x right view.
  Eigen::Map<Matrix> left_unfolding() {
    return {data_.data(), static_cast<Eigen::Index>(left_ * phys_), static_cast<Eigen::Index>(right_)};
  }
  Eigen::Map<const Matrix> left_unfolding() const {
    return {data_.data(), static_cast<Eigen::Index>(left_ * phys_), static_cast<Eigen::Index>(right_)};
  }
  /// left x (phys*right) view.
  Eigen::Map<Matrix> right_unfolding() {
    return {data_.data(), static_cast<Eigen::Index>(left_), static_cast<Eigen::Index>(phys_ * right_)};
  }
  Eigen::Map<const Matrix> right_unfolding() const {
    return {data_.data(), static_cast<Eigen::Index>(left_), static_cast<Eigen::Index>(phys_ * right_)};
  }

  /// The left x right matrix at physical index p.
  Matrix slice(Index p) const;

  static Core from_left_unfolding(const Matrix& m, Index left, Index phys);
  static Core from_right_unfolding(const Matrix& m, Index phys, Index right);

 private:
  Index left_ = 0;
  Index phys_ = 0;
  Index right_ = 0;
  std::vector<Complex> data_;
};

/// Builds an operator core from a block array in core notation:
/// blocks[k][l] is the 2x2 (or d x d) matrix at rank position (k, l).
/// Missing blocks are zero.
Core operator_core(const std::vector<std::vector<Matrix>>& blocks, Index d = 2);

}  // namespace mpoq
