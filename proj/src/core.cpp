#include "mpoq/core.hpp"

#include <fmt/format.h>

namespace mpoq {

Core::Core(Index left, Index phys, Index right)
    : left_(left), phys_(phys), right_(right), data_(left * phys * right, Complex{0.0, 0.0}) {
  if (left == 0 || phys == 0 || right == 0) {
    throw ShapeError(fmt::format("core dimensions must be positive, got ({}, {}, {})", left, phys, right));
  }
}

Core::Core(Index left, Index phys, Index right, std::vector<Complex> data)
    : left_(left), phys_(phys), right_(right), data_(std::move(data)) {
  if (left == 0 || phys == 0 || right == 0) {
    throw ShapeError(fmt::format("core dimensions must be positive, got ({}, {}, {})", left, phys, right));
  }
  if (data_.size() != left * phys * right) {
    throw ShapeError(fmt::format("core buffer has {} entries, shape ({}, {}, {}) needs {}", data_.size(),
                                 left, phys, right, left * phys * right));
  }
}

Matrix Core::slice(Index p) const {
  Matrix m(left_, right_);
  for (Index l = 0; l < right_; ++l) {
    for (Index k = 0; k < left_; ++k) m(k, l) = (*this)(k, p, l);
  }
  return m;
}

Core Core::from_left_unfolding(const Matrix& m, Index left, Index phys) {
  if (static_cast<Index>(m.rows()) != left * phys) {
    throw ShapeError("left unfolding row count does not match left*phys");
  }
  return Core(left, phys, m.cols(), std::vector<Complex>(m.data(), m.data() + m.size()));
}

Core Core::from_right_unfolding(const Matrix& m, Index phys, Index right) {
  if (static_cast<Index>(m.cols()) != phys * right) {
    throw ShapeError("right unfolding column count does not match phys*right");
  }
  return Core(m.rows(), phys, right, std::vector<Complex>(m.data(), m.data() + m.size()));
}

Core operator_core(const std::vector<std::vector<Matrix>>& blocks, Index d) {
  const Index rows = blocks.size();
  if (rows == 0 || blocks.front().empty()) throw ShapeError("operator core needs at least one block");
  const Index cols = blocks.front().size();
  Core core(rows, d * d, cols);
  for (Index k = 0; k < rows; ++k) {
    if (blocks[k].size() != cols) throw ShapeError("ragged block array");
    for (Index l = 0; l < cols; ++l) {
      const Matrix& b = blocks[k][l];
      if (b.size() == 0) continue;
      if (static_cast<Index>(b.rows()) != d || static_cast<Index>(b.cols()) != d) {
        throw ShapeError("operator block has wrong physical size");
      }
      for (Index y = 0; y < d; ++y) {
        for (Index x = 0; x < d; ++x) core(k, x + d * y, l) = b(x, y);
      }
    }
  }
  return core;
}

}  // namespace mpoq
