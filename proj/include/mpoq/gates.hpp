#pragma once

// Gate matrices and their MPO embeddings on n qubits. Positions are 1-based,
// qubit 1 is the most significant bit.

#include <string>
#include <vector>

#include "mpoq/tensor.hpp"

namespace mpoq {

namespace gate {

Matrix2 identity();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
Matrix2 hadamard();
/// diag(1, e^{i phi})
Matrix2 phase(double phi);
/// diag(1, e^{2 pi i / 2^k})
Matrix2 rk(int k);
/// |0><0|
Matrix2 proj0();
/// |1><1|
Matrix2 proj1();

}  // namespace gate

/// U on `target`, applied when every control qubit is 1.
struct GatePlacement {
  Matrix2 u;
  int target = 1;
  std::vector<int> controls;
  std::string label;
};

GatePlacement place_h(int target);
GatePlacement place_x(int target);
GatePlacement place_phase(double phi, int target);
GatePlacement place_rk(int k, int target);
GatePlacement place_cnot(int control, int target);
/// Controlled R_k.
GatePlacement place_cphase(int k, int control, int target);
GatePlacement place_ccnot(int control1, int control2, int target);

/// Throws ShapeError on out-of-range or repeated positions.
void validate_placement(const GatePlacement& g, Index n);

/// I (x) ... (x) U (x) ... (x) I, all ranks 1.
MPO single_qubit_mpo(Index n, const Matrix2& u, int target);

/// I + P (x) (U - I) where P projects every control onto 1. Bond rank 2 on
/// the span of the involved qubits, 1 elsewhere.
MPO controlled_mpo(Index n, const Matrix2& u, const std::vector<int>& controls, int target);

MPO placement_mpo(Index n, const GatePlacement& g);

/// H on every qubit, rank 1.
MPO hadamard_layer(Index n);
/// H on each listed position; an empty list gives the identity.
MPO hadamard_layer(Index n, const std::vector<int>& positions);

/// Product of the placements applied in list order (first entry acts first),
/// compressed after every factor with `policy`.
MPO placements_mpo(Index n, const std::vector<GatePlacement>& gates, const TruncationPolicy& policy = {});

}  // namespace mpoq
