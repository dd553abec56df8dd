#pragma once

// Closed-form MPOs for the reference circuits and the group-by-group executor.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpoq/gates.hpp"

namespace mpoq {

/// Named qubit roles, e.g. {"register1", {1, 3, 5, 7}}.
using RegisterLayout = std::vector<std::pair<std::string, std::vector<int>>>;

/// Groups are applied in list order.
struct GateGroupSequence {
  std::vector<MPO> groups;
  std::vector<std::string> group_labels;
  std::string label;
  RegisterLayout layout;

  Index qubits() const { return groups.empty() ? 0 : groups.front().size(); }
};

// ---- quantum full adder --------------------------------------------------

/// Inputs |C_in, A, B, 0> map to |S, A, B, C_out>. Ranks (1,3,4,2,1).
MPO qfa_mpo();
/// The five gates of the adder on qubits offset+1..offset+4, in application order.
std::vector<GatePlacement> qfa_placements(int offset = 0);

/// `count` adders chained through their carry qubits, 3*count+1 qubits.
MPO qfa_network_mpo(Index count);
std::vector<GatePlacement> qfa_network_placements(Index count);
/// Positions of S_1..S_count and C_out.
std::vector<int> qfa_network_outputs(Index count);
/// Positions of A_i and B_i.
std::vector<int> qfa_network_inputs(Index count);

// ---- Simon ------------------------------------------------------------------

/// Hidden string of the fixed oracle, register-1 bit 1 first.
inline constexpr unsigned kSimonHiddenB = 0b1010;

/// Fixed b = 1010 instance on 8 interleaved qubits (odd positions: register 1).
MPO simon_circuit_mpo();
/// G1..G4 as gate lists, application order.
std::vector<std::vector<GatePlacement>> simon_group_placements();
RegisterLayout simon_layout();

/// Every nonzero b with z . b = 0 (mod 2) for all rows z (bit m-1 of z is
/// the first register qubit).
std::vector<std::uint64_t> solve_gf2_nullspace(const std::vector<std::uint64_t>& rows, Index m);

// ---- QFT ------------------------------------------------------------------

/// Group i: H on qubit i followed by CPHASE_{j-i+1}(j|i), j = i+1..n.
MPO qft_group_mpo(Index i, Index n);
/// Adjoint of group i.
MPO inverse_qft_group_mpo(Index i, Index n);
/// Group i with every phase conjugated.
MPO conj_qft_group_mpo(Index i, Index n);

std::vector<GatePlacement> qft_group_placements(Index i, Index n);
std::vector<GatePlacement> inverse_qft_group_placements(Index i, Index n);
std::vector<GatePlacement> conj_qft_group_placements(Index i, Index n);

/// G_1, ..., G_n. Output amplitudes are the DFT read in reversed qubit order.
GateGroupSequence qft_sequence(Index n);
/// G_n^{-1}, ..., G_1^{-1}: undoes qft_sequence.
GateGroupSequence inverse_qft_sequence(Index n);
/// Conjugated groups G_1*, ..., G_n*: inverse DFT, read in reversed qubit order.
GateGroupSequence conj_qft_sequence(Index n);

// ---- execution ------------------------------------------------------------

struct SequenceResult {
  MPS state;
  /// Max rank right after each group application, before compression.
  std::vector<Index> applied_max_ranks;
  /// Bond ranks after each compression step.
  std::vector<std::vector<Index>> rank_trajectory;
};

/// Applies the groups in order, compressing after each; the result is normalized.
SequenceResult run_gate_sequence(const GateGroupSequence& seq, const MPS& initial,
                                 const TruncationPolicy& policy = {});

/// `g` on qubits offset+1..offset+g.size() of an n-qubit register.
MPO embed(const MPO& g, Index offset, Index n);

}  // namespace mpoq
