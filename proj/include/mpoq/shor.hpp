#pragma once

// Period finding for M = 15 with the modular-exponentiation MPO.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpoq/circuits.hpp"

namespace mpoq {

/// Bases with a closed-form U_f for M = 15.
const std::vector<std::uint64_t>& shor_bases();

/// Closed form for M = 15: input qubits 1..8, target qubits 9..12. Throws
/// std::invalid_argument for other (a, M).
MPO shor_uf_mpo(std::uint64_t a, std::uint64_t m = 15);

/// sum_x C_{x_1} (x) ... (x) C_{x_2t} (x) sigma_x^{f(x)}, built term by term and
/// compressed; t target qubits with 2^t >= m.
MPO shor_uf_generic(std::uint64_t a, std::uint64_t m, Index t);

/// H on the input register, U_f, then the conjugated QFT groups on the input
/// register. Readout of the input register is reversed.
GateGroupSequence shor_sequence(std::uint64_t a, std::uint64_t m = 15);

struct PeriodResult {
  std::uint64_t y = 0;
  /// Denominator of the last continued-fraction convergent of y / N^2 below M.
  std::uint64_t q = 1;
  /// a^q = 1 (mod M).
  bool verified = false;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;
};

/// Continued-fraction step and gcd rule. y = 0 and odd q give no factors, as
/// does a^{q/2} = -1 (mod M).
PeriodResult extract_period(std::uint64_t y, std::uint64_t n_squared, std::uint64_t a, std::uint64_t m);

struct ShorOutcome {
  std::uint64_t y = 0;
  double probability = 0.0;
  PeriodResult period;
};

struct ShorRun {
  std::uint64_t a = 0;
  std::uint64_t m = 15;
  SequenceResult sequence;
  /// Max bond rank of the final state.
  Index rank = 0;
  /// Outcomes with nonzero probability, ascending in y.
  std::vector<ShorOutcome> outcomes;
};

ShorRun shor_run(std::uint64_t a, std::uint64_t m = 15, const TruncationPolicy& policy = {});

/// Positions 1..8 read in reverse: qubit 8 is the most significant bit of y.
std::uint64_t shor_readout(const std::string& bits);

}  // namespace mpoq
