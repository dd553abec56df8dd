#pragma once

// Born probabilities and qubit-wise generative sampling from an MPS.
// Positions are 1-based; bitstrings list the measured qubits in ascending
// order, most significant (lowest position) first.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mpoq/tensor.hpp"

namespace mpoq {

/// Probabilities at or below this are treated as zero (postselection, support).
inline constexpr double kZeroProbability = 1e-14;
/// Exact marginals are enumerated only while 2^m fits the dense state cap.
bool dense_marginal_allowed(Index measured_count);

struct MeasurementPlan {
  /// Ascending positions; empty means all qubits.
  std::vector<int> measured;
  /// (position, bit) pairs fixed before sampling.
  std::vector<std::pair<int, int>> postselect;
  Index samples = 0;
  std::uint64_t seed = 0;
  /// Attach exact probabilities when the measured set is small enough.
  bool exact_probabilities = true;
};

struct SampleReport {
  std::vector<int> measured;
  std::map<std::string, std::uint64_t> counts;
  /// Exact probabilities over the support; empty when not computed.
  std::map<std::string, double> probabilities;
  Index n = 0;
  Index samples = 0;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
};

/// Right-orthonormalized, unit-norm copy (no-op work skipped when already flagged).
MPS prepare_for_sampling(const MPS& t);

/// Marginal over `measured` (all qubits if empty), indexed with the first
/// measured qubit most significant. Normalizes internally.
std::vector<double> probability_marginal_dense(const MPS& t, const std::vector<int>& measured);

/// Probability of the partial assignment.
double assignment_probability(const MPS& t, const std::vector<std::pair<int, int>>& assignment);

/// Conditions on the assignment: the fixed slices are kept, the others zeroed,
/// and the result renormalized. Throws ZeroProbabilityError below kZeroProbability.
MPS postselect(const MPS& t, const std::vector<std::pair<int, int>>& assignment);

/// Draws plan.samples bitstrings. Deterministic in (t, plan); sample i uses
/// its own substream so it does not depend on plan.samples.
SampleReport sample(const MPS& t, const MeasurementPlan& plan);

/// Sum over the listed indices of A^dagger E A for sites 1..k, with fixed
/// sites sliced and free sites summed (`fixed[i] < 0` means free). Reference
/// implementation of the sampling environment.
Matrix left_environment(const MPS& t, const std::vector<int>& fixed, Index k);
/// Sum over sites k+1..n of the suffix product times its adjoint.
Matrix right_environment(const MPS& t, Index k);

std::string render_bits(std::uint64_t value, Index width);

/// Deterministic per-sample substream.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace mpoq
