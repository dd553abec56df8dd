#include <doctest.h>

#include <map>
#include <numeric>

#include "mpoq/dense.hpp"
#include "mpoq/shor.hpp"
#include "support.hpp"

using namespace mpoq;

namespace {

std::vector<int> register_bits(std::uint64_t x, std::uint64_t f) {
  std::vector<int> b;
  for (int i = 7; i >= 0; --i) b.push_back(static_cast<int>((x >> i) & 1U));
  for (int i = 3; i >= 0; --i) b.push_back(static_cast<int>((f >> i) & 1U));
  return b;
}

std::uint64_t power_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = r * a % m;
  return r;
}

bool rank_four(std::uint64_t a) { return a == 2 || a == 7 || a == 8 || a == 13; }

}  // namespace

TEST_CASE("modular exponentiation operators") {
  for (std::uint64_t a : shor_bases()) {
    const MPO g = shor_uf_mpo(a);
    CHECK(g.size() == 12);
    CHECK(compress(g).max_rank() == (rank_four(a) ? 4u : 2u));
    for (std::uint64_t x = 0; x < 256; ++x) {
      const auto out = mps_to_dense(mpo_apply(g, mps_from_basis_state(register_bits(x, 0))));
      const std::uint64_t want = (x << 4) | power_mod(a, x, 15);
      CHECK(std::abs(out[want] - 1.0) < 1e-12);
      CHECK(std::abs(testing::norm2(out) - 1.0) < 1e-12);
    }
  }
  // x = 1 sends the target register to |0111>.
  const auto seven = mps_to_dense(mpo_apply(shor_uf_mpo(7), mps_from_basis_state(register_bits(1, 0))));
  CHECK(std::abs(seven[(1 << 4) | 0b0111] - 1.0) < 1e-12);
  CHECK(shor_uf_mpo(4).max_rank() == 2);

  CHECK_THROWS_AS(shor_uf_mpo(3), std::invalid_argument);
  CHECK_THROWS_AS(shor_uf_mpo(2, 21), std::invalid_argument);
}

TEST_CASE("generic construction matches the closed forms") {
  for (std::uint64_t a : {4, 7}) {
    const MPO g = shor_uf_generic(a, 15, 4);
    CHECK(g.max_rank() == (rank_four(a) ? 4u : 2u));
    for (std::uint64_t x : {0, 1, 2, 3, 77, 255}) {
      const MPS in = mps_from_basis_state(register_bits(x, 0));
      CHECK(testing::max_diff(mps_to_dense(mpo_apply(g, in)), mps_to_dense(mpo_apply(shor_uf_mpo(a), in))) < 1e-12);
    }
  }
  CHECK_THROWS_AS(shor_uf_generic(5, 15, 4), std::invalid_argument);
  CHECK_THROWS_AS(shor_uf_generic(2, 15, 3), std::invalid_argument);
}

TEST_CASE("period extraction") {
  const PeriodResult r64 = extract_period(64, 256, 7, 15);
  CHECK(r64.q == 4);
  CHECK(r64.verified);
  REQUIRE(r64.factors);
  CHECK(*r64.factors == std::pair<std::uint64_t, std::uint64_t>{3, 5});

  const PeriodResult r0 = extract_period(0, 256, 7, 15);
  CHECK(r0.q == 1);
  CHECK_FALSE(r0.factors);

  // 4^1 = 4, so gcd(3, 15) and gcd(5, 15).
  const PeriodResult r4 = extract_period(128, 256, 4, 15);
  CHECK(r4.q == 2);
  CHECK(r4.verified);
  REQUIRE(r4.factors);
  CHECK(*r4.factors == std::pair<std::uint64_t, std::uint64_t>{3, 5});

  // 14 = -1 (mod 15): the gcd step gives nothing.
  CHECK_FALSE(extract_period(128, 256, 14, 15).factors);
  // 7^1 != 1 (mod 15): the candidate is reported but flagged.
  const PeriodResult r7 = extract_period(128, 256, 7, 15);
  CHECK(r7.q == 2);
  CHECK_FALSE(r7.verified);

  CHECK_THROWS_AS(extract_period(256, 256, 7, 15), std::invalid_argument);

  // Denominators against exact reduced fractions for every y.
  for (std::uint64_t y = 1; y < 256; ++y) {
    const std::uint64_t g = std::gcd(y, std::uint64_t{256});
    const std::uint64_t den = 256 / g;
    const PeriodResult r = extract_period(y, 256, 7, 15);
    if (den < 15) CHECK(r.q == den);
    CHECK(r.q < 15);
  }
}

TEST_CASE("period-finding runs") {
  for (std::uint64_t a : shor_bases()) {
    const ShorRun run = shor_run(a);
    const auto oracle = dense::shor_input_distribution(a, 15, 4);
    CHECK(run.rank == (rank_four(a) ? 4u : 2u));
    std::vector<std::uint64_t> ys;
    double total = 0.0;
    for (const ShorOutcome& o : run.outcomes) {
      ys.push_back(o.y);
      CHECK(std::abs(o.probability - oracle[o.y]) < 1e-10);
      total += o.probability;
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
    const std::vector<std::uint64_t> want =
        rank_four(a) ? std::vector<std::uint64_t>{0, 64, 128, 192} : std::vector<std::uint64_t>{0, 128};
    CHECK(ys == want);
  }
  CHECK(shor_readout("00000010") == 64);
  CHECK(shor_readout("00000001") == 128);
  CHECK(shor_readout("10000000") == 1);
  CHECK_THROWS(shor_readout("0101"));
}
