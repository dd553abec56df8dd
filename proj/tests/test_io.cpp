#include <doctest.h>

#include "mpoq/gates.hpp"
#include "mpoq/io.hpp"

using namespace mpoq;

TEST_CASE("tensor dumps") {
  const auto j = tensor_json(mps_named_state("ghz", 3));
  CHECK(j["kind"] == "mps");
  CHECK(j["ranks"] == nlohmann::json({1, 2, 2, 1}));
  CHECK(j["dims"] == nlohmann::json({2, 2, 2}));
  REQUIRE(j["cores"].size() == 3);
  // Middle core: left 2, phys 2, right 2, each entry [re, im].
  CHECK(j["cores"][1].size() == 2);
  CHECK(j["cores"][1][0].size() == 2);
  CHECK(j["cores"][1][0][0].size() == 2);
  CHECK(j["cores"][1][1][1][1] == nlohmann::json({1.0, 0.0}));
  CHECK(j["cores"][1][1][0][0] == nlohmann::json({0.0, 0.0}));

  const auto g = tensor_json(placement_mpo(2, place_cnot(1, 2)));
  CHECK(g["kind"] == "mpo");
  CHECK(g["cores"][0][0].size() == 4);
}

TEST_CASE("report tables") {
  SampleReport r;
  r.measured = {1, 2};
  r.n = 3;
  r.samples = 4;
  r.seed = 7;
  r.counts = {{"11", 1}, {"00", 3}};
  r.elapsed_seconds = 1.5;
  CHECK(report_to_csv(r) == "bitstring,count,frequency\n00,3,0.75\n11,1,0.25\n");

  r.probabilities = {{"00", 0.7}, {"01", 0.1}, {"11", 0.2}};
  CHECK(report_to_csv(r) == "bitstring,count,frequency,probability\n00,3,0.75,0.7\n01,0,0,0.1\n11,1,0.25,0.2\n");

  const auto j = report_json(r);
  CHECK(j["samples"] == 4);
  CHECK(j["seed"] == 7);
  CHECK(j["counts"]["00"] == 3);
  CHECK(j["probabilities"]["01"] == 0.1);
  CHECK(j["measured"] == nlohmann::json({1, 2}));
  CHECK_FALSE(j.contains("elapsed_seconds"));

  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(0.125) == "0.125");
  CHECK(format_number(0.0) == "0");
}
