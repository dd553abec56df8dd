#include "mpoq/io.hpp"

#include <set>

#include <fmt/format.h>

namespace mpoq {

namespace {

nlohmann::json core_json(const Core& c) {
  nlohmann::json left = nlohmann::json::array();
  for (Index k = 0; k < c.left(); ++k) {
    nlohmann::json phys = nlohmann::json::array();
    for (Index p = 0; p < c.phys(); ++p) {
      nlohmann::json right = nlohmann::json::array();
      for (Index l = 0; l < c.right(); ++l) right.push_back({c(k, p, l).real(), c(k, p, l).imag()});
      phys.push_back(std::move(right));
    }
    left.push_back(std::move(phys));
  }
  return left;
}

template <typename Chain>
nlohmann::json chain_json(const Chain& t, const std::vector<Index>& dims, const char* kind) {
  nlohmann::json j;
  j["kind"] = kind;
  j["ranks"] = t.ranks();
  j["dims"] = dims;
  j["cores"] = nlohmann::json::array();
  for (const Core& c : t.cores()) j["cores"].push_back(core_json(c));
  return j;
}

}  // namespace

nlohmann::json tensor_json(const MPS& t) { return chain_json(t, t.dims(), "mps"); }
nlohmann::json tensor_json(const MPO& g) { return chain_json(g, g.dims(), "mpo"); }

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

std::string report_to_csv(const SampleReport& r) {
  const bool with_p = !r.probabilities.empty();
  std::set<std::string> keys;
  for (const auto& [k, v] : r.counts) keys.insert(k);
  for (const auto& [k, v] : r.probabilities) keys.insert(k);
  std::string out = with_p ? "bitstring,count,frequency,probability\n" : "bitstring,count,frequency\n";
  for (const std::string& k : keys) {
    auto c = r.counts.find(k);
    const std::uint64_t count = c == r.counts.end() ? 0 : c->second;
    const double freq = r.samples == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(r.samples);
    out += fmt::format("{},{},{}", k, count, format_number(freq));
    if (with_p) {
      auto p = r.probabilities.find(k);
      out += "," + format_number(p == r.probabilities.end() ? 0.0 : p->second);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json report_json(const SampleReport& r) {
  nlohmann::json j;
  j["n"] = r.n;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["measured"] = r.measured;
  j["counts"] = nlohmann::json::object();
  for (const auto& [k, v] : r.counts) j["counts"][k] = v;
  if (!r.probabilities.empty()) {
    j["probabilities"] = nlohmann::json::object();
    for (const auto& [k, v] : r.probabilities) j["probabilities"][k] = v;
  }
  return j;
}

}  // namespace mpoq
