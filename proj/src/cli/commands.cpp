#include "mpoq/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mpoq/cli/circuit_spec.hpp"
#include "mpoq/cli/verify.hpp"
#include "mpoq/io.hpp"
#include "mpoq/shor.hpp"

namespace mpoq::cli {

namespace {

using nlohmann::json;

struct SimulateOptions {
  std::string spec_path;
  std::string builtin;
  Index samples = 0;
  std::uint64_t seed = 0;
  std::string measure;
  std::string postselect;
  std::string out;
  std::string format = "csv";
  bool oracle = false;
};

struct BenchOptions {
  std::string builtin;
  std::string sizes;
  Index samples = 10000;
  Index repeats = 3;
  std::uint64_t seed = 0;
  std::string out;
};

struct VerifyOptions {
  std::vector<std::string> only;
  bool only_given = false;
  bool corrupt_phase = false;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(fmt::format("cannot open '{}'", path));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(fmt::format("{}: {}", path, e.what()));
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out << text;
}

std::string reversed(std::string s) {
  std::reverse(s.begin(), s.end());
  return s;
}

template <typename T>
std::map<std::string, T> reverse_keys(const std::map<std::string, T>& m) {
  std::map<std::string, T> r;
  for (const auto& [k, v] : m) r.emplace(reversed(k), v);
  return r;
}

std::string join_ranks(const std::vector<Index>& ranks, char sep) {
  std::string s;
  for (Index r : ranks) {
    if (!s.empty()) s += sep;
    s += std::to_string(r);
  }
  return s;
}

// Max bond rank after each compression step.
std::vector<Index> step_max_ranks(const SequenceResult& r) {
  std::vector<Index> out;
  for (const auto& bonds : r.rank_trajectory) out.push_back(bonds.empty() ? 1 : *std::max_element(bonds.begin(), bonds.end()));
  return out;
}

// Dense Born marginal from the gate list, conditioned on the postselection.
std::vector<double> oracle_marginal(const Experiment& e, const std::vector<int>& measured,
                                    const std::vector<std::pair<int, int>>& post) {
  if (e.shor_base) {
    if (!post.empty()) throw SchemaError("--oracle with shor does not support --postselect");
    const auto p = dense::shor_input_distribution(*e.shor_base, 15, 4);
    // Index by positions 1..8 read most significant first.
    std::vector<double> q(p.size());
    for (std::uint64_t y = 0; y < p.size(); ++y) q[dense::reverse_bits(y, 8)] = p[y];
    for (int pos : measured) {
      if (pos > 8) throw SchemaError("--oracle with shor covers the input register only");
    }
    return dense::marginal(q, 8, measured);
  }
  if (!e.placements) throw SchemaError(fmt::format("no gate-level oracle for '{}'", e.label));
  if (e.n > dense::kMaxQubits) throw DenseCapExceeded(fmt::format("oracle limited to {} qubits", dense::kMaxQubits));
  const auto p = dense::born_distribution_dense(dense::apply_gates_dense(initial_dense(e), *e.placements));
  const Index m = measured.size();
  std::vector<double> out(std::size_t{1} << m, 0.0);
  double kept = 0.0;
  for (std::uint64_t x = 0; x < p.size(); ++x) {
    auto bit = [&](int pos) { return static_cast<int>((x >> (e.n - pos)) & 1U); };
    bool ok = true;
    for (auto [pos, b] : post) ok = ok && bit(pos) == b;
    if (!ok) continue;
    std::uint64_t key = 0;
    for (int pos : measured) key = (key << 1) | static_cast<std::uint64_t>(bit(pos));
    out[key] += p[x];
    kept += p[x];
  }
  if (kept <= kZeroProbability) throw ZeroProbabilityError("postselection has zero probability in the oracle");
  for (double& v : out) v /= kept;
  return out;
}

json shor_json(const ShorRun& run) {
  json outcomes = json::array();
  for (const ShorOutcome& o : run.outcomes) {
    json f = nullptr;
    if (o.period.factors) f = {o.period.factors->first, o.period.factors->second};
    outcomes.push_back({{"y", o.y},
                        {"probability", o.probability},
                        {"q", o.period.q},
                        {"verified", o.period.verified},
                        {"factors", f}});
  }
  return {{"a", run.a}, {"m", run.m}, {"rank", run.rank}, {"outcomes", outcomes}};
}

int cmd_simulate(const SimulateOptions& o) {
  if (o.spec_path.empty() == o.builtin.empty()) throw SchemaError("give either a circuit file or --builtin");
  Experiment e = o.builtin.empty() ? parse_circuit_spec(read_json_file(o.spec_path)) : builtin_from_arg(o.builtin);

  std::vector<int> measured = e.measured;
  if (!o.measure.empty()) measured = parse_positions(o.measure);
  std::vector<std::pair<int, int>> post;
  if (!o.postselect.empty()) post = parse_assignment(o.postselect);
  for (int pos : measured) {
    if (pos < 1 || static_cast<Index>(pos) > e.n) throw SchemaError(fmt::format("measured position {} out of range", pos));
  }
  for (auto [pos, bit] : post) {
    if (pos < 1 || static_cast<Index>(pos) > e.n) throw SchemaError(fmt::format("postselected position {} out of range", pos));
    if (bit != 0 && bit != 1) throw SchemaError(fmt::format("postselected value at {} must be 0 or 1", pos));
  }
  auto is_fixed = [&](int pos) { return std::any_of(post.begin(), post.end(), [&](auto a) { return a.first == pos; }); };
  if (measured.empty()) {
    for (int pos = 1; pos <= static_cast<int>(e.n); ++pos) {
      if (!is_fixed(pos)) measured.push_back(pos);
    }
  } else if (o.measure.empty()) {
    // Postselected qubits drop out of the builtin's default readout.
    std::erase_if(measured, is_fixed);
  }
  if (measured.empty()) throw SchemaError("nothing left to measure");

  const auto start = std::chrono::steady_clock::now();
  const SequenceResult result = run_gate_sequence(e.sequence, initial_mps(e), e.policy);
  MeasurementPlan plan{measured, post, o.samples, o.seed, true};
  SampleReport report = sample(result.state, plan);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (o.oracle) {
    if (report.probabilities.empty() && !dense_marginal_allowed(measured.size())) {
      throw DenseCapExceeded("measured set too large for the oracle comparison");
    }
    const auto ref = oracle_marginal(e, report.measured, post);
    double worst = 0.0;
    for (std::uint64_t key = 0; key < ref.size(); ++key) {
      const auto it = report.probabilities.find(render_bits(key, report.measured.size()));
      worst = std::max(worst, std::abs((it == report.probabilities.end() ? 0.0 : it->second) - ref[key]));
    }
    std::cerr << fmt::format("oracle: max probability difference {:.3e}\n", worst);
    if (worst > 1e-10) throw NumericalError(fmt::format("oracle mismatch {:.3e}", worst));
  }

  std::optional<ShorRun> shor;
  if (e.shor_base) shor = shor_run(*e.shor_base, 15, e.policy);

  if (e.reversed_readout) {
    report.counts = reverse_keys(report.counts);
    report.probabilities = reverse_keys(report.probabilities);
    std::reverse(report.measured.begin(), report.measured.end());
  }

  if (o.format == "json") {
    json j = report_json(report);
    j["label"] = e.label;
    j["rank_trajectory"] = result.rank_trajectory;
    if (shor) j["shor"] = shor_json(*shor);
    write_output(o.out, j.dump(2) + "\n");
  } else {
    write_output(o.out, report_to_csv(report));
  }

  std::cerr << fmt::format("{}: n={} measured={} samples={} seed={}\n", e.label, e.n, report.measured.size(),
                           o.samples, o.seed);
  std::cerr << fmt::format("ranks: final max {} trajectory {}\n", result.state.max_rank(),
                           join_ranks(step_max_ranks(result), ' '));
  std::cerr << fmt::format("support {} outcomes, {:.3f} s\n",
                           report.probabilities.empty() ? report.counts.size() : report.probabilities.size(), elapsed);
  if (shor) {
    for (const ShorOutcome& s : shor->outcomes) {
      std::cerr << fmt::format("y={:<4} p={:.6f} q={} verified={} factors={}\n", s.y, s.probability, s.period.q,
                               s.period.verified ? "yes" : "no",
                               s.period.factors ? fmt::format("({},{})", s.period.factors->first,
                                                              s.period.factors->second)
                                                : "none");
    }
  }
  return kExitOk;
}

std::vector<Index> parse_sizes(const std::string& text) {
  std::vector<Index> sizes;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw SchemaError(fmt::format("bad size '{}' in --sizes", s));
    return static_cast<Index>(v);
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw SchemaError("--sizes range is start:stop:step");
    const Index a = number(parts[0]);
    const Index b = number(parts[1]);
    const Index step = number(parts[2]);
    if (step == 0 || b < a) throw SchemaError("--sizes range needs step > 0 and stop >= start");
    for (Index v = a; v <= b; v += step) sizes.push_back(v);
    return sizes;
  }
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) sizes.push_back(number(p));
  return sizes;
}

Experiment bench_experiment(const std::string& builtin, std::optional<Index> size) {
  json params = json::object();
  if (size) {
    if (builtin == "qfa-network") {
      params["count"] = *size;
    } else if (builtin == "qft" || builtin == "inverse-qft") {
      params["n"] = *size;
    } else if (builtin == "shor") {
      params["a"] = *size;
    } else {
      throw SchemaError(fmt::format("'{}' takes no size", builtin));
    }
  }
  return builtin_experiment(builtin, params);
}

int cmd_bench(const BenchOptions& o) {
  if (o.repeats == 0) throw SchemaError("--repeats must be positive");
  std::vector<std::optional<Index>> sizes;
  if (o.sizes.empty()) {
    sizes.push_back(std::nullopt);
  } else {
    for (Index s : parse_sizes(o.sizes)) sizes.push_back(s);
  }

  std::string csv = "builtin,size,qubits,samples,repeats,mean_seconds,stddev_seconds,max_rank,rank_trajectory\n";
  for (const auto& size : sizes) {
    const Experiment e = bench_experiment(o.builtin, size);
    std::vector<double> times;
    SequenceResult last{initial_mps(e), {}, {}};
    for (Index rep = 0; rep < o.repeats; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      last = run_gate_sequence(e.sequence, initial_mps(e), e.policy);
      MeasurementPlan plan{e.measured, {}, o.samples, o.seed, false};
      const SampleReport report = sample(last.state, plan);
      times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
      (void)report;
    }
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(times.size());
    double var = 0.0;
    for (double t : times) var += (t - mean) * (t - mean);
    const double stddev = times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1)) : 0.0;
    Index max_rank = last.state.max_rank();
    for (Index r : last.applied_max_ranks) max_rank = std::max(max_rank, r);
    csv += fmt::format("{},{},{},{},{},{:.6g},{:.6g},{},{}\n", o.builtin, size ? std::to_string(*size) : "",
                       e.n, o.samples, o.repeats, mean, stddev, max_rank, join_ranks(step_max_ranks(last), ';'));
    std::cerr << fmt::format("{} size={} qubits={}: {:.4f} s (+/- {:.4f})\n", o.builtin,
                             size ? std::to_string(*size) : "-", e.n, mean, stddev);
  }
  write_output(o.out, csv);
  return kExitOk;
}

int cmd_verify(const VerifyOptions& o) {
  const std::vector<std::string> selected = o.only_given ? o.only : verify_check_names();
  if (selected.empty()) {
    std::cerr << "warning: no checks selected\n";
    std::cout << "0 checks run: PASS (vacuous)\n";
    return kExitOk;
  }
  const auto results = run_verify(selected, o.corrupt_phase);
  bool all = true;
  for (const CheckResult& r : results) {
    all = all && r.passed;
    std::cout << fmt::format("[{}] {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    for (const std::string& n : r.notes) std::cout << "       note: " << n << "\n";
  }
  std::cout << fmt::format("{} checks run: {}\n", results.size(), all ? "PASS" : "FAIL");
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Matrix product state quantum circuit simulator"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a circuit and sample its Born distribution");
  simulate->add_option("spec", sim.spec_path, "Circuit description (JSON)");
  simulate->add_option("--builtin", sim.builtin, "Builtin experiment, e.g. simon, shor:7, qfa-network:2, qft:8:5");
  simulate->add_option("-s,--samples", sim.samples, "Number of samples (0: exact probabilities only)");
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--measure", sim.measure, "Measured positions, e.g. 1-8 or 1,3,5");
  simulate->add_option("--postselect", sim.postselect, "Fixed outcomes, e.g. 9=0,10=1");
  simulate->add_option("-o,--out", sim.out, "Output file (default stdout)");
  simulate->add_option("--format", sim.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  simulate->add_flag("--oracle", sim.oracle, "Compare with the dense simulator")->group("");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time circuit construction and sampling");
  bench_cmd->add_option("--builtin", bench.builtin, "qfa, qfa-network, simon, qft, inverse-qft or shor")->required();
  bench_cmd->add_option("--sizes", bench.sizes, "List (8,16,32) or range start:stop:step");
  bench_cmd->add_option("-s,--samples", bench.samples, "Samples per run");
  bench_cmd->add_option("--repeats", bench.repeats, "Runs per size");
  bench_cmd->add_option("--seed", bench.seed, "RNG seed");
  bench_cmd->add_option("-o,--out", bench.out, "Output CSV (default stdout)");

  VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Run the golden-value checks");
  auto* only = verify->add_option("--only", ver.only, "Subset of table2, simon, qfa, qft")->delimiter(',');
  only->expected(0, -1);
  verify->add_flag("--corrupt-phase", ver.corrupt_phase, "Perturb the QFT check")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSchema;
  }

  try {
    if (*simulate) return cmd_simulate(sim);
    if (*bench_cmd) return cmd_bench(bench);
    ver.only_given = only->count() > 0;
    std::erase(ver.only, std::string{});
    return cmd_verify(ver);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const ZeroProbabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitZeroProbability;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace mpoq::cli
