// Command-line front end: simulation, estimation, inequality tests, CbD, and
// randomized quantum property suites wired into reproducible report
// pipelines.
//
// Exit codes: 0 ok, 1 property violation (or internal failure), 2 usage or
// parse error, 3 data insufficiency.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctk/cbd.hpp"
#include "ctk/estimation.hpp"
#include "ctk/inequalities.hpp"
#include "ctk/json_io.hpp"
#include "ctk/linprog.hpp"
#include "ctk/parallel.hpp"
#include "ctk/probability.hpp"
#include "ctk/quantum.hpp"
#include "ctk/rng.hpp"
#include "ctk/simulator.hpp"
#include "ctk/version.hpp"

namespace {

using ctk::io::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInsufficient = 3;

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ctk::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct SimulateArgs {
  std::string mode = "clean";
  std::vector<double> angles_a;
  std::vector<double> angles_b;
  long trials = 1000;
  std::uint64_t seed = 0;
  std::string schedule = "uniform";
  double drift_epsilon = 0.0;
  double crosstalk_strength = 0.0;
  std::string out;
};

int run_simulate(const SimulateArgs& args) {
  try {
    ctk::sim::SimulationConfig config;
    config.mode = ctk::io::mode_from_name(args.mode);
    config.setting_schedule = ctk::io::schedule_from_name(args.schedule);
    if (!args.angles_a.empty()) config.angles_a = {args.angles_a[0], args.angles_a[1]};
    if (!args.angles_b.empty()) config.angles_b = {args.angles_b[0], args.angles_b[1]};
    config.n_trials = args.trials;
    config.seed = args.seed;
    config.drift_epsilon = args.drift_epsilon;
    config.crosstalk_strength = args.crosstalk_strength;
    config.validate();

    std::vector<ctk::est::ClickRecord> records = ctk::sim::simulate(config);

    std::ofstream csv(args.out, std::ios::binary);
    if (!csv) throw ctk::Error("cannot write '" + args.out + "'");
    ctk::est::write_click_csv(csv, records);
    csv.close();

    json meta = ctk::io::to_json(config);
    meta["tool_version"] = ctk::kToolVersion;
    meta["output"] = args.out;
    std::string meta_path = args.out + ".meta.json";
    std::ofstream mf(meta_path, std::ios::binary);
    if (!mf) throw ctk::Error("cannot write '" + meta_path + "'");
    mf << meta.dump(2) << '\n';

    std::cerr << "wrote " << records.size() << " records to " << args.out << " (metadata "
              << meta_path << ")\n";
    return kExitOk;
  } catch (const ctk::Error& e) {
    std::cerr << "simulate: " << e.what() << '\n';
    return kExitUsage;
  }
}

struct AnalyzeArgs {
  std::string in;
  double alpha = 0.01;
  std::string format = "json";
  bool force_fine = false;
  bool dump_coupling = false;
  std::string meta;
};

void print_text_report(const ctk::est::IngestResult& ingested,
                       const ctk::est::SignalingReport& signaling,
                       const ctk::ineq::ChshReport& chsh_rep, const ctk::ineq::BdkReport& bdk_rep,
                       const json& fine, const ctk::cbd::CbdReport& cbd_rep,
                       const json& provenance,
                       const std::optional<ctk::sim::SimulationConfig>& meta_config) {
  std::ostream& os = std::cout;
  os << "contexts (mean_a, mean_b, corr, n):\n";
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      const auto& s = ingested.system.at(i, j);
      os << "  C" << i << j << ": " << s.mean_a << ", " << s.mean_b << ", " << s.corr << ", "
         << s.n_trials << '\n';
    }
  os << "signaling: delta_a=[" << signaling.delta_a[0] << ", " << signaling.delta_a[1]
     << "] delta_b=[" << signaling.delta_b[0] << ", " << signaling.delta_b[1]
     << "] delta0=" << signaling.delta0 << '\n';
  os << "  z (a1,a2,b1,b2): ";
  for (double z : signaling.z_scores) os << z << ' ';
  os << "\n  p (a1,a2,b1,b2): ";
  for (double p : signaling.p_values) os << p << ' ';
  os << '\n';
  os << "chsh: values=[";
  for (std::size_t k = 0; k < 4; ++k) os << chsh_rep.values[k] << (k < 3 ? ", " : "");
  os << "] s_max=" << chsh_rep.s_max << " satisfied=" << (chsh_rep.satisfied ? "yes" : "no")
     << '\n';
  os << "bdk: lhs=" << bdk_rep.lhs << " delta0=" << bdk_rep.delta0
     << " contextual=" << (bdk_rep.contextual ? "yes" : "no") << '\n';
  if (fine.is_string())
    os << "fine: " << fine.get<std::string>() << '\n';
  else
    os << "fine: feasible=" << (fine.at("feasible").get<bool>() ? "yes" : "no") << '\n';
  os << "cbd: delta_min=" << cbd_rep.delta_min << " delta0=" << cbd_rep.delta0
     << " genuine=" << cbd_rep.genuine << " contextual=" << (cbd_rep.contextual ? "yes" : "no")
     << '\n';

  if (meta_config) {
    os << "correlation vs angle (i, j, theta, phi, theta-phi, corr, -cos 2(theta-phi)):\n";
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j) {
        double theta = meta_config->angles_a[static_cast<std::size_t>(i - 1)];
        double phi = meta_config->angles_b[static_cast<std::size_t>(j - 1)];
        os << "  " << i << ' ' << j << ' ' << theta << ' ' << phi << ' ' << theta - phi << ' '
           << ingested.system.at(i, j).corr << ' ' << -std::cos(2.0 * (theta - phi)) << '\n';
      }
  }
  os << "provenance: input=" << provenance.at("input").get<std::string>()
     << " hash=" << provenance.at("config_hash").get<std::string>()
     << " version=" << provenance.at("tool_version").get<std::string>() << '\n';
}

int run_analyze(const AnalyzeArgs& args) {
  try {
    std::string bytes = read_file_bytes(args.in);
    std::istringstream stream(bytes);
    std::vector<ctk::est::ClickRecord> records = ctk::est::read_click_csv(stream);
    ctk::est::IngestResult ingested = ctk::est::ingest(records);

    ctk::est::SignalingReport signaling = ctk::est::signaling_report(ingested);
    ctk::ineq::ChshReport chsh_rep = ctk::ineq::chsh(ingested.system);
    ctk::ineq::BdkReport bdk_rep = ctk::ineq::bdk(ingested.system, signaling);
    ctk::cbd::CbdReport cbd_rep = ctk::cbd::delta_min(ingested.system);

    double min_p = 1.0;
    for (double p : signaling.p_values) min_p = std::min(min_p, p);
    bool significant = min_p < args.alpha;

    json fine;
    if (significant && !args.force_fine) {
      fine = "skipped: signaling";
    } else {
      // The oracle demands exact marginal consistency; empirical stats are
      // projected onto the no-signaling manifold first.
      ctk::CyclicSystem projected = ctk::est::symmetrize_no_signaling(ingested);
      fine = ctk::io::to_json(ctk::ineq::jpd_feasible(projected));
    }

    json provenance{{"input", args.in},
                    {"config_hash", ctk::io::fnv1a64_hex(bytes)},
                    {"tool_version", ctk::kToolVersion}};

    std::optional<ctk::sim::SimulationConfig> meta_config;
    if (!args.meta.empty())
      meta_config = ctk::io::config_from_json(json::parse(read_file_bytes(args.meta)));

    if (args.format == "text") {
      print_text_report(ingested, signaling, chsh_rep, bdk_rep, fine, cbd_rep, provenance,
                        meta_config);
    } else {
      json report{{"system", ctk::io::to_json(ingested.system)},
                  {"signaling", ctk::io::to_json(signaling)},
                  {"chsh", ctk::io::to_json(chsh_rep)},
                  {"bdk", ctk::io::to_json(bdk_rep)},
                  {"fine", fine},
                  {"cbd", ctk::io::to_json(cbd_rep, args.dump_coupling)},
                  {"provenance", provenance}};
      std::cout << report.dump(2) << '\n';
    }
    return kExitOk;
  } catch (const ctk::MalformedRecord& e) {
    std::cerr << "analyze: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ctk::MissingContext& e) {
    std::cerr << "analyze: " << e.what() << '\n';
    return kExitInsufficient;
  } catch (const ctk::InsufficientData& e) {
    std::cerr << "analyze: " << e.what() << '\n';
    return kExitInsufficient;
  } catch (const ctk::NumericalBreakdown& e) {
    std::cerr << "analyze: " << e.what() << '\n';
    return kExitViolation;
  } catch (const ctk::Error& e) {
    std::cerr << "analyze: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run_cbd(const std::string& in, bool dump_coupling) {
  try {
    std::string bytes = read_file_bytes(in);
    std::istringstream stream(bytes);
    ctk::est::IngestResult ingested = ctk::est::ingest(ctk::est::read_click_csv(stream));
    ctk::cbd::CbdReport rep = ctk::cbd::delta_min(ingested.system);
    std::cout << ctk::io::to_json(rep, dump_coupling).dump(2) << '\n';
    return kExitOk;
  } catch (const ctk::MalformedRecord& e) {
    std::cerr << "cbd: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ctk::MissingContext& e) {
    std::cerr << "cbd: " << e.what() << '\n';
    return kExitInsufficient;
  } catch (const ctk::NumericalBreakdown& e) {
    std::cerr << "cbd: " << e.what() << '\n';
    return kExitViolation;
  } catch (const ctk::Error& e) {
    std::cerr << "cbd: " << e.what() << '\n';
    return kExitUsage;
  }
}

// ---------------------------------------------------------------------------
// Randomized quantum property suites

struct SampleOutcome {
  bool ok = true;
  json violation;
};

ctk::quantum::BellOperatorBundle random_local_bundle(int dim_a, int dim_b,
                                                     ctk::rng::SplitMix64& stream) {
  using namespace ctk::quantum;
  DichotomicObservable a1 = random_dichotomic(dim_a, stream);
  DichotomicObservable a2 = random_dichotomic(dim_a, stream);
  DichotomicObservable b1 = random_dichotomic(dim_b, stream);
  DichotomicObservable b2 = random_dichotomic(dim_b, stream);
  return bell_operator(local_embed(a1, Side::A, dim_a, dim_b),
                       local_embed(a2, Side::A, dim_a, dim_b),
                       local_embed(b1, Side::B, dim_a, dim_b),
                       local_embed(b2, Side::B, dim_a, dim_b));
}

SampleOutcome check_landau(std::size_t index, std::uint64_t seed) {
  ctk::rng::SplitMix64 stream = ctk::rng::derive_stream(seed, 100 + index);
  // Alternate 4- and 8-dimensional local embeddings.
  int dims[3][2] = {{2, 2}, {2, 4}, {4, 2}};
  int da = dims[index % 3][0], db = dims[index % 3][1];
  auto bundle = random_local_bundle(da, db, stream);
  double residual = ctk::quantum::landau_residual(bundle);
  SampleOutcome out;
  if (residual > 1e-9) {
    out.ok = false;
    out.violation = json{{"check", "landau"},
                         {"sample", index},
                         {"residual", residual},
                         {"bell_op", ctk::io::to_json(bundle.bell_op.matrix())}};
  }
  return out;
}

SampleOutcome check_tsirelson(std::size_t index, std::uint64_t seed) {
  ctk::rng::SplitMix64 stream = ctk::rng::derive_stream(seed, 100 + index);
  int dims[3][2] = {{2, 2}, {2, 4}, {4, 2}};
  int da = dims[index % 3][0], db = dims[index % 3][1];
  auto bundle = random_local_bundle(da, db, stream);
  auto rho = ctk::quantum::random_density(da * db, stream);
  double value = 2.0 * std::abs(ctk::quantum::chsh_expectation(rho, bundle));
  SampleOutcome out;
  if (value > 2.0 * std::sqrt(2.0) + 1e-9) {
    out.ok = false;
    out.violation = json{{"check", "tsirelson"},
                         {"sample", index},
                         {"chsh_value", value},
                         {"rho", ctk::io::to_json(rho.matrix())}};
  }
  return out;
}

SampleOutcome check_theorem1(std::size_t index, std::uint64_t seed) {
  using namespace ctk::quantum;
  ctk::rng::SplitMix64 stream = ctk::rng::derive_stream(seed, 100 + index);

  DichotomicObservable a1 = random_dichotomic(2, stream);
  DichotomicObservable a2 = random_dichotomic(2, stream);
  DichotomicObservable b1 = random_dichotomic(2, stream);
  DichotomicObservable b2 = random_dichotomic(2, stream);
  // A third of the samples get a compatible pair on one side so both arms of
  // the equivalence are exercised.
  if (index % 3 == 1) {
    Matrix basis = random_unitary(2, stream);
    a1 = random_dichotomic_in_basis(basis, stream);
    a2 = random_dichotomic_in_basis(basis, stream);
  } else if (index % 3 == 2) {
    Matrix basis = random_unitary(2, stream);
    b1 = random_dichotomic_in_basis(basis, stream);
    b2 = random_dichotomic_in_basis(basis, stream);
  }

  IncompatibilityVerdict v = local_incompatibility_criterion(a1, a2, b1, b2);
  bool norm_exceeds = v.bell_norm > 1.0 + 1e-9;
  SampleOutcome out;
  if (v.violates != norm_exceeds) {
    out.ok = false;
    out.violation = json{{"check", "theorem1"},     {"sample", index},
                         {"violates", v.violates},  {"bell_norm", v.bell_norm},
                         {"norm_a", v.norm_a},      {"norm_b", v.norm_b},
                         {"a1", ctk::io::to_json(a1.matrix())}, {"a2", ctk::io::to_json(a2.matrix())},
                         {"b1", ctk::io::to_json(b1.matrix())}, {"b2", ctk::io::to_json(b2.matrix())}};
  }
  return out;
}

SampleOutcome check_nosignaling(std::size_t index, std::uint64_t seed) {
  ctk::rng::SplitMix64 stream = ctk::rng::derive_stream(seed, 100 + index);
  ctk::quantum::QuadrupleWithState q = ctk::quantum::random_nonlocal_quadruple(stream);
  ctk::CyclicSystem system = ctk::quantum::quantum_system(q.rho, q.a1, q.a2, q.b1, q.b2);
  double delta0 = ctk::est::signaling_deltas(system).delta0;
  SampleOutcome out;
  if (delta0 > 1e-9) {
    out.ok = false;
    out.violation = json{{"check", "nosignaling"},
                         {"sample", index},
                         {"delta0", delta0},
                         {"system", ctk::io::to_json(system)}};
  }
  return out;
}

int run_quantum(const std::string& check, long samples, std::uint64_t seed) {
  SampleOutcome (*fn)(std::size_t, std::uint64_t) = nullptr;
  if (check == "landau") fn = check_landau;
  else if (check == "tsirelson") fn = check_tsirelson;
  else if (check == "theorem1") fn = check_theorem1;
  else if (check == "nosignaling") fn = check_nosignaling;
  else {
    std::cerr << "quantum: unknown check '" << check
              << "' (expected landau, tsirelson, theorem1, or nosignaling)\n";
    return kExitUsage;
  }
  if (samples < 1) {
    std::cerr << "quantum: --samples must be >= 1\n";
    return kExitUsage;
  }

  std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(samples));
  ctk::parallel_for(static_cast<std::size_t>(samples),
                    [&](std::size_t i) { outcomes[i] = fn(i, seed); });

  long passed = 0;
  const SampleOutcome* first_failure = nullptr;
  for (const SampleOutcome& o : outcomes) {
    if (o.ok) ++passed;
    else if (!first_failure) first_failure = &o;
  }
  std::cout << "check " << check << ": " << passed << "/" << samples << " passed\n";
  if (first_failure) {
    std::cerr << first_failure->violation.dump(2) << '\n';
    return kExitViolation;
  }
  return kExitOk;
}

int run_prbox() {
  ctk::CyclicSystem system = ctk::sim::pr_box_system();
  ctk::est::SignalingReport signaling = ctk::est::signaling_deltas(system);
  json report{{"system", ctk::io::to_json(system)},
              {"signaling", ctk::io::to_json(signaling)},
              {"chsh", ctk::io::to_json(ctk::ineq::chsh(system))},
              {"bdk", ctk::io::to_json(ctk::ineq::bdk(system, signaling))},
              {"fine", ctk::io::to_json(ctk::ineq::jpd_feasible(system))},
              {"cbd", ctk::io::to_json(ctk::cbd::delta_min(system))}};
  std::cout << report.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-test contextuality and signaling analysis toolkit"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "generate Bohm-Bell click data");
  sim_cmd->add_option("--mode", sim_args.mode, "clean | crosstalk | drift")->capture_default_str();
  sim_cmd->add_option("--angles-a", sim_args.angles_a, "two analyzer angles (radians)")
      ->delimiter(',')
      ->expected(2);
  sim_cmd->add_option("--angles-b", sim_args.angles_b, "two analyzer angles (radians)")
      ->delimiter(',')
      ->expected(2);
  sim_cmd->add_option("--trials", sim_args.trials, "number of trials")->capture_default_str();
  sim_cmd->add_option("--seed", sim_args.seed, "64-bit seed")->capture_default_str();
  sim_cmd->add_option("--schedule", sim_args.schedule, "uniform | roundrobin")
      ->capture_default_str();
  sim_cmd->add_option("--drift-epsilon", sim_args.drift_epsilon, "drift mixing weight in [0,1]")
      ->capture_default_str();
  sim_cmd->add_option("--crosstalk-strength", sim_args.crosstalk_strength,
                      "angle crosstalk in [0,1]")
      ->capture_default_str();
  sim_cmd->add_option("--out", sim_args.out, "output CSV path (metadata at <out>.meta.json)")
      ->required();

  AnalyzeArgs an_args;
  CLI::App* an_cmd = app.add_subcommand("analyze", "full report from a click CSV");
  an_cmd->add_option("--in", an_args.in, "input CSV")->required();
  an_cmd->add_option("--alpha", an_args.alpha, "signaling significance level")
      ->capture_default_str();
  an_cmd->add_option("--format", an_args.format, "json | text")->capture_default_str();
  an_cmd->add_flag("--force-fine", an_args.force_fine,
                   "run the JPD oracle (on the no-signaling projection) even when signaling is "
                   "statistically significant");
  an_cmd->add_flag("--dump-coupling", an_args.dump_coupling,
                   "include the 256-atom argmin coupling in the report");
  an_cmd->add_option("--meta", an_args.meta,
                     "simulation metadata JSON; enables the correlation-vs-angle table in text "
                     "format");

  std::string cbd_in;
  bool cbd_dump = false;
  CLI::App* cbd_cmd = app.add_subcommand("cbd", "coupling-based contextuality measure only");
  cbd_cmd->add_option("--in", cbd_in, "input CSV")->required();
  cbd_cmd->add_flag("--dump-coupling", cbd_dump, "include the argmin coupling");

  std::string q_check;
  long q_samples = 100;
  std::uint64_t q_seed = 0;
  CLI::App* q_cmd = app.add_subcommand("quantum", "randomized operator-algebra property suites");
  q_cmd->add_option("--check", q_check, "landau | tsirelson | theorem1 | nosignaling")->required();
  q_cmd->add_option("--samples", q_samples, "instances to run")->capture_default_str();
  q_cmd->add_option("--seed", q_seed, "suite seed")->capture_default_str();

  app.add_subcommand("prbox", "report for the algebraic-maximum no-signaling system");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim_cmd->parsed()) return run_simulate(sim_args);
    if (an_cmd->parsed()) return run_analyze(an_args);
    if (cbd_cmd->parsed()) return run_cbd(cbd_in, cbd_dump);
    if (q_cmd->parsed()) return run_quantum(q_check, q_samples, q_seed);
    return run_prbox();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
}
