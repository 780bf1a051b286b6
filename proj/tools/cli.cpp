#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "hesse/poly_core.hpp"
#include "hesse/random.hpp"
#include "hesse/suites.hpp"

namespace hesse::cli {

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::string json_path;
  std::string field = "rational";
  bool symbolic = false;
  int trials = kDefaultTrials;
  bool no_timings = false;
  std::string fault;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Base seed for every random substream");
  cmd->add_option("--json", c.json_path, "Write the JSON report to this file instead of stdout");
  cmd->add_option("--field", c.field, "rational | p:<prime in (2^60, 2^63)> | p:default");
  cmd->add_flag("--symbolic", c.symbolic, "Force exact symbolic Hessians");
  cmd->add_option("--trials", c.trials, "Schwartz-Zippel trials for probabilistic checks")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-timings", c.no_timings, "Omit the timings block");
  cmd->add_option("--inject-fault", c.fault, "Test mode: corrupt-psi")->check(CLI::IsMember({"corrupt-psi"}));
}

Json seeds_block(std::uint64_t seed) {
  return {{"base", seed}, {"derivation", "splitmix64 over (base, FNV-1a(label), index) per named substream"}};
}

void emit(const Json& doc, const Common& c, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (c.json_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.json_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + c.json_path);
  file << text;
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << j.dump(2) << "\n";
}

std::optional<Json> timings_if(const Common& c, Json timings) {
  if (c.no_timings) return std::nullopt;
  return timings;
}

GNSkeleton parse_skeleton(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--types", "'" + text + "' is not n,t,m,hdeg,psideg,d");
    }
  }
  if (v.size() != 6) throw CLI::ValidationError("--types", "'" + text + "' is not n,t,m,hdeg,psideg,d");
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

int cmd_analyze(const Common& c, const std::string& poly_text, const std::string& instance_path, std::size_t nvars,
                int relation_degree, std::ostream& out, std::ostream& err) {
  Poly f;
  Json input = {{"command", "analyze"}};
  try {
    if (!instance_path.empty()) {
      std::ifstream file(instance_path);
      if (!file) throw ReportError("cannot read " + instance_path);
      Json j = Json::parse(file);
      GNInstance inst = build_instance(gn_params_from_json(j.contains("params") ? j.at("params") : j));
      f = inst.f;
      input["instance"] = instance_path;
    } else {
      f = parse(poly_text, "x", nvars);
      input["poly"] = poly_text;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ReportError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GNValidationError& e) {
    for (const auto& v : e.violations()) err << "invalid: " << v << "\n";
    return kValidation;
  }
  input["nvars"] = f.nvars();
  AnalyzeOptions o;
  o.seed = c.seed;
  o.trials = c.trials;
  o.force_symbolic = c.symbolic;
  o.field = FieldSpec::parse(c.field);
  o.relation_degree = relation_degree;
  o.corrupt_psi = c.fault == "corrupt-psi";
  input["field"] = c.field;
  AnalyzeOutcome r;
  try {
    r = analyze(f, o);
  } catch (const NotAForm& e) {
    err << "error: " << e.what() << "\n";
    return kNotAForm;
  }
  emit(make_document(input, r.results, seeds_block(c.seed), timings_if(c, r.timings)), c, out);
  if (r.violation) {
    err << "check violation: see the report\n";
    return kCheckViolation;
  }
  return kOk;
}

int cmd_generate(const Common& c, const GNSkeleton& sk, bool allow_cones, const std::string& out_path,
                 std::ostream& out) {
  GNRandomOptions draw;
  draw.reject_cones = !allow_cones;
  GNInstance inst = random_instance(sk, c.seed, draw);
  auto props = gn_properties(inst, c.seed, c.trials, PrimeField(FieldSpec::parse(c.field).modulus));
  Json instance = gn_instance_to_json(inst);
  if (!out_path.empty()) write_file(out_path, instance);
  Json input = {{"command", "generate"},
                {"n", sk.n}, {"t", sk.t}, {"m", sk.m}, {"hdeg", sk.h_degree}, {"psideg", sk.psi_degree}, {"d", sk.d}};
  Json results = {{"instance", instance}, {"properties", props.json}};
  emit(make_document(input, results, seeds_block(c.seed), std::nullopt), c, out);
  return props.ok ? kOk : kCheckViolation;
}

int cmd_verify(const Common& c, const std::string& suite, std::optional<std::size_t> count, std::ostream& out,
               std::ostream& err) {
  SuiteOptions o;
  o.seed = c.seed;
  o.count = count;
  o.trials = c.trials;
  o.field = PrimeField(FieldSpec::parse(c.field).modulus);
  o.corrupt_psi = c.fault == "corrupt-psi";
  SuiteResult r = run_suite(suite, o);
  Json input = {{"command", "verify"}, {"suite", suite}, {"fault", c.fault}};
  if (count) input["count"] = *count;
  emit(make_document(input, r.results, seeds_block(c.seed), timings_if(c, r.timings)), c, out);
  if (!r.passed) {
    err << "suite " << suite << " failed\n";
    return kCheckViolation;
  }
  return kOk;
}

int cmd_catalog(const Common& c, const std::vector<std::string>& types, std::size_t count, std::ostream& out) {
  std::vector<GNSkeleton> skeletons;
  std::vector<std::string> violations;
  for (const auto& t : types) {
    auto sk = parse_skeleton(t);
    for (const auto& v : validate_skeleton(sk)) violations.push_back(t + ": " + v);
    skeletons.push_back(sk);
  }
  if (!violations.empty()) throw GNValidationError(violations);
  Json entries = Json::array();
  GNRandomOptions draw;
  draw.reject_cones = false;
  for (const auto& sk : skeletons)
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t s = derive_seed(c.seed, "catalog", entries.size());
      GNInstance inst = random_instance(sk, s, draw);
      auto props = gn_properties(inst, s, c.trials, PrimeField(FieldSpec::parse(c.field).modulus));
      entries.push_back({{"type", {{"n", sk.n}, {"t", sk.t}, {"m", sk.m}, {"s", inst.s}}},
                         {"d", sk.d},
                         {"s", inst.s},
                         {"mu", inst.mu},
                         {"seed", s},
                         {"cone", props.json["cone"]},
                         {"core_multiplicity", props.json["core_multiplicity"]},
                         {"hessian_vanishes", props.json["hessian"]["vanishes"]},
                         {"hessian_mode", props.json["hessian"]["mode"]},
                         {"f", to_string(inst.f)}});
    }
  emit(entries, c, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vanishing-Hessian hypersurface laboratory", "hesse-lab"};
  app.require_subcommand(1);
  Common common;

  auto* analyze_cmd = app.add_subcommand("analyze", "Hessian, cone and polar analysis of one form");
  std::string poly_text, instance_path;
  std::size_t nvars = 1;
  int relation_degree = kDefaultRelationDegree;
  auto* poly_opt = analyze_cmd->add_option("--poly", poly_text, "Form in x0, x1, ...");
  auto* inst_opt = analyze_cmd->add_option("--instance", instance_path, "Gordan-Noether instance file from generate");
  poly_opt->excludes(inst_opt);
  analyze_cmd->add_option("--nvars", nvars, "Minimum number of variables");
  analyze_cmd->add_option("--relation-degree", relation_degree, "Largest polar relation degree to search")
      ->check(CLI::Range(1, 8));
  add_common(analyze_cmd, common);

  auto* generate_cmd = app.add_subcommand("generate", "Build a seeded Gordan-Noether instance");
  GNSkeleton sk;
  bool allow_cones = false;
  std::string out_path;
  generate_cmd->add_option("--n", sk.n)->required();
  generate_cmd->add_option("--t", sk.t)->required();
  generate_cmd->add_option("--m", sk.m)->required();
  generate_cmd->add_option("--hdeg", sk.h_degree)->required();
  generate_cmd->add_option("--psideg", sk.psi_degree)->required();
  generate_cmd->add_option("--d", sk.d)->required();
  generate_cmd->add_flag("--allow-cones", allow_cones, "Keep draws that turn out to be cones");
  generate_cmd->add_option("--out", out_path, "Write the instance JSON here");
  add_common(generate_cmd, common);

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  std::optional<std::size_t> count;
  verify_cmd->add_option("--suite", suite, "lowdim | gn | psi | p4 | kernels | all")->required();
  verify_cmd->add_option("--count", count, "Instances per family (suite default when omitted)");
  add_common(verify_cmd, common);

  auto* catalog_cmd = app.add_subcommand("catalog", "Seeded catalog of Gordan-Noether instances");
  std::vector<std::string> types;
  std::size_t per_type = 1;
  catalog_cmd->add_option("--types", types, "Skeletons n,t,m,hdeg,psideg,d (repeatable)")->required();
  catalog_cmd->add_option("--count", per_type, "Instances per skeleton");
  add_common(catalog_cmd, common);

  std::vector<std::string> argv_store{"hesse-lab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (suite.size() && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
      throw UnknownSuite("unknown suite '" + suite + "'");
    if (*analyze_cmd && poly_text.empty() && instance_path.empty())
      throw CLI::RequiredError("--poly or --instance");
    (void)FieldSpec::parse(common.field);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(common, poly_text, instance_path, nvars, relation_degree, out, err);
    if (*generate_cmd) return cmd_generate(common, sk, allow_cones, out_path, out);
    if (*verify_cmd) return cmd_verify(common, suite, count, out, err);
    return cmd_catalog(common, types, per_type, out);
  } catch (const GNValidationError& e) {
    for (const auto& v : e.violations()) err << "invalid: " << v << "\n";
    return kValidation;
  } catch (const RetriesExhausted& e) {
    err << "error: " << e.what() << "\n";
    return kRetriesExhausted;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace hesse::cli
