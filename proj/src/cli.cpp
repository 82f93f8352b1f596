#include "qlogic/cli.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qlogic/error.hpp"
#include "qlogic/io.hpp"

namespace qlogic::cli {

namespace {

using io::Json;

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string num(double d) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, d);
  return {buf, res.ptr};
}

void merge_into(Json& j, const Json& fields) {
  for (const auto& [k, v] : fields.items()) j[k] = v;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw InputError("WriteFailed", "cannot write '" + path + "'", {{"file", path}});
}

std::uint64_t parse_seed(const std::string& text, const char* origin) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw InputError("InvalidSeed", std::string(origin) + " is not an unsigned 64-bit integer", {{"value", text}});
  return v;
}

// Per-invocation state: what was read, what was written, where output goes.
struct Run {
  std::ostream& out;
  std::ostream& err;
  std::string command;
  std::string out_path, manifest_path;
  std::vector<std::string> inputs, outputs;
  std::string digest_data;
  std::uint64_t seed = 0;

  Json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("FileNotFound", "cannot open '" + path + "'", {{"file", path}});
    std::ostringstream ss;
    ss << in.rdbuf();
    const auto text = ss.str();
    inputs.push_back(path);
    digest_data += path + '\0' + text + '\0';
    return io::parse_json(text, path);
  }

  Json report() const {
    Json j;
    j["schema"] = "v1";
    j["command"] = command;
    return j;
  }

  void emit_text(const std::string& text) {
    if (out_path.empty()) {
      out << text;
    } else {
      write_file(out_path, text);
      outputs.push_back(out_path);
    }
  }
  void emit(const Json& j) { emit_text(j.dump(2) + "\n"); }

  void write_side_file(const std::string& path, const std::string& text) {
    write_file(path, text);
    outputs.push_back(path);
  }
};

// -- theories and configs shared by bb84 subcommands --

Theory default_qubit_theory() {
  const double r = 1 / std::sqrt(2.0);
  QuantumTheory t;
  t.rho = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  auto proj = [](Eigen::Vector2cd v) { return Eigen::MatrixXcd(v * v.adjoint()); };
  t.classes["Z"] = {kBinaryAnswers, {proj({1, 0}), proj({0, 1})}};
  t.classes["X"] = {kBinaryAnswers, {proj({r, r}), proj({r, -r})}};
  return Theory::quantum(std::move(t));
}

struct Bb84Options {
  std::string theory_path, space_path, model = "quantum", eve = "none", eve_class, csv_path;
  std::uint64_t rounds = 10000;
  std::optional<double> eve_rate;
  double threshold = 0.10, sample_fraction = 0.5;
  std::vector<std::string> classes;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* app, bool with_csv) {
    app->add_option("--theory", theory_path, "theory file (default: qubit with classes Z, X)");
    app->add_option("--space", space_path, "question space; protocol classes must be non-implied in its quotient");
    app->add_option("--model", model, "quantum or flip (flip ignores --theory)")
        ->check(CLI::IsMember({"quantum", "flip"}));
    app->add_option("--rounds", rounds, "protocol rounds")->capture_default_str();
    app->add_option("--eve", eve,
                    "none | intercept_resend_uniform | intercept_resend_fixed | intercept_resend_known")
        ->capture_default_str();
    app->add_option("--eve-class", eve_class, "class Eve asks under intercept_resend_fixed");
    app->add_option("--eve-rate", eve_rate, "interception probability (default 1 when --eve is set)");
    app->add_option("--threshold", threshold, "abort threshold on sampled QBER")->capture_default_str();
    app->add_option("--sample-fraction", sample_fraction, "fraction of sifted rounds sacrificed")
        ->capture_default_str();
    app->add_option("--classes", classes, "comma-separated protocol classes")->delimiter(',');
    app->add_option("--seed", seed, "RNG seed (fallback: QLL_SEED, then 0)");
    if (with_csv) app->add_option("--csv", csv_path, "write per-round records as CSV");
  }
};

struct Bb84Setup {
  Theory theory;
  ProtocolConfig config;
  std::optional<Quotient> quotient;
};

Bb84Setup bb84_setup(Run& run, const Bb84Options& o) {
  ProtocolConfig c;
  c.rounds = o.rounds;
  c.eve = parse_eve_strategy(o.eve);
  c.eve_class = o.eve_class;
  c.eve_rate = o.eve_rate.value_or(c.eve == EveStrategy::None ? 0.0 : 1.0);
  c.abort_threshold = o.threshold;
  c.sample_fraction = o.sample_fraction;
  c.seed = run.seed;
  c.classes = o.classes;

  std::optional<Theory> theory;
  if (o.model == "flip") {
    if (c.classes.empty()) c.classes = {"A", "B"};
    theory = flip_protocol_theory(c.classes);
  } else if (!o.theory_path.empty()) {
    theory = io::parse_theory(run.load(o.theory_path));
  } else {
    theory = default_qubit_theory();
  }
  if (c.classes.empty())
    for (const auto& cls : theory->classes())
      if (cls != kTautology && cls != kAbsurdity) c.classes.push_back(cls);
  std::optional<Quotient> quotient;
  if (!o.space_path.empty()) quotient = lift_quotient(io::parse_space(run.load(o.space_path)));
  return {std::move(*theory), std::move(c), std::move(quotient)};
}

// -- command bodies; each returns the exit code --

int lattice_check(Run& run, const std::string& path) {
  const auto file = io::parse_lattice_file(run.load(path));
  auto j = run.report();
  std::optional<Lattice> lattice;
  try {
    lattice = build_lattice(file.spec);
  } catch (const CheckError& e) {
    if (e.code() != "NotALattice") throw;
    j["is_lattice"] = false;
    j["error"] = {{"code", e.code()}, {"message", e.what()}, {"details", e.details()}};
    run.emit(j);
    return 1;
  }
  const auto& l = *lattice;
  std::optional<OrthoMap> ortho;
  if (file.ortho) ortho = make_ortho(l, *file.ortho);
  ClassificationReport r;
  try {
    r = classify(l, ortho);
  } catch (const CheckError& e) {
    j["is_lattice"] = true;
    j["error"] = {{"code", e.code()}, {"message", e.what()}, {"details", e.details()}};
    run.emit(j);
    return 1;
  }
  merge_into(j, io::to_json(l, r));
  if (r.ortho && l.size() <= 32) {
    const auto homs = two_valued_homomorphisms(l, *r.ortho);
    j["two_valued_homomorphisms"] = {{"count", homs.size()},
                                     {"full_set", has_full_set_of_homomorphisms(l, *r.ortho)}};
  } else {
    j["two_valued_homomorphisms"] = nullptr;
  }
  j["birkhoff"] = r.is_distributive ? io::to_json(l, birkhoff_representation(l)) : Json();
  run.emit(j);
  return 0;
}

int lattice_gen(Run& run, const std::string& family_name, std::optional<unsigned> n) {
  const auto family = parse_family(family_name);
  if (family_is_sized(family) && !n)
    throw InputError("MissingSize", "family '" + family_name + "' needs a size", {{"family", family_name}});
  const auto inst = generate_family(family, n.value_or(0));
  auto j = run.report();
  merge_into(j, io::to_json(io::LatticeFile{inst.spec, inst.ortho}));
  run.emit(j);
  return 0;
}

int space_check(Run& run, const std::string& path, const std::vector<std::string>& merge_args) {
  std::vector<std::pair<std::string, std::string>> merges;
  for (const auto& m : merge_args) {
    const auto comma = m.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == m.size())
      throw InputError("InvalidMerge", "merges are written classA,classB", {{"merge", m}});
    merges.emplace_back(m.substr(0, comma), m.substr(comma + 1));
  }
  const auto space = io::parse_space(run.load(path));
  const auto orth = check_sublattice_orthogonality(space);
  const auto pres = check_structure_preservation(space);
  const auto joins = detect_class_joins(space, merges);

  auto j = run.report();
  j["contexts"] = space.contexts().size();
  j["runs"] = space.runs();
  j["orthogonality"] = io::to_json(orth);
  j["structure_preservation"] = io::to_json(pres);
  j["class_joins"] = io::to_json(joins);
  try {
    j["quotient"] = io::to_json(lift_quotient(space));
  } catch (const CheckError& e) {
    j["quotient"] = {{"error", e.code()}, {"message", e.what()}};
  }
  Json resolution = Json::object();
  for (const auto& r : space.runs()) {
    try {
      resolution[r] = {{"restriction", resolution_restriction(space, r)},
                       {"maximal_refinements", enumerate_refinements(space, r).size()}};
    } catch (const CheckError& e) {
      resolution[r] = {{"error", e.code()}, {"message", e.what()}};
    }
  }
  j["resolution"] = std::move(resolution);
  run.emit(j);
  return orth.ok() && pres.ok() && joins.ok() ? 0 : 1;
}

int theory_check(Run& run, const std::string& path, const std::string& space_path, const std::string& domain_path,
                 double tolerance) {
  const auto theory = io::parse_theory(run.load(path));
  const auto domain = io::parse_domain(run.load(domain_path));
  if (!space_path.empty()) {
    const auto space = io::parse_space(run.load(space_path));
    const auto known = space.class_ids();
    for (const auto& seq : domain)
      for (const auto& q : seq)
        if (!std::binary_search(known.begin(), known.end(), q.class_id))
          throw InputError("UnknownClass", "class '" + q.class_id + "' does not occur in the space",
                           {{"class", q.class_id}});
  }
  auto j = run.report();
  j["kind"] = theory.kind();
  j["classes"] = theory.classes();
  j["contextuality"] = io::to_json(is_noncontextual(theory, domain, tolerance));
  auto seqs = Json::array();
  for (const auto& seq : domain)
    seqs.push_back({{"sequence", class_sequence(seq)},
                    {"distribution", io::to_json(theory.evaluate(seq))},
                    {"isolation", io::to_json(is_isolated(theory, seq, tolerance))}});
  j["sequences"] = std::move(seqs);
  run.emit(j);
  return 0;
}

int theory_gleason(Run& run, unsigned states, unsigned bases) {
  std::mt19937_64 rng(run.seed);
  double min_value = 1, max_sum_error = 0, max_residual = 0, max_reconstruction = 0;
  int min_rank = 9;
  for (unsigned s = 0; s < states; ++s) {
    const auto rho = random_density_matrix(rng);
    std::vector<Basis3> bs;
    for (unsigned b = 0; b < bases; ++b) bs.push_back(random_basis(rng));
    const auto frame = gleason_frame_check(rho, bs);
    min_value = std::min(min_value, frame.min_value);
    max_sum_error = std::max(max_sum_error, frame.max_sum_error);
    const auto fit = fit_density_matrix(bs, frame.values);
    max_residual = std::max(max_residual, fit.residual);
    max_reconstruction = std::max(max_reconstruction, (fit.rho - rho).norm());
    min_rank = std::min(min_rank, fit.rank);
  }
  auto j = run.report();
  j["seed"] = run.seed;
  j["states"] = states;
  j["bases_per_state"] = bases;
  j["min_frame_value"] = min_value;
  j["max_basis_sum_error"] = max_sum_error;
  j["max_fit_residual"] = max_residual;
  j["max_reconstruction_error"] = max_reconstruction;
  j["min_design_rank"] = min_rank;
  const bool ok = min_value >= -1e-12 && max_sum_error <= 1e-12 && max_residual < 1e-9;
  j["ok"] = ok;
  run.emit(j);
  return ok ? 0 : 1;
}

int bb84_run(Run& run, const Bb84Options& o) {
  const auto setup = bb84_setup(run, o);
  const auto result = run_protocol(setup.theory, setup.config, setup.quotient ? &*setup.quotient : nullptr);
  auto j = run.report();
  j["model"] = o.model;
  j["config"] = io::to_json(setup.config);
  j["stats"] = io::to_json(result.stats);
  if (!o.csv_path.empty()) run.write_side_file(o.csv_path, io::records_csv(result.records, setup.config.classes));
  run.emit(j);
  return 0;
}

int bb84_curve(Run& run, const Bb84Options& o, const std::vector<double>& rates, unsigned repetitions) {
  const auto setup = bb84_setup(run, o);
  const auto curve =
      detection_curve(setup.theory, setup.config, rates, repetitions, setup.quotient ? &*setup.quotient : nullptr);
  auto j = run.report();
  j["model"] = o.model;
  j["config"] = io::to_json(setup.config);
  j["repetitions"] = repetitions;
  j["curve"] = io::to_json(curve);
  run.emit(j);
  return 0;
}

std::string branch_text(const BranchReport& r) {
  std::string s = "branch " + std::string(wigner_branch_name(r.branch)) + " (input " +
                  std::string(wigner_input_name(r.input)) + ")\n";
  for (const auto& e : r.transcript) s += "  " + e.question + " = " + e.answer + "  p=" + num(e.probability) + "\n";
  s += "  P(" + r.sequence[r.branch == WignerBranch::FriendFirst ? 1 : 0] + " = t) = " + num(r.interaction_true) + "\n";
  s += std::string("  isolation: ") + (r.isolation_verdict ? "yes" : "no") +
       ", definite record: " + (r.definite_record ? "yes" : "no") + "\n";
  s += "  P(A_fS = A_fF) = " + num(r.record_correlation) + ", reassurance = " + num(r.reassurance) + "\n";
  return s;
}

int wigner_run(Run& run, const std::string& branch, const std::string& input, bool json) {
  const auto scenario = build_quantum_scenario(parse_wigner_input(input));
  std::vector<BranchReport> reports;
  if (branch == "both" || branch == "friend_first") reports.push_back(run_branch(scenario, WignerBranch::FriendFirst));
  if (branch == "both" || branch == "wigner_first") reports.push_back(run_branch(scenario, WignerBranch::WignerFirst));
  if (reports.empty()) parse_wigner_branch(branch);
  std::optional<IncompatibilityReport> inc;
  if (branch == "both") inc = incompatibility_report(scenario);

  if (json) {
    auto j = run.report();
    j["input"] = input;
    j["interaction_class"] = scenario.interaction_class;
    auto arr = Json::array();
    for (const auto& r : reports) arr.push_back(io::to_json(r));
    j["branches"] = std::move(arr);
    j["incompatibility"] = inc ? io::to_json(*inc) : Json();
    run.emit(j);
  } else {
    std::string text;
    for (const auto& r : reports) text += branch_text(r);
    if (inc) {
      text += std::string("conflict-free: ") + (inc->conflict_free ? "yes" : "no") + "\n";
      text += std::string("collapse foil violates the interaction assumption: ") +
              (inc->foil.violates_interaction_assumption ? "yes" : "no") + "\n";
    }
    run.emit_text(text);
  }
  return 0;
}

}  // namespace

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite quantum-logic and contextual-theory toolkit", "qll"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Run run{out, err, {}, {}, {}, {}, {}, {}, 0};
  app.add_option("--out", run.out_path, "write the report to this file instead of stdout");
  app.add_option("--manifest", run.manifest_path, "also write the run manifest to this file");

  auto* lattice = app.add_subcommand("lattice", "finite lattices")->require_subcommand(1)->fallthrough();
  std::string lattice_file, family;
  std::optional<unsigned> family_n;
  auto* lattice_check_cmd = lattice->add_subcommand("check", "classify a lattice file");
  lattice_check_cmd->add_option("file", lattice_file, "lattice JSON")->required();
  auto* lattice_gen_cmd = lattice->add_subcommand("gen", "emit a fixture lattice spec");
  lattice_gen_cmd->add_option("family", family, "boolean | chain | mo | benzene | diamond_m3 | pentagon_n5")
      ->required();
  lattice_gen_cmd->add_option("n", family_n, "size parameter for boolean, chain and mo");

  auto* space = app.add_subcommand("space", "question spaces")->require_subcommand(1)->fallthrough();
  std::string space_file;
  std::vector<std::string> merges;
  auto* space_check_cmd = space->add_subcommand("check", "orthogonality, structure preservation, class joins");
  space_check_cmd->add_option("file", space_file, "space JSON")->required();
  space_check_cmd->add_option("--merge", merges, "diagnose joining two classes, written a,b (repeatable)");

  auto* theory = app.add_subcommand("theory", "contextual theories")->require_subcommand(1)->fallthrough();
  std::string theory_file, theory_space, theory_domain;
  double tolerance = 1e-9;
  auto* theory_check_cmd = theory->add_subcommand("check", "contextuality and isolation over a domain");
  theory_check_cmd->add_option("file", theory_file, "theory JSON")->required();
  theory_check_cmd->add_option("--space", theory_space, "question space the domain classes must belong to");
  theory_check_cmd->add_option("--domain", theory_domain, "domain JSON")->required();
  theory_check_cmd->add_option("--tolerance", tolerance, "decision tolerance for float weights")
      ->capture_default_str();
  int triad_classes = 2, triad_length = 5;
  auto* triad_cmd = theory->add_subcommand("triad", "exhaustive deterministic-answer search");
  triad_cmd->add_option("--classes", triad_classes, "number of classes")->capture_default_str();
  triad_cmd->add_option("--length", triad_length, "sequence length")->capture_default_str();
  unsigned gleason_states = 20, gleason_bases = 20;
  std::optional<std::uint64_t> gleason_seed;
  auto* gleason_cmd = theory->add_subcommand("gleason", "frame-function check on random dimension-3 states");
  gleason_cmd->add_option("--states", gleason_states, "random states")->capture_default_str();
  gleason_cmd->add_option("--bases", gleason_bases, "random bases per state")->capture_default_str();
  gleason_cmd->add_option("--seed", gleason_seed, "RNG seed (fallback: QLL_SEED, then 0)");

  auto* bb84 = app.add_subcommand("bb84", "generalized BB84 simulation")->require_subcommand(1)->fallthrough();
  Bb84Options bb84_run_opts, bb84_curve_opts;
  auto* bb84_run_cmd = bb84->add_subcommand("run", "simulate one protocol execution");
  bb84_run_opts.attach(bb84_run_cmd, true);
  auto* bb84_curve_cmd = bb84->add_subcommand("curve", "QBER and detection probability per eavesdropping rate");
  bb84_curve_opts.eve = "intercept_resend_uniform";
  bb84_curve_opts.attach(bb84_curve_cmd, false);
  std::vector<double> rates{0, 0.5, 1};
  unsigned repetitions = 20;
  bb84_curve_cmd->add_option("--rates", rates, "comma-separated eavesdropping rates")->delimiter(',');
  bb84_curve_cmd->add_option("--repetitions", repetitions, "runs per rate")->capture_default_str();

  auto* wigner = app.add_subcommand("wigner", "general Wigner's-friend scenario")->require_subcommand(1)->fallthrough();
  std::string branch = "both", input = "super";
  bool wigner_json = false;
  auto* wigner_run_cmd = wigner->add_subcommand("run", "run one or both branches");
  wigner_run_cmd->add_option("--branch", branch, "friend_first | wigner_first | both")
      ->check(CLI::IsMember({"friend_first", "wigner_first", "both"}))
      ->capture_default_str();
  wigner_run_cmd->add_option("--input", input, "eigen | super")
      ->check(CLI::IsMember({"eigen", "super"}))
      ->capture_default_str();
  wigner_run_cmd->add_flag("--json", wigner_json, "emit JSON instead of text");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const auto started = utc_now();
  int code = 0;
  try {
    std::optional<std::uint64_t> seed_flag = bb84_run_cmd->parsed()     ? bb84_run_opts.seed
                                             : bb84_curve_cmd->parsed() ? bb84_curve_opts.seed
                                                                        : gleason_seed;
    if (seed_flag)
      run.seed = *seed_flag;
    else if (const char* env = std::getenv("QLL_SEED"); env && *env)
      run.seed = parse_seed(env, "QLL_SEED");

    for (const auto* sub : app.get_subcommands())
      for (const auto* leaf : sub->get_subcommands()) run.command = sub->get_name() + " " + leaf->get_name();

    if (lattice_check_cmd->parsed())
      code = lattice_check(run, lattice_file);
    else if (lattice_gen_cmd->parsed())
      code = lattice_gen(run, family, family_n);
    else if (space_check_cmd->parsed())
      code = space_check(run, space_file, merges);
    else if (theory_check_cmd->parsed())
      code = theory_check(run, theory_file, theory_space, theory_domain, tolerance);
    else if (triad_cmd->parsed()) {
      auto j = run.report();
      merge_into(j, io::to_json(inconsistent_triad(triad_classes, triad_length)));
      run.emit(j);
    } else if (gleason_cmd->parsed())
      code = theory_gleason(run, gleason_states, gleason_bases);
    else if (bb84_run_cmd->parsed())
      code = bb84_run(run, bb84_run_opts);
    else if (bb84_curve_cmd->parsed())
      code = bb84_curve(run, bb84_curve_opts, rates, repetitions);
    else if (wigner_run_cmd->parsed())
      code = wigner_run(run, branch, input, wigner_json);
  } catch (const InputError& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    if (!e.details().empty()) err << "details: " << e.details().dump() << "\n";
    code = 2;
  } catch (const CheckError& e) {
    auto j = run.report();
    j["error"] = {{"code", e.code()}, {"message", e.what()}, {"details", e.details()}};
    try {
      run.emit(j);
    } catch (const Error& w) {
      err << "error: " << w.code() << ": " << w.what() << "\n";
      return 2;
    }
    code = 1;
  }

  Json manifest;
  manifest["schema"] = "v1";
  manifest["command"] = run.command;
  manifest["toolkit_version"] = kVersion;
  std::string digest_input = run.command;
  // Where the manifest itself is written is not part of the configuration.
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--manifest") {
      ++i;
      continue;
    }
    if (args[i].rfind("--manifest=", 0) == 0) continue;
    digest_input += '\0' + args[i];
  }
  digest_input += '\0' + run.digest_data + std::to_string(run.seed);
  manifest["config_digest"] = fnv1a_hex(digest_input);
  manifest["seed"] = run.seed;
  manifest["inputs"] = run.inputs;
  manifest["outputs"] = run.outputs;
  manifest["started_at"] = started;
  manifest["finished_at"] = utc_now();
  err << "manifest: " << manifest.dump() << "\n";
  if (!run.manifest_path.empty()) {
    try {
      write_file(run.manifest_path, manifest.dump(2) + "\n");
    } catch (const Error& e) {
      err << "error: " << e.code() << ": " << e.what() << "\n";
      return 2;
    }
  }
  return code;
}

}  // namespace qlogic::cli
