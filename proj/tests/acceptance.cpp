// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qlogic/cli.hpp"
#include "qlogic/families.hpp"
#include "qlogic/gleason.hpp"
#include "qlogic/io.hpp"
#include "qlogic/protocol.hpp"
#include "qlogic/question_space.hpp"
#include "qlogic/theory.hpp"
#include "qlogic/wigner.hpp"
#include "support.hpp"

using namespace qlogic;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Eigen::MatrixXcd proj(std::initializer_list<std::complex<double>> v) { return oracle::ket_projector(support::ray(v)); }

// ---------------------------------------------------------------------------

Verdict taxonomy() {
  Verdict o;
  auto classify_named = [](const support::NamedLattice& f) {
    const auto l = build_lattice(f.spec);
    std::optional<OrthoMap> m;
    if (f.ortho) m = make_ortho(l, *f.ortho);
    return classify(l, m);
  };
  for (unsigned n = 1; n <= 6; ++n) {
    const auto r = classify_named(support::from_family(Family::Boolean, n));
    o.require(r.is_lattice && r.is_bounded && r.is_complemented && r.has_orthocomplementation && r.is_orthomodular &&
                  r.is_distributive && r.is_boolean && r.is_atomic,
              "B" + std::to_string(n) + " all-true");
  }
  const auto mo2 = classify_named(support::from_family(Family::MO, 2));
  o.require(mo2.is_orthomodular && !mo2.is_distributive, "MO2 orthomodular and not distributive");
  const auto o6 = classify_named(support::from_family(Family::Benzene));
  o.require(o6.has_orthocomplementation && !o6.is_orthomodular, "O6 orthocomplemented and not orthomodular");
  o.require(!classify_named(support::from_family(Family::DiamondM3)).is_distributive, "M3 not distributive");
  o.require(!classify_named(support::from_family(Family::PentagonN5)).is_distributive, "N5 not distributive");
  o.note("B1..B6, MO2, O6, M3, N5 classified");
  return o;
}

Verdict jauch_piron() {
  Verdict o;
  int checked = 0;
  std::vector<std::string> counterexamples;
  for (const auto& f : support::ortholattice_fixtures()) {
    const auto l = build_lattice(f.spec);
    if (l.size() > 32) continue;
    const auto ortho = make_ortho(l, *f.ortho);
    const auto r = classify(l, ortho);
    const auto homs = two_valued_homomorphisms(l, ortho);
    o.require(homs.size() == oracle::homomorphisms(oracle::Order(f.spec), *f.ortho).size(),
              f.name + " homomorphism count matches brute force");
    if (!homs.empty() != r.is_distributive)
      counterexamples.push_back(f.name + (r.is_orthomodular ? " (orthomodular, " : " (not orthomodular, ") +
                                std::to_string(homs.size()) + " homomorphisms)");
    // The separating form does hold everywhere; reported alongside.
    o.require(has_full_set_of_homomorphisms(l, ortho) == r.is_distributive,
              f.name + " full set of homomorphisms <=> distributive");
    ++checked;
  }
  std::string names;
  for (const auto& n : counterexamples) names += (names.empty() ? "" : ", ") + n;
  o.require(counterexamples.empty(), "nonempty <=> distributive; non-distributive with homomorphisms: " + names);
  o.note(std::to_string(checked) + " ortholattice fixtures; full set <=> distributive on all of them");
  return o;
}

Verdict triad() {
  Verdict o;
  const auto five = inconsistent_triad(2, 5);
  o.require(five.sequence == std::vector<std::string>{"A", "B", "A", "B", "A"}, "alternating 5-sequence");
  o.require(five.assignments_checked == 32 && five.consistent_assignments == 0, "no consistent model at length 5");
  for (const auto& rule : five.rules) o.require(rule.consistent_initial_states == 0, "rule " + rule.name + " fails");
  const auto three = inconsistent_triad(2, 3);
  o.require(three.consistent_assignments > 0, "consistent model at length 3");
  bool flip_ok = false;
  for (const auto& rule : three.rules) flip_ok |= rule.name == "negation" && rule.consistent_initial_states > 0;
  o.require(flip_ok, "negation flip theory consistent at length 3");
  o.note("length 5: 0/32 consistent; length 3: " + std::to_string(three.consistent_assignments) + "/8 consistent");
  return o;
}

Verdict isolation() {
  Verdict o;
  const auto z = std::vector{proj({1, 0}), proj({0, 1})};
  const auto x = std::vector{proj({1, 1}), proj({1, -1})};
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<Eigen::MatrixXcd> states{proj({1, 0}), Eigen::MatrixXcd::Identity(2, 2) / 2.0};
  for (int k = 0; k < 3; ++k) states.push_back(proj({{g(rng), g(rng)}, {g(rng), g(rng)}}));
  double worst_zz = 0, worst_zxz = 0;
  for (const auto& rho : states) {
    QuantumTheory t;
    t.rho = rho;
    t.classes["Z"] = {kBinaryAnswers, z};
    t.classes["X"] = {kBinaryAnswers, x};
    const auto theory = Theory::quantum(t);

    double zz_oracle = 0, zxz_oracle = 0;
    for (const auto& [idx, p] : oracle::luders(rho, {z, z})) zz_oracle += idx[0] == idx[1] ? p : 0;
    for (const auto& [idx, p] : oracle::luders(rho, {z, x, z})) zxz_oracle += idx[0] == idx[2] ? p : 0;

    const auto zz = is_isolated(theory, inquiry({"Z", "Z"}));
    const auto zxz = is_isolated(theory, inquiry({"Z", "X", "Z"}));
    worst_zz = std::max({worst_zz, std::abs(zz.agreement.to_double() - 1), std::abs(zz_oracle - 1)});
    worst_zxz = std::max({worst_zxz, std::abs(zxz.agreement.to_double() - 0.5), std::abs(zxz_oracle - 0.5),
                          std::abs(zxz.agreement.to_double() - zxz_oracle)});
    o.require(zz.isolated && !zxz.isolated, "isolation verdicts");

    const auto with_x = disturbance_profile(theory, inquiry({"Z", "Z"}), inquiry({"X"})[0], 1);
    const auto with_z = disturbance_profile(theory, inquiry({"Z", "Z"}), inquiry({"Z"})[0], 1);
    o.require(with_x.compliant && !with_x.implied && with_x.agreement &&
                  std::abs(with_x.agreement->second.to_double() - zxz_oracle) <= 1e-12,
              "inserting X disturbs Z,Z");
    o.require(with_z.implied && with_z.distance.to_double() == 0.0, "inserting Z leaves Z,Z alone");
  }
  o.require(worst_zz <= 1e-12, "P(agree | Z,Z) = 1 within 1e-12");
  o.require(worst_zxz <= 1e-12, "P(agree | Z,X,Z) = 0.5 within 1e-12");
  o.note("5 states; max |dev| Z,Z " + fmt(worst_zz) + ", Z,X,Z " + fmt(worst_zxz));
  return o;
}

Verdict contextuality() {
  Verdict o;
  const auto domain = std::vector{inquiry({"Z"}), inquiry({"X"}), inquiry({"Z", "Z"}), inquiry({"Z", "X", "Z"})};
  ProductTheory p;
  p.classes["Z"] = {kBinaryAnswers, {Probability::exact(1, 2), Probability::exact(1, 2)}};
  p.classes["X"] = {kBinaryAnswers, {Probability::exact(1, 3), Probability::exact(2, 3)}};
  const auto product = is_noncontextual(Theory::product(p), domain);
  o.require(product.noncontextual, "product theory accepted");

  QuantumTheory q;
  q.rho = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  q.classes["Z"] = {kBinaryAnswers, {proj({1, 0}), proj({0, 1})}};
  q.classes["X"] = {kBinaryAnswers, {proj({1, 1}), proj({1, -1})}};
  const auto quantum = is_noncontextual(Theory::quantum(q), domain);
  o.require(!quantum.noncontextual && quantum.witness.has_value(), "qubit theory rejected with witness");
  if (quantum.witness) {
    std::string seq;
    for (const auto& c : quantum.witness->sequence) seq += c;
    o.note("witness " + quantum.witness->reason + " on " + seq);
  }
  return o;
}

Verdict bb84() {
  Verdict o;
  QuantumTheory q;
  q.rho = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  q.classes["Z"] = {kBinaryAnswers, {proj({1, 0}), proj({0, 1})}};
  q.classes["X"] = {kBinaryAnswers, {proj({1, 1}), proj({1, -1})}};
  const auto theory = Theory::quantum(q);

  ProtocolConfig c;
  c.rounds = 100000;
  c.classes = {"X", "Z"};
  c.eve = EveStrategy::InterceptResendUniform;
  c.eve_rate = 1;
  c.seed = 7;
  const auto full = run_protocol(theory, c).stats;
  o.require(std::abs(full.sifted_qber - 0.25) <= 0.01, "rate 1: sifted QBER 0.25 +- 0.01");

  c.eve_rate = 0;
  const auto none = run_protocol(theory, c).stats;
  o.require(none.sifted_errors == 0 && none.qber == 0.0 && none.sifted_qber == 0.0, "rate 0: QBER exactly 0");

  ProtocolConfig f;
  f.rounds = 10000;
  f.eve = EveStrategy::InterceptResendUniform;
  f.eve_rate = 1;
  f.seed = 7;
  const auto flip = flip_model_protocol(f).stats;
  o.require(std::abs(flip.sifted_qber - 0.5) <= 0.02, "flip model: QBER 0.5 +- 0.02");
  o.note("rate 1: " + fmt(full.sifted_qber) + " over " + std::to_string(full.sifted_count) + " sifted; rate 0: " +
         fmt(none.sifted_qber) + "; flip: " + fmt(flip.sifted_qber) + " over " + std::to_string(flip.sifted_count));
  return o;
}

// Density-matrix evolution written out independently of the library.
double evolved_interaction_true(WignerInput in, WignerBranch b) {
  auto ket = [](int s, int f) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(6);
    v(3 * s + f) = 1;
    return v;
  };
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(6, 6);
  for (int s = 0; s < 2; ++s)
    for (int f = 0; f < 3; ++f) {
      const int g = f == 2 ? s : (f == s ? 2 : f);
      u += ket(s, g) * ket(s, f).adjoint();
    }
  const Eigen::VectorXcd s_in = in == WignerInput::Eigen ? support::ray({1, 0})
                                                         : Eigen::VectorXcd(support::ray({1, 1}) / std::sqrt(2.0));
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(6);
  for (int s = 0; s < 2; ++s) psi += s_in(s) * ket(s, 2);
  const Eigen::MatrixXcd rho = u * psi * psi.adjoint() * u.adjoint();

  const Eigen::MatrixXcd p_int = u * psi * psi.adjoint() * u.adjoint();
  const std::vector<Eigen::MatrixXcd> interaction{p_int, Eigen::MatrixXcd::Identity(6, 6) - p_int};
  std::vector<Eigen::MatrixXcd> record;
  for (int k = 0; k < 6; ++k) record.push_back(ket(k / 3, k % 3) * ket(k / 3, k % 3).adjoint());
  const bool ff = b == WignerBranch::FriendFirst;
  double p = 0;
  for (const auto& [idx, w] : oracle::luders(rho, ff ? std::vector{record, interaction} : std::vector{interaction, record}))
    p += idx[ff ? 1 : 0] == 0 ? w : 0;
  return p;
}

Verdict wigner_dichotomy() {
  Verdict o;
  const auto super = incompatibility_report(build_quantum_scenario(WignerInput::Super));
  const auto eigen = incompatibility_report(build_quantum_scenario(WignerInput::Eigen));
  const double ff = evolved_interaction_true(WignerInput::Super, WignerBranch::FriendFirst);
  const double wf = evolved_interaction_true(WignerInput::Super, WignerBranch::WignerFirst);
  o.require(std::abs(ff - 0.5) <= 1e-12 && std::abs(wf - 1) <= 1e-12, "oracle reproduces 0.5 / 1");
  o.require(std::abs(super.friend_first.interaction_true - 0.5) <= 1e-12 &&
                std::abs(super.friend_first.interaction_true - ff) <= 1e-12,
            "friend_first P(int'=t) = 0.5");
  o.require(std::abs(super.wigner_first.interaction_true - 1) <= 1e-12 &&
                std::abs(super.wigner_first.interaction_true - wf) <= 1e-12,
            "wigner_first P(int'=t) = 1");
  for (auto b : {WignerBranch::FriendFirst, WignerBranch::WignerFirst}) {
    const auto& r = b == WignerBranch::FriendFirst ? eigen.friend_first : eigen.wigner_first;
    o.require(std::abs(r.interaction_true - evolved_interaction_true(WignerInput::Eigen, b)) <= 1e-12,
              "eigen input matches oracle");
  }
  o.require(eigen.conflict_free, "eigenstate input conflict-free");
  o.require(!super.conflict_free, "superposed input not conflict-free");
  o.note("friend_first " + fmt(super.friend_first.interaction_true) + ", wigner_first " +
         fmt(super.wigner_first.interaction_true));
  return o;
}

Verdict resolution() {
  Verdict o;
  struct Case {
    const char* name;
    Family family;
    unsigned n;
  };
  for (const auto& c : {Case{"B3", Family::Boolean, 3}, Case{"MO2", Family::MO, 2}, Case{"chain(4)", Family::Chain, 4}}) {
    const auto inst = generate_family(c.family, c.n);
    const auto space = support::mirrored_space(inst.spec, inst.ortho);
    const auto got = resolution_restriction(space, "r");
    const auto want = oracle::longest_chain(oracle::Order(inst.spec));
    o.require(got == want, std::string(c.name) + " restriction");
    o.note(std::string(c.name) + " " + std::to_string(got) + "=" + std::to_string(want));
  }
  return o;
}

Verdict gleason() {
  Verdict o;
  std::mt19937_64 rng(20);
  double min_value = 1, max_sum = 0, max_residual = 0;
  for (int s = 0; s < 20; ++s) {
    const auto rho = random_density_matrix(rng);
    std::vector<Basis3> bases;
    for (int b = 0; b < 20; ++b) bases.push_back(random_basis(rng));
    const auto frame = gleason_frame_check(rho, bases, 1e-12);
    const auto fit = fit_density_matrix(bases, frame.values);
    min_value = std::min(min_value, frame.min_value);
    max_sum = std::max(max_sum, frame.max_sum_error);
    max_residual = std::max(max_residual, fit.residual);
    o.require(fit.rank == 9, "state identified");
  }
  o.require(min_value >= -1e-12, "frame values nonnegative");
  o.require(max_sum <= 1e-12, "basis sums 1 within 1e-12");
  o.require(max_residual < 1e-9, "reconstruction residual < 1e-9");
  o.note("min value " + fmt(min_value) + ", max sum error " + fmt(max_sum) + ", max residual " + fmt(max_residual));
  return o;
}

struct Capture {
  int code;
  std::string out, csv, digest;
};

Capture run_cli(const std::vector<std::string>& args, const std::string& csv_path) {
  std::remove(csv_path.c_str());
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  std::ifstream in(csv_path, std::ios::binary);
  std::string csv{std::istreambuf_iterator<char>(in), {}};
  const auto e = err.str();
  const auto at = e.find("\"config_digest\":\"");
  return {code, out.str(), csv, at == std::string::npos ? "" : e.substr(at + 17, 16)};
}

Verdict replay() {
  Verdict o;
  const auto csv = (std::filesystem::temp_directory_path() / "qlogic_acceptance_rounds.csv").string();
  auto fx = [](const std::string& n) { return support::fixture(n).string(); };
  const std::vector<std::vector<std::string>> commands{
      {"lattice", "check", fx("mo2.json")},
      {"lattice", "check", fx("benzene.json")},
      {"lattice", "check", fx("not_a_lattice.json")},
      {"lattice", "check", fx("malformed.json")},
      {"lattice", "gen", "mo", "4"},
      {"space", "check", fx("space_mo2.json")},
      {"space", "check", fx("space_broken.json"), "--merge", "A,B"},
      {"theory", "check", fx("qubit.json"), "--domain", fx("domain.json")},
      {"theory", "check", fx("product.json"), "--domain", fx("domain.json")},
      {"theory", "triad", "--classes", "3", "--length", "9"},
      {"theory", "gleason", "--states", "5", "--bases", "5", "--seed", "4"},
      {"bb84", "run", "--rounds", "20000", "--eve", "intercept_resend_uniform", "--seed", "7", "--csv", csv},
      {"bb84", "run", "--model", "flip", "--rounds", "5000", "--eve", "intercept_resend_uniform", "--csv", csv},
      {"bb84", "curve", "--rounds", "2000", "--repetitions", "4", "--rates", "0,0.5,1", "--seed", "2"},
      {"wigner", "run"},
      {"wigner", "run", "--json", "--input", "eigen"},
  };
  for (const auto& c : commands) {
    const auto a = run_cli(c, csv), b = run_cli(c, csv);
    std::string name;
    for (std::size_t i = 0; i < std::min<std::size_t>(c.size(), 2); ++i) name += (i ? " " : "") + c[i];
    o.require(a.code == b.code && a.out == b.out && a.csv == b.csv && a.digest == b.digest,
              name + " identical on rerun");
  }
  o.note(std::to_string(commands.size()) + " invocations rerun: stdout, CSV and config digest identical");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no limit
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "lattice taxonomy", 5, taxonomy},
      {2, "Jauch-Piron criterion", 30, jauch_piron},
      {3, "inconsistent triad", 1, triad},
      {4, "isolation and disturbance", 1, isolation},
      {5, "contextuality decision", 1, contextuality},
      {6, "BB84 intercept-resend", 30, bb84},
      {7, "Wigner dichotomy", 1, wigner_dichotomy},
      {8, "resolution restriction", 1, resolution},
      {9, "Gleason frame check", 5, gleason},
      {10, "replay determinism", 0, replay},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s) o.require(false, "time limit " + fmt(c.limit_s) + " s");
    failed += !o.pass;
    std::printf("%s  %2d  %-26s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
