#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qlogic/cli.hpp"
#include "qlogic/error.hpp"
#include "qlogic/io.hpp"
#include "support.hpp"

using namespace qlogic;
using io::Json;

namespace {

struct Result {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result qll(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return support::fixture(name).string(); }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "qlogic_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("fnv1a reference values") {
  CHECK(cli::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(cli::fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("usage") {
  CHECK(qll({}).code == 2);
  CHECK(qll({"frobnicate"}).code == 2);
  const auto v = qll({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(cli::kVersion) != std::string::npos);
  CHECK(qll({"lattice", "check", "--help"}).code == 0);
}

TEST_CASE("lattice check exit codes") {
  const auto mo2 = qll({"lattice", "check", fx("mo2.json")});
  CHECK(mo2.code == 0);
  auto j = mo2.json();
  CHECK(j["schema"] == "v1");
  CHECK(j["is_orthomodular"] == true);
  CHECK(j["is_distributive"] == false);
  CHECK(j["two_valued_homomorphisms"]["count"] == 0);
  CHECK(mo2.err.find("manifest: ") != std::string::npos);

  const auto malformed = qll({"lattice", "check", fx("malformed.json")});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("ParseError") != std::string::npos);
  CHECK(malformed.out.empty());
  CHECK(malformed.err.find("manifest: ") != std::string::npos);
  CHECK(qll({"lattice", "check", fx("missing.json")}).code == 2);

  const auto bowtie = qll({"lattice", "check", fx("not_a_lattice.json")});
  CHECK(bowtie.code == 1);
  CHECK(bowtie.json()["is_lattice"] == false);
  CHECK(qll({"lattice", "check", fx("bad_ortho.json")}).code == 1);
  CHECK(qll({"lattice", "check", fx("benzene.json")}).json()["is_orthomodular"] == false);
  CHECK(qll({"lattice", "check", fx("pentagon.json")}).json()["has_orthocomplementation"] == false);
}

TEST_CASE("generated lattices feed back into check") {
  CHECK(qll({"lattice", "gen", "mo"}).code == 2);
  CHECK(qll({"lattice", "gen", "cube", "2"}).code == 2);
  const auto path = scratch("b3.json");
  CHECK(qll({"--out", path.string(), "lattice", "gen", "boolean", "3"}).code == 0);
  const auto check = qll({"lattice", "check", path.string()});
  CHECK(check.code == 0);
  auto j = check.json();
  CHECK(j["is_boolean"] == true);
  CHECK(j["size"] == 8);
  CHECK(j["two_valued_homomorphisms"]["count"] == 3);
  CHECK(j.contains("birkhoff"));
}

TEST_CASE("space check") {
  const auto ok = qll({"space", "check", fx("space_mo2.json")});
  CHECK(ok.code == 0);
  CHECK(ok.json()["resolution"]["r"]["restriction"] == 2);
  CHECK(qll({"space", "check", fx("space_broken.json")}).code == 1);
  const auto merged = qll({"space", "check", fx("space_mo2.json"), "--merge", "Z+,X+"});
  CHECK(merged.code == 1);
  CHECK(merged.json()["class_joins"]["ok"] == false);
  CHECK(qll({"space", "check", fx("space_mo2.json"), "--merge", "Z+"}).code == 2);
}

TEST_CASE("theory commands") {
  const auto q = qll({"theory", "check", fx("qubit.json"), "--domain", fx("domain.json")});
  CHECK(q.code == 0);
  CHECK(q.json()["contextuality"]["noncontextual"] == false);
  const auto p = qll({"theory", "check", fx("product.json"), "--domain", fx("domain.json")});
  CHECK(p.json()["contextuality"]["noncontextual"] == true);
  CHECK(qll({"theory", "check", fx("qubit.json")}).code == 2);

  const auto triad = qll({"theory", "triad"});
  CHECK(triad.code == 0);
  CHECK(triad.json()["contradiction"] == true);
  CHECK(qll({"theory", "triad", "--length", "3"}).json()["contradiction"] == false);
  CHECK(qll({"theory", "triad", "--length", "40"}).code == 2);

  const auto g = qll({"theory", "gleason", "--states", "3", "--bases", "4", "--seed", "2"});
  CHECK(g.code == 0);
  CHECK(g.json()["ok"] == true);
}

TEST_CASE("bb84 run") {
  const auto csv = scratch("rounds.csv");
  const auto r = qll({"bb84", "run", "--rounds", "2000", "--eve", "intercept_resend_uniform", "--seed", "3", "--csv",
                      csv.string()});
  CHECK(r.code == 0);
  auto j = r.json();
  CHECK(j["stats"]["rounds"] == 2000);
  const auto text = slurp(csv);
  CHECK(text.rfind("round,alice_class,bob_class,sifted,error,eve_intercepted\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2001);

  const auto clean = qll({"bb84", "run", "--rounds", "2000", "--seed", "3"});
  CHECK(clean.json()["stats"]["qber"] == 0.0);
  CHECK(qll({"bb84", "run", "--eve", "intercept_resend_fixed"}).code == 2);
  CHECK(qll({"bb84", "run", "--eve", "shoulder_surf"}).code == 2);
  CHECK(qll({"bb84", "run", "--model", "flip", "--rounds", "1000", "--eve", "intercept_resend_uniform"}).code == 0);

  const auto curve = qll({"bb84", "curve", "--rounds", "1000", "--repetitions", "3", "--rates", "0,1"});
  CHECK(curve.code == 0);
  CHECK(curve.json()["curve"]["rows"].size() == 2);
  CHECK(curve.json()["curve"]["rows"][1]["qber"].get<double>() > 0.1);
}

TEST_CASE("seed fallback") {
  const auto manifest_seed = [](const std::string& err) {
    const auto at = err.find("manifest: ");
    return Json::parse(err.substr(at + 10, err.find('\n', at) - at - 10))["seed"].get<std::uint64_t>();
  };
  ::setenv("QLL_SEED", "77", 1);
  const auto env = qll({"bb84", "run", "--rounds", "100"});
  CHECK(manifest_seed(env.err) == 77);
  CHECK(manifest_seed(qll({"bb84", "run", "--rounds", "100", "--seed", "5"}).err) == 5);
  ::setenv("QLL_SEED", "seventy", 1);
  CHECK(qll({"bb84", "run", "--rounds", "100"}).code == 2);
  ::unsetenv("QLL_SEED");
  CHECK(manifest_seed(qll({"bb84", "run", "--rounds", "100"}).err) == 0);
}

TEST_CASE("wigner run") {
  const auto text = qll({"wigner", "run"});
  CHECK(text.code == 0);
  CHECK(text.out.find("friend_first") != std::string::npos);
  auto j = qll({"wigner", "run", "--json"}).json();
  CHECK(j["incompatibility"]["conflict_free"] == false);
  auto eigen = qll({"wigner", "run", "--json", "--input", "eigen"}).json();
  CHECK(eigen["incompatibility"]["conflict_free"] == true);
  CHECK(qll({"wigner", "run", "--input", "mixed"}).code == 2);
}

TEST_CASE("out and manifest files") {
  const auto out = scratch("report.json"), manifest = scratch("manifest.json");
  const auto r = qll({"--out", out.string(), "--manifest", manifest.string(), "wigner", "run", "--json"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(Json::parse(slurp(out))["schema"] == "v1");
  const auto m = Json::parse(slurp(manifest));
  CHECK(m["command"] == "wigner run");
  CHECK(m["outputs"].size() == 1);
  CHECK(m["config_digest"].get<std::string>().size() == 16);
}

TEST_CASE("reruns are byte identical") {
  const std::vector<std::vector<std::string>> commands{
      {"lattice", "check", fx("mo2.json")},
      {"space", "check", fx("space_mo2.json")},
      {"theory", "check", fx("qubit.json"), "--domain", fx("domain.json")},
      {"bb84", "run", "--rounds", "3000", "--eve", "intercept_resend_uniform", "--seed", "11"},
      {"wigner", "run", "--json"},
  };
  for (const auto& c : commands) {
    const auto a = qll(c), b = qll(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json round trips") {
  const auto file = io::parse_lattice_file(io::read_json_file(support::fixture("mo2.json")));
  const auto again = io::parse_lattice_file(io::to_json(file));
  CHECK(again.spec.elements == file.spec.elements);
  CHECK(again.spec.covers == file.spec.covers);
  CHECK(again.ortho == file.ortho);
  CHECK(io::to_json(Probability::exact(1, 2)) == "1/2");
  CHECK(io::to_json(Probability(0.25)) == 0.25);
  CHECK(error_code([] { io::parse_json("{", "x"); }) == "ParseError");
  CHECK(error_code([] { io::read_json_file("/nonexistent/q.json"); }) == "FileNotFound");
  CHECK(io::parse_context_key("run7:3") == ContextKey{"run7", 3});
  CHECK_FALSE(error_code([] { io::parse_context_key("run7"); }).empty());
}
