#include "qlogic/io.hpp"

#include <fstream>
#include <sstream>

#include "qlogic/error.hpp"

namespace qlogic::io {

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw InputError("InvalidFormat", where + ": " + what, {{"at", where}});
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) invalid(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) invalid(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string string_of(const Json& j, const std::string& where) {
  if (!j.is_string()) invalid(where, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> strings_of(const Json& j, const std::string& where) {
  if (!j.is_array()) invalid(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_of(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::complex<double> complex_of(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  invalid(where, "expected a number or [re, im]");
}

Eigen::VectorXcd vector_of(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) invalid(where, "expected a nonempty vector");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_of(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

Eigen::MatrixXcd matrix_of(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) invalid(where, "expected a nonempty square matrix");
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto row = vector_of(j[static_cast<std::size_t>(r)], where + "[" + std::to_string(r) + "]");
    if (row.size() != n) invalid(where, "matrix is not square");
    m.row(r) = row.transpose();
  }
  return m;
}

Probability probability_of(const Json& j, const std::string& where) {
  if (j.is_string()) return Probability::parse(j.get<std::string>());
  if (j.is_number_unsigned() || j.is_number_integer()) {
    const auto v = j.get<long long>();
    if (v != 0 && v != 1) invalid(where, "probability out of range");
    return Probability::exact(static_cast<long>(v));
  }
  if (j.is_number_float()) {
    const auto v = j.get<double>();
    if (!(v >= 0 && v <= 1)) invalid(where, "probability out of range");
    return Probability(v);
  }
  invalid(where, "expected a probability (\"p/q\", decimal string or number)");
}

std::vector<std::string> default_answers(std::size_t n) {
  if (n == 2) return kBinaryAnswers;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

Json ids(const Lattice& l, const std::vector<Element>& tuple) {
  auto out = Json::array();
  for (const auto e : tuple) out.push_back(l.id(e));
  return out;
}

Json ortho_json(const Lattice& l, const OrthoMap& o) {
  Json out = Json::object();
  for (Element e = 0; e < l.size(); ++e) out[l.id(e)] = l.id(o(e));
  return out;
}

Json strings_json(const std::vector<std::string>& v) {
  auto out = Json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("ParseError", origin + ": " + e.what(), {{"file", origin}, {"byte", e.byte}});
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("FileNotFound", "cannot open '" + path.string() + "'", {{"file", path.string()}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path.string());
}

// -- lattices --

LatticeFile parse_lattice_file(const Json& j) {
  LatticeFile f;
  f.spec.elements = strings_of(field(j, "elements", "lattice"), "lattice.elements");
  if (j.contains("covers")) {
    const auto& covers = j["covers"];
    if (!covers.is_array()) invalid("lattice.covers", "expected an array of [lower, upper] pairs");
    for (std::size_t i = 0; i < covers.size(); ++i) {
      const auto where = "lattice.covers[" + std::to_string(i) + "]";
      const auto pair = strings_of(covers[i], where);
      if (pair.size() != 2) invalid(where, "expected [lower, upper]");
      f.spec.covers.emplace_back(pair[0], pair[1]);
    }
  }
  if (j.contains("ortho") && !j["ortho"].is_null()) {
    const auto& o = j["ortho"];
    if (!o.is_object()) invalid("lattice.ortho", "expected an object id → id");
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : o.items()) m[k] = string_of(v, "lattice.ortho." + k);
    f.ortho = std::move(m);
  }
  return f;
}

Json to_json(const LatticeFile& f) {
  Json out;
  out["elements"] = strings_json(f.spec.elements);
  auto covers = Json::array();
  for (const auto& [lo, hi] : f.spec.covers) covers.push_back({lo, hi});
  out["covers"] = std::move(covers);
  if (f.ortho) {
    Json o = Json::object();
    // Element order, not map order, so files read naturally.
    for (const auto& e : f.spec.elements)
      if (const auto it = f.ortho->find(e); it != f.ortho->end()) o[e] = it->second;
    out["ortho"] = std::move(o);
  }
  return out;
}

Json to_json(const Lattice& l, const ClassificationReport& r) {
  Json out;
  out["size"] = l.size();
  out["is_lattice"] = r.is_lattice;
  out["is_bounded"] = r.is_bounded;
  out["is_complemented"] = r.is_complemented;
  out["has_orthocomplementation"] = r.has_orthocomplementation;
  out["is_orthomodular"] = r.is_orthomodular;
  out["is_distributive"] = r.is_distributive;
  out["is_boolean"] = r.is_boolean;
  out["is_atomic"] = r.is_atomic;
  out["atoms"] = ids(l, r.atoms);
  Json w = Json::object();
  for (const auto& [law, tuple] : r.counterexample_witnesses) w[law] = ids(l, tuple);
  out["counterexample_witnesses"] = std::move(w);
  out["ortho"] = r.ortho ? ortho_json(l, *r.ortho) : Json();
  static constexpr const char* sources[] = {"supplied", "found", "none"};
  out["ortho_source"] = sources[static_cast<int>(r.ortho_source)];
  return out;
}

Json to_json(const Lattice& l, const BirkhoffRepresentation& b) {
  Json out;
  out["join_irreducibles"] = ids(l, b.join_irreducibles);
  auto covers = Json::array();
  for (const auto& [lo, hi] : b.irreducible_covers)
    covers.push_back({l.id(b.join_irreducibles[lo]), l.id(b.join_irreducibles[hi])});
  out["irreducible_covers"] = std::move(covers);
  out["down_set_count"] = b.down_sets.size();
  Json image = Json::object();
  for (Element e = 0; e < l.size(); ++e) {
    auto set = Json::array();
    for (std::size_t k = 0; k < b.join_irreducibles.size(); ++k)
      if ((b.down_set_of[e] >> k) & 1) set.push_back(l.id(b.join_irreducibles[k]));
    image[l.id(e)] = std::move(set);
  }
  out["down_set_of"] = std::move(image);
  return out;
}

// -- spaces --

ContextKey parse_context_key(const std::string& key) {
  const auto colon = key.find(':');
  if (colon == std::string::npos || colon == 0) invalid(key, "context keys have the form run:slot");
  const auto slot = key.substr(colon + 1);
  if (slot.empty() || slot.find_first_not_of("-0123456789") != std::string::npos)
    invalid(key, "slot must be an integer");
  try {
    return {key.substr(0, colon), std::stoi(slot)};
  } catch (const std::exception&) {
    invalid(key, "slot must be an integer");
  }
}

QuestionSpace parse_space(const Json& j) {
  const auto& subs = field(j, "sublattices", "space");
  if (!subs.is_object() || subs.empty()) invalid("space.sublattices", "expected a nonempty object");
  std::map<ContextKey, QuestionSpace::ContextInput> contexts;
  for (const auto& [k, v] : subs.items()) {
    const auto key = parse_context_key(k);
    const auto file = parse_lattice_file(v);
    auto lattice = build_lattice(file.spec);
    std::optional<OrthoMap> ortho;
    if (file.ortho) ortho = make_ortho(lattice, *file.ortho);
    ortho = classify(lattice, ortho).ortho;
    contexts.emplace(key, QuestionSpace::ContextInput{std::move(lattice), std::move(ortho), {}});
  }
  if (j.contains("classes")) {
    const auto& classes = j["classes"];
    if (!classes.is_object()) invalid("space.classes", "expected an object run:slot:element → class");
    for (const auto& [k, v] : classes.items()) {
      const auto second = k.find(':', k.find(':') + 1);
      if (k.find(':') == std::string::npos || second == std::string::npos)
        invalid(k, "class keys have the form run:slot:element");
      const auto key = parse_context_key(k.substr(0, second));
      const auto it = contexts.find(key);
      if (it == contexts.end()) invalid(k, "no sub-lattice " + key.str());
      it->second.classes[k.substr(second + 1)] = string_of(v, "space.classes." + k);
    }
  }
  return QuestionSpace(std::move(contexts));
}

Json to_json(const OrthogonalityReport& r) {
  Json out;
  out["ok"] = r.ok();
  auto v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"context", x.context.str()},
                 {"pair", {x.first, x.second}},
                 {"class", x.class_id},
                 {"complementary", x.complementary}});
  out["violations"] = std::move(v);
  return out;
}

Json to_json(const PreservationReport& r) {
  Json out;
  out["ok"] = r.ok();
  auto v = Json::array();
  for (const auto& f : r.failures)
    v.push_back({{"from", f.from.str()},
                 {"to", f.to.str()},
                 {"q1", f.q1},
                 {"q1_prime", f.q1_prime},
                 {"q2", f.q2},
                 {"kind", f.kind == PreservationFailure::Kind::Missing ? "missing" : "ambiguous"},
                 {"candidates", strings_json(f.candidates)}});
  out["failures"] = std::move(v);
  return out;
}

Json to_json(const ClassJoinReport& r) {
  Json out;
  out["ok"] = r.ok();
  auto merged = Json::array();
  for (const auto& m : r.merged_classes) merged.push_back(strings_json(m));
  out["merged_classes"] = std::move(merged);
  auto flags = Json::array();
  for (const auto& f : r.flags)
    flags.push_back({{"context", f.context.str()},
                     {"pair", {f.first, f.second}},
                     {"merged_class", f.merged_class},
                     {"introduced_by_merge", f.introduced_by_merge}});
  out["flags"] = std::move(flags);
  return out;
}

Json to_json(const Quotient& q) {
  LatticeFile f{to_poset_spec(q.lattice), std::nullopt};
  if (q.ortho) {
    std::map<std::string, std::string> m;
    for (Element e = 0; e < q.lattice.size(); ++e) m[q.lattice.id(e)] = q.lattice.id((*q.ortho)(e));
    f.ortho = std::move(m);
  }
  auto out = to_json(f);
  out["representative"] = q.representative.str();
  return out;
}

Json to_json(const Question& q) {
  return {{"class", q.class_id}, {"run", q.run_id}, {"slot", q.slot}, {"element", q.element}};
}

// -- theories --

Theory parse_theory(const Json& j) {
  const auto kind = string_of(field(j, "kind", "theory"), "theory.kind");
  const auto& classes = field(j, "classes", "theory");
  if (!classes.is_object() && kind != "flip") invalid("theory.classes", "expected an object");

  if (kind == "quantum") {
    QuantumTheory t;
    if (j.contains("state"))
      t.rho = matrix_of(j["state"], "theory.state");
    else {
      const auto v = vector_of(field(j, "state_vector", "theory"), "theory.state_vector");
      t.rho = v * v.adjoint() / v.squaredNorm();
    }
    if (j.contains("dim") && j["dim"] != t.rho.rows()) invalid("theory.dim", "does not match the state");
    for (const auto& [c, spec] : classes.items()) {
      const auto where = "theory.classes." + c;
      QuantumClass qc;
      if (spec.contains("projectors")) {
        const auto& ps = spec["projectors"];
        if (!ps.is_array()) invalid(where, "projectors must be an array of matrices");
        for (std::size_t i = 0; i < ps.size(); ++i)
          qc.projectors.push_back(matrix_of(ps[i], where + ".projectors[" + std::to_string(i) + "]"));
      } else {
        const auto& basis = field(spec, "basis", where);
        if (!basis.is_array()) invalid(where, "basis must be an array of vectors");
        for (std::size_t i = 0; i < basis.size(); ++i) {
          const auto v = vector_of(basis[i], where + ".basis[" + std::to_string(i) + "]");
          if (v.norm() < 1e-12) invalid(where, "zero basis vector");
          qc.projectors.push_back(v * v.adjoint() / v.squaredNorm());
        }
      }
      qc.labels = spec.contains("answers") ? strings_of(spec["answers"], where + ".answers")
                                           : default_answers(qc.projectors.size());
      t.classes[c] = std::move(qc);
    }
    return Theory::quantum(std::move(t));
  }

  if (kind == "product") {
    ProductTheory t;
    for (const auto& [c, spec] : classes.items()) {
      const auto where = "theory.classes." + c;
      const auto& ps = field(spec, "probabilities", where);
      if (!ps.is_array()) invalid(where, "probabilities must be an array");
      ClassDistribution cd;
      for (std::size_t i = 0; i < ps.size(); ++i) cd.probabilities.push_back(probability_of(ps[i], where));
      cd.labels = spec.contains("answers") ? strings_of(spec["answers"], where + ".answers")
                                           : default_answers(cd.probabilities.size());
      t.classes[c] = std::move(cd);
    }
    return Theory::product(std::move(t));
  }

  if (kind == "tabulated") {
    TabulatedTheory t;
    for (const auto& [c, labels] : classes.items()) t.classes[c] = strings_of(labels, "theory.classes." + c);
    const auto& table = field(j, "table", "theory");
    if (!table.is_array()) invalid("theory.table", "expected an array");
    for (std::size_t i = 0; i < table.size(); ++i) {
      const auto where = "theory.table[" + std::to_string(i) + "]";
      const auto seq = strings_of(field(table[i], "sequence", where), where + ".sequence");
      JointDistribution d;
      for (const auto& c : seq) {
        const auto it = t.classes.find(c);
        if (it == t.classes.end())
          throw InputError("UnknownClass", where + " names unknown class '" + c + "'", {{"class", c}});
        d.labels.push_back(it->second);
      }
      const auto& weights = field(table[i], "weights", where);
      if (!weights.is_array()) invalid(where, "weights must be an array of {answers, p}");
      for (const auto& w : weights) {
        const auto answers = strings_of(field(w, "answers", where), where + ".answers");
        if (answers.size() != seq.size()) invalid(where, "answer tuple has the wrong length");
        Outcome x;
        for (std::size_t k = 0; k < answers.size(); ++k) {
          const auto& labels = d.labels[k];
          const auto at = std::find(labels.begin(), labels.end(), answers[k]);
          if (at == labels.end()) invalid(where, "unknown answer '" + answers[k] + "'");
          x.push_back(static_cast<std::uint8_t>(at - labels.begin()));
        }
        d.weights[x] += probability_of(field(w, "p", where), where);
      }
      if (!t.table.emplace(seq, std::move(d)).second) invalid(where, "duplicate sequence");
    }
    return Theory::tabulated(std::move(t));
  }

  if (kind == "flip") {
    FlipTheory t;
    const auto& initial = field(j, "initial", "theory");
    if (!initial.is_object()) invalid("theory.initial", "expected an object class → t|f");
    for (const auto& [c, v] : initial.items()) {
      if (v.is_boolean())
        t.initial[c] = v.get<bool>();
      else if (v == "t" || v == "f")
        t.initial[c] = v == "t";
      else
        invalid("theory.initial." + c, "expected \"t\" or \"f\"");
    }
    if (j.contains("implied"))
      for (const auto& pair : j["implied"]) {
        const auto p = strings_of(pair, "theory.implied");
        if (p.size() != 2) invalid("theory.implied", "expected [inquired, undisturbed] pairs");
        t.implied.emplace(p[0], p[1]);
      }
    return Theory::flip(std::move(t));
  }
  throw InputError("UnknownKind", "unknown theory kind '" + kind + "'", {{"kind", kind}});
}

std::vector<InquirySequence> parse_domain(const Json& j) {
  const auto& seqs = field(j, "sequences", "domain");
  if (!seqs.is_array()) invalid("domain.sequences", "expected an array of class sequences");
  std::vector<InquirySequence> out;
  for (std::size_t i = 0; i < seqs.size(); ++i)
    out.push_back(inquiry(strings_of(seqs[i], "domain.sequences[" + std::to_string(i) + "]")));
  return out;
}

Json to_json(const Probability& p) {
  if (p.is_exact()) return p.str();
  return p.to_double();
}

Json to_json(const JointDistribution& d) {
  auto out = Json::array();
  for (const auto& [x, p] : d.weights) {
    auto answers = Json::array();
    for (std::size_t i = 0; i < x.size(); ++i) answers.push_back(d.labels[i][x[i]]);
    out.push_back({{"answers", std::move(answers)}, {"p", to_json(p)}});
  }
  return out;
}

Json to_json(const ContextualityReport& r) {
  Json out;
  out["noncontextual"] = r.noncontextual;
  Json a = Json::object();
  for (const auto& [c, cd] : r.assignment) {
    Json dist = Json::object();
    for (std::size_t i = 0; i < cd.labels.size(); ++i) dist[cd.labels[i]] = to_json(cd.probabilities[i]);
    a[c] = std::move(dist);
  }
  out["assignment"] = std::move(a);
  if (r.witness) {
    const auto& w = *r.witness;
    Json wj;
    wj["reason"] = w.reason;
    wj["sequence"] = strings_json(w.sequence);
    if (!w.reference_sequence.empty()) wj["reference_sequence"] = strings_json(w.reference_sequence);
    if (w.coordinate) wj["coordinate"] = *w.coordinate + 1;
    wj["outcome"] = strings_json(w.outcome);
    wj["expected"] = to_json(w.expected);
    wj["observed"] = to_json(w.observed);
    out["witness"] = std::move(wj);
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

Json to_json(const IsolationReport& r) {
  Json out;
  out["isolated"] = r.isolated;
  out["witness"] = r.witness ? Json{r.witness->first + 1, r.witness->second + 1} : Json();
  out["agreement"] = to_json(r.agreement);
  return out;
}

Json to_json(const DisturbanceReport& r) {
  Json out;
  out["base"] = strings_json(class_sequence(r.base));
  out["extended"] = strings_json(class_sequence(r.extended));
  auto tracked = Json::array();
  for (const auto i : r.tracked) tracked.push_back(i + 1);
  out["tracked"] = std::move(tracked);
  out["distance"] = to_json(r.distance);
  out["implied"] = r.implied;
  out["compliant"] = r.compliant;
  if (r.agreement) out["agreement"] = {to_json(r.agreement->first), to_json(r.agreement->second)};
  return out;
}

Json to_json(const TriadReport& r) {
  Json out;
  out["num_classes"] = r.num_classes;
  out["length"] = r.length;
  out["sequence"] = strings_json(r.sequence);
  auto constraints = Json::array();
  for (const auto& [i, j] : r.constraints) constraints.push_back({i + 1, j + 1});
  out["must_differ"] = std::move(constraints);
  out["assignments_checked"] = r.assignments_checked;
  out["consistent_assignments"] = r.consistent_assignments;
  out["consistent_example"] = r.consistent_example ? strings_json(*r.consistent_example) : Json();
  auto rules = Json::array();
  for (const auto& rule : r.rules)
    rules.push_back({{"rule", rule.name}, {"consistent_initial_states", rule.consistent_initial_states}});
  out["rules"] = std::move(rules);
  out["flip_answers"] = strings_json(r.flip_answers);
  out["violated_pair"] = r.violated_constraint
                             ? Json{r.violated_constraint->first + 1, r.violated_constraint->second + 1}
                             : Json();
  out["contradiction"] = r.contradiction();
  return out;
}

Json to_json(const FrameReport& r) {
  Json out;
  out["ok"] = r.ok;
  out["bases"] = r.values.size();
  out["min_value"] = r.min_value;
  out["max_sum_error"] = r.max_sum_error;
  auto values = Json::array();
  for (const auto& v : r.values) values.push_back({v[0], v[1], v[2]});
  out["values"] = std::move(values);
  return out;
}

// -- protocol and scenario --

Json to_json(const ProtocolConfig& c) {
  Json out;
  out["rounds"] = c.rounds;
  out["classes"] = strings_json(c.classes);
  out["eve"] = std::string(eve_strategy_name(c.eve));
  if (c.eve == EveStrategy::InterceptResendFixed) out["eve_class"] = c.eve_class;
  out["eve_rate"] = c.eve_rate;
  out["sample_fraction"] = c.sample_fraction;
  out["threshold"] = c.abort_threshold;
  out["seed"] = c.seed;
  return out;
}

Json to_json(const ProtocolStats& s) {
  Json out;
  out["rounds"] = s.rounds;
  out["sifted_count"] = s.sifted_count;
  out["sampled_count"] = s.sampled_count;
  out["sampled_errors"] = s.sampled_errors;
  out["qber"] = s.qber;
  out["detected"] = s.detected;
  out["eve_information_rounds"] = s.eve_information_rounds;
  out["sifted_errors"] = s.sifted_errors;
  out["sifted_qber"] = s.sifted_qber;
  return out;
}

Json to_json(const DetectionCurve& c) {
  Json out;
  auto rows = Json::array();
  for (const auto& r : c.rows)
    rows.push_back({{"rate", r.rate},
                    {"qber", r.mean_qber},
                    {"qber_stderr", r.qber_stderr},
                    {"sifted_qber", r.mean_sifted_qber},
                    {"detection_probability", r.detection_probability}});
  out["rows"] = std::move(rows);
  out["monotone"] = c.monotone;
  return out;
}

std::string records_csv(const std::vector<RoundRecord>& records, const std::vector<std::string>& classes) {
  std::string out = "round,alice_class,bob_class,sifted,error,eve_intercepted\n";
  for (const auto& r : records) {
    out += std::to_string(r.round);
    out += ',';
    out += classes[r.alice_class];
    out += ',';
    out += classes[r.bob_class];
    out += r.sifted ? ",1," : ",0,";
    if (r.sifted) out += r.error ? '1' : '0';
    out += r.eve_intercepted ? ",1\n" : ",0\n";
  }
  return out;
}

Json to_json(const BranchReport& r) {
  Json out;
  out["branch"] = std::string(wigner_branch_name(r.branch));
  out["input"] = std::string(wigner_input_name(r.input));
  out["sequence"] = strings_json(r.sequence);
  auto t = Json::array();
  for (const auto& e : r.transcript)
    t.push_back({{"question", e.question}, {"answer", e.answer}, {"probability", e.probability}});
  out["transcript"] = std::move(t);
  out["interaction_true"] = r.interaction_true;
  out["isolation_verdict"] = r.isolation_verdict;
  out["definite_record"] = r.definite_record;
  out["record_correlation"] = r.record_correlation;
  out["reassurance"] = r.reassurance;
  out["disturbance_witness"] =
      r.disturbance_witness
          ? Json{{"question", r.disturbance_witness->question}, {"agreement", r.disturbance_witness->agreement}}
          : Json();
  return out;
}

Json to_json(const IncompatibilityReport& r) {
  Json out;
  auto table = Json::array();
  for (const auto* b : {&r.friend_first, &r.wigner_first})
    table.push_back({{"branch", std::string(wigner_branch_name(b->branch))},
                     {"definite_record", b->definite_record},
                     {"isolation_verdict", b->isolation_verdict},
                     {"both", b->definite_record && b->isolation_verdict},
                     {"record_correlation", b->record_correlation}});
  out["dichotomy"] = std::move(table);
  out["conflict_free"] = r.conflict_free;
  out["foil"] = {{"claims_isolation", r.foil.claims_isolation},
                 {"isolated", r.foil.isolated},
                 {"agreement", r.foil.agreement},
                 {"violates_interaction_assumption", r.foil.violates_interaction_assumption}};
  return out;
}

}  // namespace qlogic::io
