#include "qlogic/question_space.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qlogic/error.hpp"

namespace qlogic {

QuestionSpace::QuestionSpace(std::map<ContextKey, ContextInput> contexts) {
  for (auto& [key, in] : contexts) {
    const auto& l = in.lattice;
    std::vector<std::string> classes(l.ids().begin(), l.ids().end());
    for (const auto& [element, cls] : in.classes) {
      const auto e = l.find(element);
      if (!e)
        throw InputError("InvalidSpace", "class map names unknown element '" + element + "' in " + key.str(),
                         {{"context", key.str()}, {"element", element}});
      classes[*e] = cls;
    }
    auto force = [&](Element e, const char* reserved) {
      if (in.classes.contains(l.id(e)) && classes[e] != reserved)
        throw InputError("InvalidSpace", "element '" + l.id(e) + "' of " + key.str() + " must carry class " + reserved,
                         {{"context", key.str()}, {"element", l.id(e)}, {"class", classes[e]}});
      classes[e] = reserved;
    };
    force(l.bottom(), kAbsurdity);
    force(l.top(), kTautology);
    for (Element e = 0; e < l.size(); ++e)
      if (e != l.top() && e != l.bottom() && (classes[e] == kTautology || classes[e] == kAbsurdity))
        throw InputError("InvalidSpace", "only top and bottom may carry class " + classes[e],
                         {{"context", key.str()}, {"element", l.id(e)}, {"class", classes[e]}});
    if (in.ortho && in.ortho->size() != l.size())
      throw InputError("InvalidSpace", "ortho map of " + key.str() + " does not cover the lattice",
                       {{"context", key.str()}});
    contexts_.emplace(key, SubLattice{std::move(in.lattice), std::move(in.ortho), std::move(classes)});
  }
}

const SubLattice& QuestionSpace::context(const ContextKey& key) const {
  const auto it = contexts_.find(key);
  if (it == contexts_.end())
    throw InputError("UnknownContext", "no sub-lattice for context " + key.str(), {{"context", key.str()}});
  return it->second;
}

std::vector<int> QuestionSpace::slots(const std::string& run) const {
  std::vector<int> out;
  for (const auto& [key, _] : contexts_)
    if (key.run == run) out.push_back(key.slot);
  return out;
}

std::vector<std::string> QuestionSpace::runs() const {
  std::vector<std::string> out;
  for (const auto& [key, _] : contexts_)
    if (out.empty() || out.back() != key.run) out.push_back(key.run);
  return out;
}

Question QuestionSpace::question(const ContextKey& key, const std::string& element) const {
  const auto& sub = context(key);
  return {sub.classes[sub.lattice.at(element)], key.run, key.slot, element};
}

std::optional<Element> QuestionSpace::element_of_class(const ContextKey& key, const std::string& class_id) const {
  const auto& sub = context(key);
  std::optional<Element> found;
  for (Element e = 0; e < sub.classes.size(); ++e)
    if (sub.classes[e] == class_id) {
      if (found) return std::nullopt;
      found = e;
    }
  return found;
}

std::vector<std::string> QuestionSpace::class_ids() const {
  std::set<std::string> all;
  for (const auto& [_, sub] : contexts_) all.insert(sub.classes.begin(), sub.classes.end());
  return {all.begin(), all.end()};
}

bool implies(const QuestionSpace& space, const Question& q1, const Question& q2) {
  if (q1.context() != q2.context())
    throw InputError("DifferentContext", "implication is only defined within one context",
                     {{"first", q1.context().str()}, {"second", q2.context().str()}});
  const auto& l = space.context(q1.context()).lattice;
  return l.leq(l.at(q1.element), l.at(q2.element));
}

Question negate(const QuestionSpace& space, const Question& q) {
  const auto& sub = space.context(q.context());
  if (!sub.ortho)
    throw InputError("NoOrthoMap", "context " + q.context().str() + " has no orthocomplementation",
                     {{"context", q.context().str()}});
  const auto e = (*sub.ortho)(sub.lattice.at(q.element));
  return {sub.classes[e], q.run_id, q.slot, sub.lattice.id(e)};
}

OrthogonalityReport check_sublattice_orthogonality(const QuestionSpace& space) {
  OrthogonalityReport report;
  for (const auto& [key, sub] : space.contexts()) {
    const auto& l = sub.lattice;
    for (Element a = 0; a < l.size(); ++a)
      for (Element b = a + 1; b < l.size(); ++b)
        if (sub.classes[a] == sub.classes[b])
          report.violations.push_back({key, l.id(a), l.id(b), sub.classes[a],
                                       l.meet(a, b) == l.bottom() && l.join(a, b) == l.top()});
  }
  return report;
}

namespace {

using ContextRef = std::pair<const ContextKey*, const SubLattice*>;

std::vector<ContextRef> context_refs(const QuestionSpace& space, const std::optional<std::string>& run) {
  std::vector<ContextRef> out;
  for (const auto& [key, sub] : space.contexts())
    if (!run || key.run == *run) out.emplace_back(&key, &sub);
  return out;
}

std::vector<PreservationFailure> preservation_failures(const ContextRef& from, const ContextRef& to) {
  std::vector<PreservationFailure> out;
  const auto& l1 = from.second->lattice;
  const auto& l2 = to.second->lattice;
  const auto& c1 = from.second->classes;
  const auto& c2 = to.second->classes;
  for (Element q1 = 0; q1 < l1.size(); ++q1)
    for (Element q1p = 0; q1p < l2.size(); ++q1p) {
      if (c1[q1] != c2[q1p]) continue;
      for (Element q2 = 0; q2 < l1.size(); ++q2) {
        if (!l1.leq(q1, q2)) continue;
        std::vector<std::string> candidates;
        for (Element q2p = 0; q2p < l2.size(); ++q2p)
          if (c2[q2p] == c1[q2] && l2.leq(q1p, q2p)) candidates.push_back(l2.id(q2p));
        if (candidates.size() == 1) continue;
        out.push_back({*from.first, *to.first, l1.id(q1), l2.id(q1p), l1.id(q2),
                       candidates.empty() ? PreservationFailure::Kind::Missing : PreservationFailure::Kind::Ambiguous,
                       std::move(candidates)});
      }
    }
  return out;
}

PreservationReport preservation(const std::vector<ContextRef>& refs, bool parallel) {
  const auto n = static_cast<long>(refs.size());
  std::vector<std::vector<PreservationFailure>> per_pair(static_cast<std::size_t>(n * n));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long k = 0; k < n * n; ++k) {
    const auto i = k / n, j = k % n;
    if (i != j) per_pair[static_cast<std::size_t>(k)] = preservation_failures(refs[i], refs[j]);
  }
  PreservationReport report;
  for (auto& v : per_pair) std::move(v.begin(), v.end(), std::back_inserter(report.failures));
  return report;
}

[[noreturn]] void preservation_failed(const std::string& message, nlohmann::ordered_json details) {
  throw CheckError("PreservationFailed", message, std::move(details));
}

}  // namespace

PreservationReport check_structure_preservation(const QuestionSpace& space) {
  return preservation(context_refs(space, std::nullopt), true);
}

PreservationReport check_structure_preservation_serial(const QuestionSpace& space) {
  return preservation(context_refs(space, std::nullopt), false);
}

Quotient lift_quotient(const QuestionSpace& space, const std::optional<std::string>& run) {
  const auto refs = context_refs(space, run);
  if (refs.empty()) preservation_failed("no contexts to lift", {{"run", run ? *run : ""}});
  const auto report = preservation(refs, true);
  if (!report.ok()) {
    const auto& f = report.failures.front();
    preservation_failed("structure preservation fails between " + f.from.str() + " and " + f.to.str(),
                        {{"from", f.from.str()}, {"to", f.to.str()}, {"q1", f.q1}, {"q2", f.q2}});
  }

  const auto& [rep_key, rep] = refs.front();
  const auto& rl = rep->lattice;
  {
    std::set<std::string> seen(rep->classes.begin(), rep->classes.end());
    if (seen.size() != rep->classes.size())
      preservation_failed("context " + rep_key->str() + " repeats a class", {{"context", rep_key->str()}});
  }
  for (const auto& [key, sub] : refs) {
    const auto& l = sub->lattice;
    if (l.size() != rl.size())
      preservation_failed("contexts " + rep_key->str() + " and " + key->str() + " differ in size",
                          {{"from", rep_key->str()}, {"to", key->str()}});
    std::vector<Element> image(rl.size());
    for (Element e = 0; e < rl.size(); ++e) {
      const auto m = space.element_of_class(*key, rep->classes[e]);
      if (!m)
        preservation_failed("class " + rep->classes[e] + " is not matched exactly once in " + key->str(),
                            {{"context", key->str()}, {"class", rep->classes[e]}});
      image[e] = *m;
    }
    for (Element a = 0; a < rl.size(); ++a) {
      for (Element b = 0; b < rl.size(); ++b)
        if (rl.leq(a, b) != l.leq(image[a], image[b]))
          preservation_failed("order of classes differs in " + key->str(),
                              {{"context", key->str()}, {"pair", {rep->classes[a], rep->classes[b]}}});
      if (rep->ortho && sub->ortho && image[(*rep->ortho)(a)] != (*sub->ortho)(image[a]))
        preservation_failed("orthocomplement of class " + rep->classes[a] + " differs in " + key->str(),
                            {{"context", key->str()}, {"class", rep->classes[a]}});
    }
  }

  PosetSpec spec;
  spec.elements = rep->classes;
  for (const auto& [a, b] : cover_pairs(rl)) spec.covers.emplace_back(rep->classes[a], rep->classes[b]);
  Quotient q{build_lattice(spec), std::nullopt, *rep_key};
  if (rep->ortho) {
    std::vector<Element> image(rl.size());
    for (Element e = 0; e < rl.size(); ++e) image[e] = (*rep->ortho)(e);
    q.ortho = OrthoMap(std::move(image));
  }
  return q;
}

ClassJoinReport detect_class_joins(const QuestionSpace& space,
                                   const std::vector<std::pair<std::string, std::string>>& merges) {
  auto ids = space.class_ids();
  for (const auto& [a, b] : merges) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index = [&](const std::string& c) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), c) - ids.begin());
  };

  std::vector<std::size_t> parent(ids.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : merges) {
    // Smallest id becomes the representative.
    const auto ra = find(index(a)), rb = find(index(b));
    parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  ClassJoinReport report;
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < ids.size(); ++i) groups[find(i)].push_back(ids[i]);
  for (auto& [_, members] : groups)
    if (members.size() > 1) report.merged_classes.push_back(std::move(members));

  for (const auto& [key, sub] : space.contexts()) {
    const auto& l = sub.lattice;
    for (Element a = 0; a < l.size(); ++a)
      for (Element b = a + 1; b < l.size(); ++b) {
        const auto ra = find(index(sub.classes[a]));
        if (ra == find(index(sub.classes[b])))
          report.flags.push_back({key, l.id(a), l.id(b), ids[ra], sub.classes[a] != sub.classes[b]});
      }
  }
  return report;
}

namespace {

std::vector<std::vector<Element>> lower_covers(const Lattice& l) {
  std::vector<std::vector<Element>> out(l.size());
  for (const auto& [a, b] : cover_pairs(l)) out[b].push_back(a);
  return out;
}

}  // namespace

std::vector<std::vector<Question>> enumerate_refinements(const QuestionSpace& space, const std::string& run) {
  const auto quotient = lift_quotient(space, run);
  const auto& l = quotient.lattice;
  const auto below = lower_covers(l);
  const auto run_slots = space.slots(run);

  std::vector<std::vector<Question>> out;
  std::vector<Element> chain;
  auto emit = [&] {
    std::vector<Question> seq;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const ContextKey key{run, run_slots[std::min(i, run_slots.size() - 1)]};
      const auto& sub = space.context(key);
      const auto e = *space.element_of_class(key, l.id(chain[i]));
      seq.push_back({l.id(chain[i]), run, key.slot, sub.lattice.id(e)});
    }
    out.push_back(std::move(seq));
  };
  auto descend = [&](auto&& self, Element x) -> void {
    chain.push_back(x);
    bool extended = false;
    for (const auto y : below[x])
      if (y != l.bottom()) {
        extended = true;
        self(self, y);
      }
    if (!extended) emit();
    chain.pop_back();
  };
  if (l.top() != l.bottom()) descend(descend, l.top());
  return out;
}

std::size_t resolution_restriction(const QuestionSpace& space, const std::string& run) {
  const auto quotient = lift_quotient(space, run);
  const auto& l = quotient.lattice;
  const auto at = atoms(l);
  for (Element e = 0; e < l.size(); ++e)
    if (e != l.bottom() && std::none_of(at.begin(), at.end(), [&](Element a) { return l.leq(a, e); }))
      throw CheckError("NotAtomic", "quotient element " + l.id(e) + " dominates no atom", {{"element", l.id(e)}});
  if (l.top() == l.bottom()) return 0;

  // Longest chain from the bottom, counted in elements above the bottom.
  const auto below = lower_covers(l);
  std::vector<std::size_t> depth(l.size(), 0), down(l.size(), 0);
  for (Element a = 0; a < l.size(); ++a)
    for (Element x = 0; x < l.size(); ++x) down[a] += l.leq(x, a);
  std::vector<Element> order(l.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Element a, Element b) { return down[a] < down[b]; });
  for (const auto x : order)
    for (const auto y : below[x]) depth[x] = std::max(depth[x], depth[y] + 1);
  return depth[l.top()];
}

}  // namespace qlogic
