#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlogic/families.hpp"
#include "qlogic/gleason.hpp"
#include "qlogic/lattice.hpp"
#include "qlogic/protocol.hpp"
#include "qlogic/question_space.hpp"
#include "qlogic/theory.hpp"
#include "qlogic/wigner.hpp"

namespace qlogic::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file. Throws InputError("FileNotFound") or
/// InputError("ParseError") with line/column details.
Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text, const std::string& origin = "<input>");

// -- lattices: { "elements": [...], "covers": [[lo, hi], ...], "ortho": {id: id} } --

struct LatticeFile {
  PosetSpec spec;
  std::optional<std::map<std::string, std::string>> ortho;
};

LatticeFile parse_lattice_file(const Json& j);
Json to_json(const LatticeFile& f);
Json to_json(const Lattice& l, const ClassificationReport& r);
Json to_json(const Lattice& l, const BirkhoffRepresentation& b);

// -- spaces: { "sublattices": {"run:slot": <lattice>}, "classes": {"run:slot:element": class} } --

/// Every sub-lattice gets its supplied orthocomplementation (validated,
/// CheckError "InvalidOrthoMap"), else the first orthomodular one found.
QuestionSpace parse_space(const Json& j);
ContextKey parse_context_key(const std::string& key);

Json to_json(const OrthogonalityReport& r);
Json to_json(const PreservationReport& r);
Json to_json(const ClassJoinReport& r);
Json to_json(const Quotient& q);
Json to_json(const Question& q);

// -- theories: { "kind": "quantum" | "product" | "tabulated" | "flip", ... } --

Theory parse_theory(const Json& j);

/// { "sequences": [["Z", "X"], ...] }, each sequence one run.
std::vector<InquirySequence> parse_domain(const Json& j);

Json to_json(const Probability& p);
Json to_json(const JointDistribution& d);
Json to_json(const ContextualityReport& r);
Json to_json(const IsolationReport& r);
Json to_json(const DisturbanceReport& r);
Json to_json(const TriadReport& r);
Json to_json(const FrameReport& r);

// -- protocol and scenario --

Json to_json(const ProtocolConfig& c);
Json to_json(const ProtocolStats& s);
Json to_json(const DetectionCurve& c);
/// CSV with columns round, alice_class, bob_class, sifted, error, eve_intercepted.
std::string records_csv(const std::vector<RoundRecord>& records, const std::vector<std::string>& classes);

Json to_json(const BranchReport& r);
Json to_json(const IncompatibilityReport& r);

}  // namespace qlogic::io
