#pragma once

#include <string>

#include <json.hpp>

#include "bnfuse/digraph.hpp"
#include "bnfuse/fusion.hpp"
#include "bnfuse/independence.hpp"
#include "bnfuse/optimization.hpp"
#include "bnfuse/reductions.hpp"

namespace bnfuse {

using Json = nlohmann::json;

// Readers throw ParseError on malformed documents and DomainError on
// documents that parse but describe an invalid object.

Json to_json(const Digraph& d);
Digraph digraph_from_json(const Json& j);

Json arc_to_json(const Digraph& d, Arc a);
Arc arc_from_json(const Digraph& d, const Json& j);
Json arcs_to_json(const Digraph& d, const ArcSet& arcs);

Json ordering_to_json(const Digraph& d, const Ordering& alpha);
Ordering ordering_from_json(const Digraph& d, const Json& j);

// List of {"X", "Z", "Y"} in canonical statement order.
Json to_json(const DependencyModel& m);
DependencyModel model_from_json(const std::vector<std::string>& universe, const Json& j);

Json to_json(const RecursiveBasis& b);

// List of {"name", "vertices", "arcs"}.
Json to_json(const ExpertSet& e);
ExpertSet experts_from_json(const Json& j);

// {"kind", "digraphs"}.
Json to_json(const ProblemInstance& p);
ProblemInstance instance_from_json(const Json& j);

// Hex FNV-1a hash of the compact digraph document.
std::string digest(const Digraph& d);

Json to_json(const ProblemInstance& p, const Solution& s);
Solution solution_from_json(const ProblemInstance& p, const Json& j);

Json to_json(const ReductionArtifact& a);
ReductionArtifact artifact_from_json(const Json& j);
Json to_json(const ReductionReport& r);
Json to_json(const Digraph& d, const ExclusiveCycleReport& r);

Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);
// Writes to a sibling temporary file and renames it into place.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace bnfuse
