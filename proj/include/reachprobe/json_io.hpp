#ifndef REACHPROBE_JSON_IO_HPP
#define REACHPROBE_JSON_IO_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "reachprobe/domain.hpp"
#include "reachprobe/estimators.hpp"
#include "reachprobe/fourball.hpp"
#include "reachprobe/graph_certificates.hpp"
#include "reachprobe/local_graph.hpp"
#include "reachprobe/lp_inequalities.hpp"

namespace reachprobe::json {

using Json = nlohmann::ordered_json;

/// Deterministic text form: two-space indent, keys in insertion order,
/// floating-point values with 17 significant digits, non-finite values as
/// null. Ends with a newline.
std::string dump(const Json& j);

Json number(double v);
Json point(const Point& p);

Json to_json(const DomainSpec& spec);
Json to_json(const RegularityReport& r);
Json to_json(const fourball::TrialReport& r);
Json to_json(const lp::CampaignReport& r);
Json to_json(const lp::HolderTrialReport& r);
Json to_json(const GraphCertificate& c);

/// Graph file: {"rho","h","spacing","grid_n","dim","base_point",
/// "frame":{"rotation","translation"},"values","gradients"}. values and
/// gradients are row-major over the full grid_n^(dim-1) grid with null at
/// nodes outside the disc.
Json graph_to_json(const LocalGraph& g);

/// Parses a graph file. When "gradients" is absent, gradients are estimated
/// by central differences (one-sided at the disc edge). Throws ParseError
/// for malformed JSON and InvalidInput naming the offending field.
LocalGraph parse_graph(const std::string& text);

struct LoadedDomain {
  DomainPtr domain;
  DomainSpec spec;
};

/// Parses a domain spec file:
///   {"kind":"builtin","name":"ellipsoid","params":{"a1":2,"a2":1},"dim":2}
///   {"kind":"implicit","expr":"x^2+y^2-1","dim":2,
///    "bbox":[[-1.2,-1.2],[1.2,1.2]],"seeds":[[0,0]]}
/// Throws ParseError for malformed JSON and InvalidInput naming the field.
LoadedDomain parse_domain_spec(const std::string& text);

}  // namespace reachprobe::json

#endif  // REACHPROBE_JSON_IO_HPP
