#include "reachprobe/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "reachprobe/errors.hpp"

namespace reachprobe::json {

namespace {

void write_string(std::string& out, const std::string& s) {
  // Reuse the library's escaping for strings; only numbers need our format.
  out += Json(s).dump();
}

void write(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        write_string(out, it.key());
        out += ": ";
        write(out, it.value(), indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line so points and grids are compact.
      bool scalar = true;
      for (const auto& e : j) scalar = scalar && !e.is_structured();
      if (scalar) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(out, j[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write(out, j[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json parse_text(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw ParseError(std::string(what) + ": malformed JSON", line, col);
  }
}

[[noreturn]] void field_error(const std::string& field, const std::string& problem) {
  throw InvalidInput("field '" + field + "': " + problem);
}

const Json& require(const Json& obj, const std::string& key, const std::string& path = "") {
  const std::string field = path.empty() ? key : path + "." + key;
  if (!obj.contains(key)) field_error(field, "missing");
  return obj.at(key);
}

double as_number(const Json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(field, "must be finite");
  return v;
}

long as_integer(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<long>();
}

Point as_point(const Json& j, const std::string& field, int dim) {
  if (!j.is_array()) field_error(field, "expected an array of numbers");
  if (dim >= 0 && static_cast<int>(j.size()) != dim)
    field_error(field, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
  Point p(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    p[static_cast<Eigen::Index>(i)] = as_number(j[i], field + "[" + std::to_string(i) + "]");
  return p;
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) field_error(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write(out, j, 0);
  out += "\n";
  return out;
}

Json number(double v) { return Json(v); }

Json point(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

Json to_json(const DomainSpec& spec) {
  Json j;
  j["kind"] = spec.kind;
  j["name"] = spec.name;
  j["dim"] = spec.dim;
  Json params = Json::object();
  for (const auto& [k, v] : spec.params) params[k] = v;
  j["params"] = params;
  if (!spec.expr.empty()) j["expr"] = spec.expr;
  return j;
}

Json to_json(const RegularityReport& r) {
  Json j;
  j["domain"] = to_json(r.domain);
  j["seed"] = r.seed;
  j["requested_samples"] = r.requested_samples;
  j["sample_count"] = r.sample_count;
  j["spacing"] = r.spacing;
  j["r_max"] = r.r_max;
  j["refinement_iters"] = r.refinement_iters;
  j["shrink"] = r.shrink;
  j["duplicate_guard"] = r.duplicate_guard;
  j["root_tol"] = r.root_tol;
  j["r_support"] = r.r_support;
  j["r_support_direction"] = "over-estimate of the uniform two-sided radius";
  j["lip_normal"] = r.lip_normal;
  j["lip_normal_direction"] = "lower bound of the normal's Lipschitz constant";
  j["product"] = r.product;
  Json pair;
  pair["ratio"] = r.best_pair.ratio;
  pair["a"] = point(r.best_pair.a);
  pair["b"] = point(r.best_pair.b);
  j["best_pair"] = pair;
  return j;
}

Json to_json(const fourball::TrialReport& r) {
  Json j;
  j["total"] = r.total;
  j["applicable"] = r.applicable;
  j["violations"] = r.violations;
  j["worst_slack"] = r.worst_slack;
  j["seed"] = r.seed;
  return j;
}

Json to_json(const lp::CampaignReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["worst_relative"] = r.worst_relative;
  j["seed"] = r.seed;
  return j;
}

Json to_json(const lp::HolderTrialReport& r) {
  Json j;
  j["total"] = r.total;
  j["applicable"] = r.applicable;
  j["violations"] = r.violations;
  j["worst_relative"] = r.worst_relative;
  j["seed"] = r.seed;
  return j;
}

Json to_json(const GraphCertificate& c) {
  const LocalGraph& g = c.graph;
  const Point n = g.frame.rotate_inverse(Point::Unit(g.dim(), g.dim() - 1));
  Json j;
  j["r"] = c.r;
  j["rho"] = g.rho;
  j["h"] = g.h;
  j["spacing"] = g.spacing;
  j["grid_n"] = g.grid_n;
  j["dim"] = g.dim();
  j["nodes"] = g.nodes.size();
  j["base_point"] = point(g.base_point);
  j["grad_max"] = c.grad_max;
  j["delta0"] = c.delta0;
  j["envelope_ok"] = c.envelope_ok;
  j["balls_ok"] = c.balls_ok;
  j["envelope_worst_margin"] = c.envelope_worst_margin;
  j["ball_worst_clearance"] = c.ball_worst_clearance;
  j["continuum_slack"] = c.continuum_slack;
  j["inner_center"] = point(g.base_point - c.delta0 * n);
  j["outer_center"] = point(g.base_point + c.delta0 * n);
  return j;
}

Json graph_to_json(const LocalGraph& g) {
  const int tangent_dim = g.dim() - 1;
  std::size_t total = 1;
  for (int k = 0; k < tangent_dim; ++k) total *= static_cast<std::size_t>(g.grid_n);
  Json values(Json::value_t::array);
  Json grads(Json::value_t::array);
  for (std::size_t i = 0; i < total; ++i) {
    values.push_back(nullptr);
    grads.push_back(nullptr);
  }
  for (const auto& node : g.nodes) {
    values[node.flat_index] = node.phi;
    grads[node.flat_index] = point(node.grad);
  }
  Json j;
  j["rho"] = g.rho;
  j["h"] = g.h;
  j["spacing"] = g.spacing;
  j["grid_n"] = g.grid_n;
  j["dim"] = g.dim();
  j["base_point"] = point(g.base_point);
  Json rot = Json::array();
  for (int r = 0; r < g.dim(); ++r) rot.push_back(point(g.frame.rotation().row(r).transpose()));
  j["frame"] = {{"rotation", rot}, {"translation", point(g.frame.translation())}};
  j["values"] = values;
  j["gradients"] = grads;
  return j;
}

LocalGraph parse_graph(const std::string& text) {
  const Json j = parse_text(text, "graph file");
  if (!j.is_object()) field_error("(root)", "expected an object");
  reject_unknown(j, {"rho", "h", "spacing", "grid_n", "dim", "base_point", "frame", "values", "gradients"}, "");

  LocalGraph g;
  const long dim = as_integer(require(j, "dim"), "dim");
  if (dim < 2) field_error("dim", "must be >= 2");
  g.rho = as_number(require(j, "rho"), "rho");
  if (!(g.rho > 0.0)) field_error("rho", "must be positive");
  g.h = as_number(require(j, "h"), "h");
  if (!(g.h > 0.0)) field_error("h", "must be positive");
  const long grid_n = as_integer(require(j, "grid_n"), "grid_n");
  if (grid_n < 3 || grid_n % 2 == 0) field_error("grid_n", "must be odd and >= 3");
  g.grid_n = static_cast<int>(grid_n);
  g.spacing = 2.0 * g.rho / static_cast<double>(grid_n - 1);
  if (j.contains("spacing")) {
    const double s = as_number(j.at("spacing"), "spacing");
    if (std::abs(s - g.spacing) > 1e-12 * g.spacing) field_error("spacing", "inconsistent with 2 rho / (grid_n - 1)");
  }
  const int d = static_cast<int>(dim);
  g.base_point = as_point(require(j, "base_point"), "base_point", d);

  const Json& frame = require(j, "frame");
  if (!frame.is_object()) field_error("frame", "expected an object");
  reject_unknown(frame, {"rotation", "translation"}, "frame");
  const Json& rot = require(frame, "rotation", "frame");
  if (!rot.is_array() || static_cast<int>(rot.size()) != d)
    field_error("frame.rotation", "expected " + std::to_string(d) + " rows");
  Matrix R(d, d);
  for (int r = 0; r < d; ++r)
    R.row(r) = as_point(rot[static_cast<std::size_t>(r)], "frame.rotation[" + std::to_string(r) + "]", d).transpose();
  const Point t = as_point(require(frame, "translation", "frame"), "frame.translation", d);
  try {
    g.frame = RigidFrame(R, t);
  } catch (const InvalidInput& e) {
    field_error("frame", e.what());
  }

  const int tangent_dim = d - 1;
  g.nodes = LocalGraph::grid_nodes(tangent_dim, g.rho, g.grid_n);
  std::size_t total = 1;
  for (int k = 0; k < tangent_dim; ++k) total *= static_cast<std::size_t>(g.grid_n);

  const Json& values = require(j, "values");
  if (!values.is_array() || values.size() != total)
    field_error("values", "expected " + std::to_string(total) + " entries (grid_n^(dim-1))");
  std::unordered_map<std::size_t, std::size_t> node_of;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) node_of[g.nodes[i].flat_index] = i;
  for (std::size_t f = 0; f < total; ++f) {
    const bool in_disc = node_of.count(f) > 0;
    const std::string field = "values[" + std::to_string(f) + "]";
    if (!in_disc) {
      if (!values[f].is_null()) field_error(field, "must be null outside the disc");
      continue;
    }
    const double v = as_number(values[f], field);
    if (!(std::abs(v) < g.h)) field_error(field, "graph leaves the cylinder (|phi| >= h)");
    g.nodes[node_of[f]].phi = v;
  }

  if (j.contains("gradients")) {
    const Json& grads = j.at("gradients");
    if (!grads.is_array() || grads.size() != total)
      field_error("gradients", "expected " + std::to_string(total) + " entries");
    for (std::size_t f = 0; f < total; ++f) {
      const std::string field = "gradients[" + std::to_string(f) + "]";
      auto it = node_of.find(f);
      if (it == node_of.end()) {
        if (!grads[f].is_null()) field_error(field, "must be null outside the disc");
        continue;
      }
      g.nodes[it->second].grad = as_point(grads[f], field, tangent_dim);
    }
  } else {
    std::vector<std::size_t> stride(static_cast<std::size_t>(tangent_dim), 1);
    for (int k = tangent_dim - 2; k >= 0; --k) stride[k] = stride[k + 1] * static_cast<std::size_t>(g.grid_n);
    for (auto& node : g.nodes) {
      Point grad = Point::Zero(tangent_dim);
      std::size_t rem = node.flat_index;
      for (int k = 0; k < tangent_dim; ++k) {
        const std::size_t idx = rem / stride[k];
        rem %= stride[k];
        const double* fwd = nullptr;
        const double* bwd = nullptr;
        if (idx + 1 < static_cast<std::size_t>(g.grid_n)) {
          auto it = node_of.find(node.flat_index + stride[k]);
          if (it != node_of.end()) fwd = &g.nodes[it->second].phi;
        }
        if (idx > 0) {
          auto it = node_of.find(node.flat_index - stride[k]);
          if (it != node_of.end()) bwd = &g.nodes[it->second].phi;
        }
        if (fwd && bwd) grad[k] = (*fwd - *bwd) / (2.0 * g.spacing);
        else if (fwd) grad[k] = (*fwd - node.phi) / g.spacing;
        else if (bwd) grad[k] = (node.phi - *bwd) / g.spacing;
      }
      node.grad = grad;
    }
  }
  return g;
}

LoadedDomain parse_domain_spec(const std::string& text) {
  const Json j = parse_text(text, "domain spec");
  if (!j.is_object()) field_error("(root)", "expected an object");
  reject_unknown(j, {"kind", "name", "params", "dim", "bbox", "expr", "seeds"}, "");
  const Json& kind_j = require(j, "kind");
  if (!kind_j.is_string()) field_error("kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();

  int dim = 2;
  if (j.contains("dim")) {
    const long d = as_integer(j.at("dim"), "dim");
    if (d < 2 || d > 64) field_error("dim", "must be in [2, 64]");
    dim = static_cast<int>(d);
  }

  LoadedDomain out;
  if (kind == "builtin") {
    for (const char* k : {"bbox", "expr", "seeds"})
      if (j.contains(k)) field_error(k, "only valid for implicit domains");
    const Json& name_j = require(j, "name");
    if (!name_j.is_string()) field_error("name", "expected a string");
    std::map<std::string, double> params;
    if (j.contains("params")) {
      const Json& p = j.at("params");
      if (!p.is_object()) field_error("params", "expected an object");
      for (auto it = p.begin(); it != p.end(); ++it)
        params[it.key()] = as_number(it.value(), "params." + it.key());
    }
    try {
      out.domain = builtin(name_j.get<std::string>(), params, dim);
    } catch (const InvalidInput& e) {
      throw InvalidInput(std::string("field 'name'/'params': ") + e.what());
    }
  } else if (kind == "implicit") {
    if (j.contains("params")) field_error("params", "only valid for builtin domains");
    const Json& expr_j = require(j, "expr");
    if (!expr_j.is_string()) field_error("expr", "expected a string");
    const Json& bbox = require(j, "bbox");
    if (!bbox.is_array() || bbox.size() != 2) field_error("bbox", "expected [[lo...], [hi...]]");
    Box box;
    box.lo = as_point(bbox[0], "bbox[0]", dim);
    box.hi = as_point(bbox[1], "bbox[1]", dim);
    if (!((box.hi - box.lo).minCoeff() > 0.0)) field_error("bbox", "requires lo < hi in every coordinate");
    std::vector<Point> seeds;
    if (j.contains("seeds")) {
      const Json& s = j.at("seeds");
      if (!s.is_array()) field_error("seeds", "expected an array of points");
      for (std::size_t i = 0; i < s.size(); ++i) seeds.push_back(as_point(s[i], "seeds[" + std::to_string(i) + "]", dim));
    }
    try {
      out.domain = make_implicit(expr_j.get<std::string>(), dim, box, std::move(seeds));
    } catch (const ParseError& e) {
      throw InvalidInput(std::string("field 'expr': ") + e.what());
    }
  } else {
    field_error("kind", "must be \"builtin\" or \"implicit\"");
  }
  out.spec = out.domain->spec();
  return out;
}

}  // namespace reachprobe::json
