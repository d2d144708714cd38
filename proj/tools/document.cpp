#include "document.hpp"

#include <cmath>

#include <json.hpp>

#include "svf/error.hpp"

namespace svf::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const json& require_key(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(std::string("missing key \"") + key + "\"");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  return j.get<double>();
}

Point exact(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where + " must be an exact number written as a string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    fail(where + ": " + e.what());
  }
}

std::vector<Point> exact_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array");
  std::vector<Point> out;
  for (const auto& x : j) out.push_back(exact(x, where));
  return out;
}

ComplexMatrix parse_block(const json& j, std::size_t index) {
  const std::string where = "element block " + std::to_string(index);
  if (!j.is_array()) fail(where + " must be an array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) fail(where + " is not square");
    for (Eigen::Index c = 0; c < n; ++c) {
      const json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2) fail(where + " entries must be [re, im] pairs");
      m(r, c) = {number(z[0], where), number(z[1], where)};
    }
  }
  return m;
}

ScalarDomain parse_domain(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "dyadic") return ScalarDomain::dyadic();
    if (s == "rational") return ScalarDomain::rational();
    fail("unknown domain \"" + s + "\"");
  }
  if (j.is_object()) {
    try {
      return ScalarDomain::finite_grid(exact_list(require_key(j, "grid"), "grid"));
    } catch (const Error& e) {
      fail(std::string("grid: ") + e.what());
    }
  }
  fail("domain must be \"dyadic\", \"rational\" or {\"grid\": [...]}");
}

json domain_json(const ScalarDomain& d) {
  switch (d.kind()) {
    case ScalarDomain::Kind::Dyadic: return "dyadic";
    case ScalarDomain::Kind::Rational: return "rational";
    case ScalarDomain::Kind::FiniteGrid: {
      json grid = json::array();
      for (const auto& p : d.grid()) grid.push_back(render_rational(p));
      return json{{"grid", grid}};
    }
  }
  return nullptr;
}

TargetDescription parse_target(const json& j) {
  if (!j.is_object()) fail("target_function must be an object");
  TargetDescription t;
  const json& kind = require_key(j, "kind");
  if (!kind.is_string()) fail("target_function.kind must be a string");
  t.kind = kind.get<std::string>();
  if (j.contains("domain")) t.domain = parse_domain(j["domain"]);
  if (t.kind == "step") {
    t.breakpoints = exact_list(require_key(j, "breakpoints"), "breakpoints");
    const json& values = require_key(j, "values");
    if (!values.is_array()) fail("values must be an array");
    for (const auto& v : values) t.values.push_back(number(v, "values"));
  } else if (t.kind == "constant") {
    t.constant = number(require_key(j, "value"), "value");
  } else if (t.kind != "one_minus_t" && t.kind != "reciprocal") {
    fail("unknown target_function kind \"" + t.kind + "\"");
  }
  if (j.contains("jumps")) {
    const json& jumps = j["jumps"];
    if (!jumps.is_array()) fail("jumps must be an array");
    for (const auto& x : jumps) {
      if (!x.is_object()) fail("jumps entries must be objects");
      t.jumps.push_back({exact(require_key(x, "point"), "jump point"), number(require_key(x, "size"), "jump size")});
    }
  }
  return t;
}

json target_json(const TargetDescription& t) {
  json j{{"kind", t.kind}, {"domain", domain_json(t.domain)}};
  if (t.kind == "step") {
    json bps = json::array();
    for (const auto& p : t.breakpoints) bps.push_back(render_rational(p));
    j["breakpoints"] = bps;
    j["values"] = t.values;
  } else if (t.kind == "constant") {
    j["value"] = t.constant;
  }
  if (!t.jumps.empty()) {
    json jumps = json::array();
    for (const auto& x : t.jumps) jumps.push_back({{"point", render_rational(x.point)}, {"size", x.size}});
    j["jumps"] = jumps;
  }
  return j;
}

}  // namespace

bool operator==(const TargetDescription& a, const TargetDescription& b) {
  if (a.jumps.size() != b.jumps.size()) return false;
  for (std::size_t i = 0; i < a.jumps.size(); ++i) {
    if (a.jumps[i].point != b.jumps[i].point || a.jumps[i].size != b.jumps[i].size) return false;
  }
  return a.kind == b.kind && a.domain == b.domain && a.breakpoints == b.breakpoints && a.values == b.values &&
         a.constant == b.constant;
}

bool operator==(const Document& a, const Document& b) {
  if (a.element.has_value() != b.element.has_value()) return false;
  if (a.element) {
    if (a.element->size() != b.element->size()) return false;
    for (std::size_t i = 0; i < a.element->size(); ++i) {
      const auto& x = (*a.element)[i];
      const auto& y = (*b.element)[i];
      if (x.rows() != y.rows() || !(x.array() == y.array()).all()) return false;
    }
  }
  return a.algebra == b.algebra && a.k0_class == b.k0_class && a.target == b.target && a.seed == b.seed &&
         a.trials == b.trials;
}

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail("document must be a JSON object");

  Document doc;
  try {
    if (j.contains("algebra")) {
      const json& a = j["algebra"];
      if (!a.is_array()) fail("algebra must be an array of block sizes");
      std::vector<int> sizes;
      for (const auto& n : a) {
        if (!n.is_number_integer() || n.get<long long>() < 1) fail("block sizes must be positive integers");
        sizes.push_back(n.get<int>());
      }
      doc.algebra = std::move(sizes);
    }
    if (j.contains("element")) {
      const json& e = j["element"];
      if (!e.is_array()) fail("element must be an array of blocks");
      std::vector<ComplexMatrix> blocks;
      for (std::size_t i = 0; i < e.size(); ++i) blocks.push_back(parse_block(e[i], i));
      doc.element = std::move(blocks);
    }
    if (j.contains("k0_class")) {
      if (!j["k0_class"].is_string()) fail("k0_class must be a string");
      doc.k0_class = j["k0_class"].get<std::string>();
    }
    if (j.contains("target_function")) doc.target = parse_target(j["target_function"]);
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) fail("seed must be a non-negative integer");
      doc.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("trials")) {
      if (!j["trials"].is_number_integer()) fail("trials must be an integer");
      doc.trials = j["trials"].get<int>();
    }
  } catch (const json::exception& e) {
    fail(std::string("bad document: ") + e.what());
  }
  return doc;
}

std::string serialize_document(const Document& doc) {
  json j = json::object();
  if (doc.algebra) j["algebra"] = *doc.algebra;
  if (doc.element) {
    json blocks = json::array();
    for (const auto& m : *doc.element) {
      json rows = json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
      }
      blocks.push_back(rows);
    }
    j["element"] = blocks;
  }
  if (doc.k0_class) j["k0_class"] = *doc.k0_class;
  if (doc.target) j["target_function"] = target_json(*doc.target);
  if (doc.seed) j["seed"] = *doc.seed;
  if (doc.trials) j["trials"] = *doc.trials;
  return j.dump(2) + "\n";
}

AlgebraElement element_of(const Document& doc) {
  if (!doc.algebra) fail("missing key \"algebra\"");
  if (!doc.element) fail("missing key \"element\"");
  return AlgebraElement(MultiMatrixAlgebra(*doc.algebra), *doc.element);
}

TargetFunction target_of(const TargetDescription& desc) {
  if (desc.kind == "step") {
    const StepFunction g(desc.breakpoints, desc.values);
    TargetFunction f = TargetFunction::from_step(desc.domain, g);
    if (!desc.jumps.empty()) {
      const auto& derived = f.declared_jumps();
      bool same = derived.size() == desc.jumps.size();
      for (std::size_t i = 0; same && i < derived.size(); ++i) {
        same = derived[i].point == desc.jumps[i].point && std::abs(derived[i].size - desc.jumps[i].size) <= 1e-12;
      }
      if (!same) throw Error(Errc::InvalidArgument, "declared jumps differ from the jumps of the step function");
    }
    return f;
  }
  if (!desc.jumps.empty()) throw Error(Errc::InvalidArgument, desc.kind + " has no jumps");
  if (desc.kind == "one_minus_t") return TargetFunction::one_minus_t(desc.domain);
  if (desc.kind == "reciprocal") return TargetFunction::reciprocal(desc.domain);
  if (desc.kind == "constant") return TargetFunction::constant(desc.domain, desc.constant);
  fail("unknown target_function kind \"" + desc.kind + "\"");
}

}  // namespace svf::cli
