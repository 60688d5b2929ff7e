#include "gentwistor/tools/field_io.hpp"

#include <fstream>

#include "gentwistor/clifford.hpp"

namespace gentwistor::tools {

using flatmodel::FieldKind;
using flatmodel::Poly;
using flatmodel::PolyField;
using nlohmann::json;

namespace {

std::size_t spinor_dim(int p, int q) { return clifford::build_clifford(p, q).spinor_dim(); }

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int parse_weight(const std::string& s) {
  try {
    std::size_t used = 0;
    auto slash = s.find('/');
    if (slash == std::string::npos) {
      int w = std::stoi(s, &used);
      if (used != s.size()) throw InputError("bad weight '" + s + "'");
      return 2 * w;
    }
    if (s.substr(slash) != "/2") throw InputError("weights are integers or halves, got '" + s + "'");
    int t = std::stoi(s.substr(0, slash), &used);
    if (used != slash) throw InputError("bad weight '" + s + "'");
    return t;
  } catch (const std::logic_error&) {
    throw InputError("bad weight '" + s + "'");
  }
}

}  // namespace

std::size_t component_count(FieldKind kind, int p, int q, std::size_t form_degree) {
  const auto n = static_cast<std::size_t>(p + q);
  switch (kind) {
    case FieldKind::scalar: return 1;
    case FieldKind::vector:
    case FieldKind::covector: return n;
    case FieldKind::spinor: return spinor_dim(p, q);
    case FieldKind::covector_spinor: return n * spinor_dim(p, q);
    case FieldKind::bilinear: return n * n;
    case FieldKind::form: return binomial(n, form_degree);
  }
  return 0;
}

json field_to_json(int p, int q, const PolyField& f) {
  json comps = json::array();
  for (const auto& c : f.comps) {
    json terms = json::object();
    for (const auto& [m, s] : c.terms()) terms[flatmodel::monomial_text(m, f.nvars)] = s.to_string();
    comps.push_back(terms);
  }
  json out = {{"kind", flatmodel::to_string(f.kind)},
              {"signature", {p, q}},
              {"weight", f.weight.to_string()},
              {"components", comps}};
  if (f.kind == FieldKind::form) out["form_degree"] = f.form_degree;
  return out;
}

FieldDocument field_from_json(const json& j) {
  if (!j.is_object()) throw InputError("field document must be a JSON object");
  for (const char* key : {"kind", "signature", "components"})
    if (!j.contains(key)) throw InputError(std::string("field document lacks \"") + key + "\"");
  FieldDocument doc;
  PolyField& f = doc.field;
  try {
    f.kind = flatmodel::parse_field_kind(j.at("kind").get<std::string>());
  } catch (const json::exception&) {
    throw InputError("\"kind\" must be a string");
  } catch (const exalg::ParseError& e) {
    throw InputError(e.what());
  }
  const auto& sig = j.at("signature");
  if (!sig.is_array() || sig.size() != 2 || !sig[0].is_number_integer() || !sig[1].is_number_integer())
    throw InputError("\"signature\" must be [p, q]");
  doc.p = sig[0].get<int>();
  doc.q = sig[1].get<int>();
  if (!clifford::is_supported(doc.p, doc.q))
    throw InputError("unsupported signature (" + std::to_string(doc.p) + "," + std::to_string(doc.q) + ")");
  f.nvars = static_cast<std::size_t>(doc.p + doc.q);
  if (j.contains("weight")) {
    if (!j["weight"].is_string()) throw InputError("\"weight\" must be a string such as \"1/2\"");
    f.weight.twice = parse_weight(j["weight"].get<std::string>());
  }
  if (f.kind == FieldKind::form) {
    if (!j.contains("form_degree") || !j["form_degree"].is_number_unsigned())
      throw InputError("form fields need a non-negative integer \"form_degree\"");
    f.form_degree = j["form_degree"].get<std::size_t>();
  }
  const auto& comps = j.at("components");
  if (!comps.is_array()) throw InputError("\"components\" must be an array");
  const auto expected = component_count(f.kind, doc.p, doc.q, f.form_degree);
  if (comps.size() != expected)
    throw InputError("expected " + std::to_string(expected) + " components for a " + flatmodel::to_string(f.kind) +
                     " field, got " + std::to_string(comps.size()));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (!comps[i].is_object()) throw InputError("component " + std::to_string(i) + " must be an object");
    Poly poly;
    for (const auto& [mono, coeff] : comps[i].items()) {
      if (!coeff.is_string()) throw InputError("coefficient of " + mono + " in component " + std::to_string(i) + " must be a string");
      try {
        poly.add_term(flatmodel::parse_monomial(mono, f.nvars), exalg::Scalar::parse(coeff.get<std::string>()));
      } catch (const exalg::ParseError& e) {
        throw InputError("component " + std::to_string(i) + ": " + e.what());
      }
    }
    f.comps.push_back(std::move(poly));
  }
  return doc;
}

FieldDocument read_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  try {
    return field_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace gentwistor::tools
