#include "gentwistor/tools/golden.hpp"

#include <fstream>

#include "gentwistor/tools/field_io.hpp"

namespace gentwistor::tools {

GoldenStore::GoldenStore(std::filesystem::path path, Mode mode) : path_(std::move(path)), mode_(mode) {
  if (mode_ == Mode::freeze || !std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(path_.string() + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
    throw InputError(path_.string() + ": golden file needs a \"values\" object");
  for (const auto& [k, v] : j["values"].items()) {
    if (!v.is_string()) throw InputError(path_.string() + ": golden value " + k + " must be a string");
    values_[k] = v.get<std::string>();
  }
}

std::optional<exalg::Scalar> GoldenStore::lookup(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return exalg::Scalar::parse(it->second);
}

Check GoldenStore::check(const std::string& name, const std::string& key, const exalg::Scalar& computed) {
  if (mode_ == Mode::freeze) {
    values_[key] = computed.to_string();
    Check c = info(name, "frozen as " + key);
    c.scalar("computed", computed);
    return c;
  }
  auto stored = lookup(key);
  if (!stored) {
    Check c = verdict(name, false, "no golden value " + key + "; run with --freeze");
    c.scalar("computed", computed);
    return c;
  }
  Check c = verdict(name, *stored == computed, "golden " + key);
  c.scalar("computed", computed);
  c.scalar("golden", *stored, Provenance::golden);
  return c;
}

void GoldenStore::save() const {
  json values = json::object();
  for (const auto& [k, v] : values_) values[k] = v;
  std::ofstream out(path_);
  if (!out) throw std::runtime_error("cannot write " + path_.string());
  out << json{{"format", 1}, {"values", values}}.dump(2) << '\n';
}

}  // namespace gentwistor::tools
