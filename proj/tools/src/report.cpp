#include "gentwistor/tools/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gentwistor::tools {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::informational: return "informational";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::computed: return "computed";
    case Provenance::golden: return "golden";
    case Provenance::reference: return "reference";
  }
  return "?";
}

Check& Check::value(std::string n, json v, Provenance p) {
  values.push_back({std::move(n), std::move(v), p});
  return *this;
}

Check& Check::scalar(std::string n, const exalg::Scalar& s, Provenance p) { return value(std::move(n), s.to_string(), p); }

Check verdict(std::string name, bool holds, std::string details) {
  return Check{std::move(name), holds ? Status::pass : Status::fail, std::move(details), {}, 0};
}

Check info(std::string name, std::string details) {
  return Check{std::move(name), Status::informational, std::move(details), {}, 0};
}

Check& Report::add(Check c) {
  checks_.push_back(std::move(c));
  return checks_.back();
}

void Report::merge(const Report& other) {
  for (const auto& c : other.checks_) checks_.push_back(c);
  for (const auto& [k, v] : other.config_.items()) config_[k] = v;
}

bool Report::failed() const {
  return std::any_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.status == Status::fail; });
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

json Report::to_json() const {
  std::vector<const Check*> sorted;
  for (const auto& c : checks_) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Check* a, const Check* b) { return a->name < b->name; });
  json checks = json::array();
  std::size_t failures = 0;
  for (const auto* c : sorted) {
    json values = json::object();
    for (const auto& v : c->values) values[v.name] = {{"value", v.value}, {"provenance", to_string(v.provenance)}};
    json entry = {{"name", c->name}, {"status", to_string(c->status)}, {"details", c->details}, {"values", values}};
    if (c->criterion != 0) entry["criterion"] = c->criterion;
    checks.push_back(std::move(entry));
    if (c->status == Status::fail) ++failures;
  }
  return {{"tool", "gentwistor"},
          {"version", kToolVersion},
          {"command", command_},
          {"configuration", config_},
          {"checks", checks},
          {"summary", {{"checks", checks_.size()}, {"failures", failures}}}};
}

std::string Report::to_text() const {
  auto j = to_json();
  std::ostringstream os;
  os << "gentwistor " << kToolVersion << "  " << command_ << '\n';
  for (const auto& c : j["checks"]) {
    std::string status = c["status"];
    std::string tag = status == "pass" ? "PASS" : status == "fail" ? "FAIL" : "INFO";
    os << tag << "  " << c["name"].get<std::string>();
    if (!c["details"].get<std::string>().empty()) os << "  (" << c["details"].get<std::string>() << ')';
    os << '\n';
    for (const auto& [name, v] : c["values"].items()) {
      os << "      " << name << " = ";
      if (v["value"].is_string()) os << v["value"].get<std::string>(); else os << v["value"].dump();
      if (v["provenance"] != "computed") os << "  [" << v["provenance"].get<std::string>() << ']';
      os << '\n';
    }
  }
  os << j["summary"]["checks"] << " checks, " << j["summary"]["failures"] << " failed\n";
  return os.str();
}

std::string Report::serialize(const std::string& format) const {
  if (format == "json") return to_json().dump(2) + "\n";
  if (format == "text") return to_text();
  throw std::invalid_argument("unknown report format '" + format + "'");
}

Report Report::from_json(const json& j) {
  try {
    Report r(j.at("command").get<std::string>());
    r.config_ = j.at("configuration");
    for (const auto& c : j.at("checks")) {
      Check k;
      k.name = c.at("name").get<std::string>();
      const std::string st = c.at("status").get<std::string>();
      if (st == "pass") k.status = Status::pass;
      else if (st == "fail") k.status = Status::fail;
      else if (st == "informational") k.status = Status::informational;
      else throw std::invalid_argument("unknown status '" + st + "'");
      k.details = c.at("details").get<std::string>();
      for (const auto& [name, v] : c.at("values").items()) {
        const std::string prov = v.at("provenance").get<std::string>();
        Provenance p = prov == "golden" ? Provenance::golden : prov == "reference" ? Provenance::reference : Provenance::computed;
        k.value(name, v.at("value"), p);
      }
      k.criterion = c.value("criterion", 0);
      r.checks_.push_back(std::move(k));
    }
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace gentwistor::tools
