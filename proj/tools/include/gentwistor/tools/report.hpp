#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gentwistor/exalg/scalar.hpp"

namespace gentwistor::tools {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

enum class Status { pass, fail, informational };
std::string to_string(Status s);

// Where a reported value comes from: computed here, compared with the golden file, or the
// literature value printed next to a computed one.
enum class Provenance { computed, golden, reference };
std::string to_string(Provenance p);

struct Value {
  std::string name;
  json value;
  Provenance provenance = Provenance::computed;
};

struct Check {
  std::string name;
  Status status = Status::informational;
  std::string details;
  std::vector<Value> values;
  int criterion = 0;  // acceptance criterion this check feeds, 0 for none

  Check& value(std::string name, json v, Provenance p = Provenance::computed);
  Check& scalar(std::string name, const exalg::Scalar& s, Provenance p = Provenance::computed);
  Check& feeds(int c) {
    criterion = c;
    return *this;
  }
};

Check verdict(std::string name, bool holds, std::string details = {});
Check info(std::string name, std::string details = {});

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  json& config() { return config_; }
  const json& config() const { return config_; }
  const std::string& command() const { return command_; }
  const std::vector<Check>& checks() const { return checks_; }

  Check& add(Check c);
  void merge(const Report& other);
  bool failed() const;
  int exit_code() const { return failed() ? 1 : 0; }
  const Check* find(const std::string& name) const;

  // sorted keys, checks sorted by name
  json to_json() const;
  std::string to_text() const;
  std::string serialize(const std::string& format) const;
  // inverse of to_json; throws std::invalid_argument on a malformed document
  static Report from_json(const json& j);

 private:
  std::string command_;
  json config_ = json::object();
  std::vector<Check> checks_;
};

}  // namespace gentwistor::tools
