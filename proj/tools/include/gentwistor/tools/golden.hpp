#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "gentwistor/tools/report.hpp"

namespace gentwistor::tools {

// Convention-dependent constants, frozen once and compared afterwards.
// File layout: {"format": 1, "values": {"<key>": "<scalar>", ...}}
class GoldenStore {
 public:
  enum class Mode { compare, freeze };

  GoldenStore() = default;
  GoldenStore(std::filesystem::path path, Mode mode);

  Mode mode() const { return mode_; }
  const std::filesystem::path& path() const { return path_; }
  std::size_t size() const { return values_.size(); }

  // pass/fail against the stored value; in freeze mode the value is recorded and the check is informational
  Check check(const std::string& name, const std::string& key, const exalg::Scalar& computed);
  std::optional<exalg::Scalar> lookup(const std::string& key) const;

  void save() const;

 private:
  std::filesystem::path path_;
  Mode mode_ = Mode::compare;
  std::map<std::string, std::string> values_;
};

}  // namespace gentwistor::tools
