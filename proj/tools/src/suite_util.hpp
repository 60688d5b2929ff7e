#pragma once

#include <string>
#include <vector>

#include "gentwistor/tools/suites.hpp"

namespace gentwistor::tools::detail {

inline Check golden(const SuiteOptions& opt, const std::string& name, const std::string& key, const exalg::Scalar& v) {
  if (opt.golden) return opt.golden->check(name, key, v);
  Check c = info(name, "no golden store");
  c.scalar("computed", v);
  return c;
}

inline json sizes(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

inline bool has_family(const SuiteOptions& opt, int p, int q) {
  for (const auto& f : opt.families)
    if (f.first == p && f.second == q) return true;
  return false;
}

}  // namespace gentwistor::tools::detail
