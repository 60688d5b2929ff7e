#include "gentwistor/tools/suites.hpp"

#include <cstdio>
#include <map>
#include <optional>

#include "gentwistor/tools/field_io.hpp"

namespace gentwistor::tools {

namespace {

const std::map<Suite, std::string>& suite_names() {
  static const std::map<Suite, std::string> names{
      {Suite::clifford, "clifford"},   {Suite::pairings, "pairings"},         {Suite::stabilizers, "stabilizers"},
      {Suite::kostant, "kostant"},     {Suite::flat, "flat"},                 {Suite::distribution, "distribution"},
      {Suite::decomp, "decomp"}};
  return names;
}

Report run_all_suites(const SuiteOptions& opt) {
  Report r("verify all");
  for (auto s : all_suites()) r.merge(run_suite(s, opt));
  return r;
}

}  // namespace

std::string to_string(Suite s) { return suite_names().at(s); }

Suite parse_suite(const std::string& s) {
  for (const auto& [k, v] : suite_names())
    if (v == s) return k;
  throw InputError("unknown suite '" + s + "'");
}

std::vector<Suite> all_suites() {
  return {Suite::clifford, Suite::pairings,     Suite::stabilizers, Suite::kostant,
          Suite::flat,     Suite::distribution, Suite::decomp};
}

std::vector<Family> all_families() { return {{2, 3}, {3, 3}}; }

Family parse_family(const std::string& s) {
  int p = 0, q = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%d,%d%c", &p, &q, &tail) != 2) throw InputError("bad signature '" + s + "', expected p,q");
  if ((p == 2 && q == 3) || (p == 3 && q == 4)) return {2, 3};
  if ((p == 3 && q == 3) || (p == 4 && q == 4)) return {3, 3};
  throw InputError("unsupported signature " + s + "; use 2,3, 3,4, 3,3 or 4,4");
}

std::string label(Family f) { return label(f.first, f.second); }
std::string label(int p, int q) { return std::to_string(p) + "," + std::to_string(q); }

Report run_suite(Suite s, const SuiteOptions& opt) {
  Report r = [&] {
    switch (s) {
      case Suite::clifford: return suites::clifford(opt);
      case Suite::pairings: return suites::pairings(opt);
      case Suite::stabilizers: return suites::stabilizers(opt);
      case Suite::kostant: return suites::kostant(opt);
      case Suite::flat: return suites::flat(opt);
      case Suite::distribution: return suites::distribution(opt);
      case Suite::decomp: return suites::decomp(opt);
    }
    throw InputError("unknown suite");
  }();
  json fams = json::array();
  for (const auto& f : opt.families) fams.push_back(label(f));
  r.config()["families"] = fams;
  return r;
}

std::string criterion_check_name(int c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "acceptance.criterion-%02d", c);
  return buf;
}

Report verify_all(const SuiteOptions& opt) {
  Report r = run_all_suites(opt);
  // a second run must serialize to the same bytes
  std::optional<std::string> first;
  if (opt.determinism_rerun) first = r.serialize("json");
  json fams = json::array();
  for (const auto& f : opt.families) fams.push_back(label(f));
  r.config()["families"] = fams;

  std::map<int, std::vector<std::string>> failing;
  std::map<int, std::size_t> count;
  for (const auto& c : r.checks()) {
    if (!c.criterion) continue;
    ++count[c.criterion];
    if (c.status == Status::fail) failing[c.criterion].push_back(c.name);
  }
  for (int k = 1; k < kCriteria; ++k) {
    const bool holds = count[k] > 0 && failing[k].empty();
    std::string details = std::to_string(count[k]) + " checks";
    if (!failing[k].empty()) details += ", " + std::to_string(failing[k].size()) + " failing";
    auto& c = r.add(verdict(criterion_check_name(k), holds, details));
    c.value("checks", count[k]);
    if (!failing[k].empty()) c.value("failing", failing[k]);
  }

  if (first) {
    const auto second = run_all_suites(opt).serialize("json");
    r.add(verdict(criterion_check_name(kCriteria), *first == second, "two in-process runs of every suite"))
        .value("bytes", second.size());
  } else {
    r.add(info(criterion_check_name(kCriteria), "rerun disabled"));
  }
  return r;
}

}  // namespace gentwistor::tools
