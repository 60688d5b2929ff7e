#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gentwistor/tools/golden.hpp"
#include "gentwistor/tools/report.hpp"

namespace gentwistor::tools {

enum class Suite { clifford, pairings, stabilizers, kostant, flat, distribution, decomp };
std::string to_string(Suite s);
Suite parse_suite(const std::string& s);  // throws InputError
std::vector<Suite> all_suites();

// Signature families: (2,3) covers (2,3) and its doubling (3,4); (3,3) covers (3,3) and (4,4).
using Family = std::pair<int, int>;
std::vector<Family> all_families();
Family parse_family(const std::string& s);  // "2,3", "3,4" -> (2,3); "3,3", "4,4" -> (3,3)
std::string label(Family f);
std::string label(int p, int q);

struct SuiteOptions {
  std::vector<Family> families = all_families();
  GoldenStore* golden = nullptr;  // golden comparisons are skipped without a store
  bool determinism_rerun = true;   // verify_all only
};

Report run_suite(Suite s, const SuiteOptions& opt);

// Every suite plus one summary check per acceptance criterion.
Report verify_all(const SuiteOptions& opt);

inline constexpr int kCriteria = 11;
// "acceptance.criterion-04"
std::string criterion_check_name(int c);

namespace suites {
Report clifford(const SuiteOptions& opt);
Report pairings(const SuiteOptions& opt);
Report stabilizers(const SuiteOptions& opt);
Report kostant(const SuiteOptions& opt);
Report flat(const SuiteOptions& opt);
Report distribution(const SuiteOptions& opt);
Report decomp(const SuiteOptions& opt);
}  // namespace suites

}  // namespace gentwistor::tools
