// One line per acceptance criterion, from a full `verify all` run against the checked-in golden file.
//   acceptance                 all criteria, exit 1 if any fails
//   acceptance --criterion N   only criterion N

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "gentwistor/tools/suites.hpp"

using namespace gentwistor::tools;

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  if (only < 0 || only > kCriteria) {
    std::cerr << "criterion must be 1.." << kCriteria << '\n';
    return 2;
  }

  GoldenStore golden(GENTWISTOR_GOLDEN, GoldenStore::Mode::compare);
  SuiteOptions opt;
  opt.golden = &golden;
  opt.determinism_rerun = only == 0 || only == kCriteria;
  Report r = verify_all(opt);

  int failures = 0;
  for (int c = 1; c <= kCriteria; ++c) {
    if (only && c != only) continue;
    const Check* check = r.find(criterion_check_name(c));
    const bool pass = check && check->status == Status::pass;
    if (!pass) ++failures;
    char head[32];
    std::snprintf(head, sizeof head, "criterion %2d: ", c);
    std::cout << head << (pass ? "PASS" : "FAIL");
    if (check) {
      std::cout << "  " << check->details;
      for (const auto& v : check->values)
        if (v.name == "failing")
          for (const auto& name : v.value) std::cout << "\n    failing: " << name.get<std::string>();
    }
    std::cout << '\n';
  }
  return failures ? 1 : 0;
}
