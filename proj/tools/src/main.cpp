#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gentwistor/tools/commands.hpp"
#include "gentwistor/tools/suites.hpp"

#ifndef GENTWISTOR_GOLDEN_DEFAULT
#define GENTWISTOR_GOLDEN_DEFAULT "golden.json"
#endif

namespace fs = std::filesystem;
using namespace gentwistor::tools;

namespace {

constexpr int kExitInput = 2;

struct Output {
  std::string out;
  std::string format = "json";
};

// --out wins; otherwise $GENTWISTOR_REPORT_DIR/<name>.<format>; otherwise stdout
int emit(const Report& r, const Output& o, const std::string& name) {
  const auto text = r.serialize(o.format);
  fs::path target = o.out;
  if (target.empty()) {
    if (const char* dir = std::getenv("GENTWISTOR_REPORT_DIR"); dir && *dir) {
      fs::create_directories(dir);
      target = fs::path(dir) / (name + "." + o.format);
    }
  }
  if (target.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(target, std::ios::binary);
    if (!f) throw InputError("cannot write " + target.string());
    f << text;
    const auto j = r.to_json();
    std::cerr << name << ": " << j["summary"]["checks"] << " checks, " << j["summary"]["failures"]
              << " failed -> " << target.string() << '\n';
  }
  return r.exit_code();
}

Report load_report(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path.string());
  try {
    return Report::from_json(json::parse(f));
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for spinor stabilizers, twistor spinors and generic distributions", "gentwistor"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Output o;
  std::string golden_path = GENTWISTOR_GOLDEN_DEFAULT;
  bool freeze = false;
  app.add_option("--out", o.out, "Write the report to this file");
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--golden", golden_path, "Golden value file")->capture_default_str();
  app.add_flag("--freeze", freeze, "Record golden values instead of comparing them");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  std::string target;
  std::vector<std::string> signatures;
  verify->add_option("suite", target, "all, clifford, pairings, stabilizers, kostant, flat, distribution or decomp")
      ->required();
  verify->add_option("--signature", signatures, "Restrict to a signature family (2,3 or 3,3; 3,4 and 4,4 select the same)")
      ->delimiter(';');

  auto* stab = app.add_subcommand("stabilizer", "Stabilizer algebra of a constant spinor");
  std::string spinor_file, stab_signature;
  stab->add_option("--signature", stab_signature, "Must match the file");
  stab->add_option("--spinor", spinor_file, "Spinor field file")->required();

  auto* solve = app.add_subcommand("solve", "Polynomial kernel of a flat-model operator");
  std::string equation, solve_signature;
  int max_degree = 3, chirality = 0;
  solve->add_option("--equation", equation, "twistor, aes or ckf")->required();
  solve->add_option("--signature", solve_signature, "2,3 or 3,3")->required();
  solve->add_option("--max-degree", max_degree)->capture_default_str();
  solve->add_option("--chirality", chirality, "Half-spin space for twistor spinors in 3,3")->capture_default_str();

  auto* dec = app.add_subcommand("decompose-ckf", "Split a conformal Killing field along a generic twistor spinor");
  std::string ckf_file, dec_spinor_file;
  dec->add_option("--ckf", ckf_file, "Vector field file")->required();
  dec->add_option("--spinor", dec_spinor_file, "Spinor field file")->required();

  auto* rep = app.add_subcommand("report", "Render a saved report");
  std::string input;
  rep->add_option("--input", input, "Saved JSON report (default $GENTWISTOR_REPORT_DIR/verify-all.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (verify->parsed()) {
      SuiteOptions opt;
      if (!signatures.empty()) {
        opt.families.clear();
        for (const auto& s : signatures) {
          auto f = parse_family(s);
          if (std::find(opt.families.begin(), opt.families.end(), f) == opt.families.end()) opt.families.push_back(f);
        }
      }
      std::optional<GoldenStore> store;
      try {
        store.emplace(golden_path, freeze ? GoldenStore::Mode::freeze : GoldenStore::Mode::compare);
      } catch (const std::exception& e) {
        throw InputError(golden_path + ": " + e.what());
      }
      opt.golden = &*store;
      Report r = target == "all" ? (opt.determinism_rerun = !freeze, verify_all(opt)) : run_suite(parse_suite(target), opt);
      if (freeze) {
        store->save();
        std::cerr << "froze " << store->size() << " golden values into " << golden_path << '\n';
      }
      return emit(r, o, "verify-" + target);
    }
    if (stab->parsed()) {
      auto doc = read_field(spinor_file);
      if (!stab_signature.empty()) {
        int p = 0, q = 0;
        char tail = 0;
        if (std::sscanf(stab_signature.c_str(), "%d,%d%c", &p, &q, &tail) != 2 || p != doc.p || q != doc.q)
          throw InputError("--signature " + stab_signature + " does not match the spinor file");
      }
      return emit(stabilizer_command(doc), o, "stabilizer");
    }
    if (solve->parsed()) {
      int p = 0, q = 0;
      char tail = 0;
      if (std::sscanf(solve_signature.c_str(), "%d,%d%c", &p, &q, &tail) != 2)
        throw InputError("bad signature '" + solve_signature + "'");
      return emit(solve_command(p, q, equation, max_degree, chirality), o, "solve");
    }
    if (dec->parsed()) {
      return emit(decompose_ckf_command(read_field(ckf_file), read_field(dec_spinor_file)), o, "decompose-ckf");
    }
    if (rep->parsed()) {
      fs::path path = input;
      if (path.empty()) {
        const char* dir = std::getenv("GENTWISTOR_REPORT_DIR");
        if (!dir || !*dir) throw InputError("report: give --input or set GENTWISTOR_REPORT_DIR");
        path = fs::path(dir) / "verify-all.json";
      }
      Report r = load_report(path);
      std::cout << r.serialize(o.format);
      return r.exit_code();
    }
  } catch (const InputError& e) {
    std::cerr << "gentwistor: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
