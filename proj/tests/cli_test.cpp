#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gentwistor/tools/commands.hpp"
#include "gentwistor/tools/field_io.hpp"
#include "gentwistor/tools/golden.hpp"
#include "gentwistor/tools/report.hpp"
#include "gentwistor/tools/suites.hpp"

using namespace gentwistor;
using namespace gentwistor::tools;
using exalg::Scalar;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "gentwistor_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const std::string cmd = std::string(GENTWISTOR_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

const std::string kExamples = GENTWISTOR_EXAMPLES;

}  // namespace

TEST(Report, SortedDeterministicJson) {
  Report a("x"), b("x");
  a.add(verdict("b.check", true));
  a.add(info("a.check", "note")).scalar("v", Scalar::sqrt2());
  b.add(info("a.check", "note")).scalar("v", Scalar::sqrt2());
  b.add(verdict("b.check", true));
  EXPECT_EQ(a.serialize("json"), b.serialize("json"));
  auto j = a.to_json();
  EXPECT_EQ(j["checks"][0]["name"], "a.check");
  EXPECT_EQ(j["checks"][0]["values"]["v"]["value"], "0+1*r2");
  EXPECT_FALSE(a.failed());
  a.add(verdict("c", false)).feeds(4);
  EXPECT_EQ(a.exit_code(), 1);
  EXPECT_EQ(a.to_json()["checks"][2]["criterion"], 4);
  EXPECT_THROW(a.serialize("xml"), std::invalid_argument);
}

TEST(Report, JsonRoundTrip) {
  Report a("verify all");
  a.config()["families"] = {"2,3"};
  a.add(verdict("x", false, "d")).value("n", 3).scalar("s", Scalar::frac(1, 2), Provenance::golden).feeds(9);
  a.add(info("y")).value("ref", "2/5", Provenance::reference);
  auto b = Report::from_json(a.to_json());
  EXPECT_EQ(a.serialize("json"), b.serialize("json"));
  EXPECT_EQ(a.serialize("text"), b.serialize("text"));
  EXPECT_THROW(Report::from_json(json{{"command", "x"}}), std::invalid_argument);
}

TEST(FieldIo, RoundTrip) {
  flatmodel::FlatContext ctx(3, 3);
  auto chi = flatmodel::standard_generic_twistor(ctx);
  auto doc = field_from_json(field_to_json(3, 3, chi));
  EXPECT_EQ(doc.p, 3);
  EXPECT_EQ(doc.field, chi);
  EXPECT_EQ(component_count(flatmodel::FieldKind::spinor, 2, 3), 4u);
  EXPECT_EQ(component_count(flatmodel::FieldKind::form, 3, 3, 3), 20u);
}

TEST(FieldIo, Errors) {
  auto good = field_to_json(2, 3, flatmodel::standard_generic_twistor(flatmodel::FlatContext(2, 3)));
  auto bad = good;
  bad["kind"] = "tensor";
  EXPECT_THROW(field_from_json(bad), InputError);
  bad = good;
  bad["signature"] = {5, 5};
  EXPECT_THROW(field_from_json(bad), InputError);
  bad = good;
  bad["components"].erase(0);
  EXPECT_THROW(field_from_json(bad), InputError);
  bad = good;
  bad["components"][0] = {{"x0", "1/0"}};
  EXPECT_THROW(field_from_json(bad), InputError);
  bad = good;
  bad["components"][0] = {{"y7", "1"}};
  EXPECT_THROW(field_from_json(bad), InputError);
  auto path = scratch("broken.json");
  write(path, "{\"kind\": ");
  EXPECT_THROW(read_field(path), InputError);
  EXPECT_THROW(read_field(scratch("missing.json")), InputError);
}

TEST(Golden, FreezeThenCompare) {
  auto path = scratch("golden.json");
  fs::remove(path);
  {
    GoldenStore g(path, GoldenStore::Mode::freeze);
    EXPECT_EQ(g.check("c", "k", Scalar(6)).status, Status::informational);
    g.save();
  }
  GoldenStore g(path, GoldenStore::Mode::compare);
  EXPECT_EQ(g.lookup("k"), Scalar(6));
  EXPECT_EQ(g.check("c", "k", Scalar(6)).status, Status::pass);
  EXPECT_EQ(g.check("c", "k", Scalar(5)).status, Status::fail);
  EXPECT_EQ(g.check("c", "other", Scalar(5)).status, Status::fail);
}

TEST(Suites, Parsing) {
  EXPECT_EQ(parse_family("3,4"), (Family{2, 3}));
  EXPECT_EQ(parse_family("4,4"), (Family{3, 3}));
  EXPECT_THROW(parse_family("5,5"), InputError);
  EXPECT_THROW(parse_family("3;3"), InputError);
  EXPECT_EQ(parse_suite("decomp"), Suite::decomp);
  EXPECT_THROW(parse_suite("nope"), InputError);
  EXPECT_EQ(criterion_check_name(4), "acceptance.criterion-04");
}

TEST(Commands, Solve) {
  auto r = solve_command(3, 3, "aes", 3, 0);
  EXPECT_EQ(r.find("solve.dimension")->values[0].value, 8);
  EXPECT_EQ(r.find("solve.basis-solves")->status, Status::pass);
  EXPECT_THROW(solve_command(2, 3, "twistor", 3, 1), InputError);
  EXPECT_THROW(solve_command(2, 3, "heat", 3, 0), InputError);
}

TEST(Commands, StabilizerOfX) {
  auto r = stabilizer_command(read_field(kExamples + "/spinor_X_34.json"));
  EXPECT_FALSE(r.failed());
  auto dim = r.find("stabilizer.dimension");
  ASSERT_TRUE(dim);
  EXPECT_EQ(dim->values[0].value, 14);
}

TEST(Commands, DecomposeRejectsWrongKinds) {
  auto chi = read_field(kExamples + "/generic_twistor_23.json");
  EXPECT_THROW(decompose_ckf_command(chi, chi), InputError);
  auto r = decompose_ckf_command(read_field(kExamples + "/ckf_sum_23.json"), chi);
  EXPECT_FALSE(r.failed());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("solve --equation aes --signature 3,3 --max-degree 3"), 0);
  EXPECT_EQ(run("solve --equation heat --signature 3,3"), 2);
  EXPECT_EQ(run("stabilizer --spinor " + scratch("missing.json").string()), 2);
  write(scratch("broken.json"), "{\"kind\": ");
  EXPECT_EQ(run("stabilizer --spinor " + scratch("broken.json").string()), 2);
  EXPECT_EQ(run("verify nosuch"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("verify clifford"), 0);
  // the stabilizer suite carries the red membership checks
  EXPECT_EQ(run("verify stabilizers --signature 3,4"), 1);
  EXPECT_EQ(run("decompose-ckf --ckf " + kExamples + "/ckf_sum_33.json --spinor " + kExamples + "/generic_twistor_33.json"), 0);
}

TEST(Cli, ReportDirectoryAndRender) {
  auto dir = scratch("reports");
  fs::remove_all(dir);
  const std::string env = "GENTWISTOR_REPORT_DIR=" + dir.string() + " ";
  ASSERT_EQ(std::system((env + GENTWISTOR_EXE + " verify kostant >/dev/null 2>&1").c_str()) >> 8, 0);
  ASSERT_TRUE(fs::exists(dir / "verify-kostant.json"));
  const auto out = scratch("rendered.txt");
  const std::string cmd = std::string(GENTWISTOR_EXE) + " --format text report --input " +
                          (dir / "verify-kostant.json").string() + " > " + out.string();
  ASSERT_EQ(std::system(cmd.c_str()) >> 8, 0);
  EXPECT_NE(read(out).find("kostant.so(3,4)-in-so(4,4).harmonic-dimension"), std::string::npos);
}

TEST(Cli, SameCommandSameBytes) {
  auto a = scratch("a.json"), b = scratch("b.json");
  ASSERT_EQ(run("--out " + a.string() + " solve --equation ckf --signature 2,3"), 0);
  ASSERT_EQ(run("--out " + b.string() + " solve --equation ckf --signature 2,3"), 0);
  EXPECT_EQ(read(a), read(b));
}
