#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qpencil/cli.hpp"
#include "qpencil/error.hpp"
#include "qpencil/io.hpp"
#include "test_util.hpp"

using namespace qpencil;
using namespace qpencil::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qpencil_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string without_timings(std::string report) {
  Json j = Json::parse(report);
  j.erase("timings");
  return j.dump();
}

Instance planted(std::size_t n, std::uint64_t seed) {
  PlantedOptions o;
  o.n = n;
  o.seed = seed;
  const auto p = generate_planted_instance(o);
  Instance inst;
  inst.F = p.F;
  inst.G = p.G;
  inst.plane = p.plane;
  inst.point = p.point;
  return inst;
}

fs::path save(const Instance& inst, const std::string& name) {
  const fs::path p = scratch(name);
  write(p, canonical_dump(instance_to_json(inst)));
  return p;
}

}  // namespace

TEST_CASE("instance files round trip") {
  const Instance a = planted(5, 2);
  const Instance b = parse_instance(canonical_dump(instance_to_json(a)));
  CHECK(b.F == a.F);
  CHECK(b.G == a.G);
  CHECK(b.plane.basis() == a.plane.basis());
  CHECK(b.point == a.point);

  // Integer and "p/q" entries are both accepted.
  const std::string text = R"({"n": 4,
    "F": [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, -1, 0, 0], [0, 0, 0, "1/2", 0], [0, 0, 0, 0, 1]],
    "G": [[0, 0, 0, "1/2", 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], ["1/2", 0, 0, 0, 0], [0, 0, 0, 0, 0]],
    "plane": [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]],
    "point": [1, 0, 1, 0, 0], "route": "p4-base-case", "seed": 4})";
  const Instance c = parse_instance(text);
  CHECK(c.n() == 4);
  CHECK(c.F(3, 3) == Rational(1, 2));
  CHECK(c.route == Route::P4BaseCase);
  CHECK(c.seed == 4u);
}

TEST_CASE("instance validation messages") {
  auto message = [](const std::string& text) {
    try {
      parse_instance(text, "in.json");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidInput);
      return std::string(e.what());
    }
    FAIL("expected InvalidInput");
    return std::string();
  };
  const std::string rows = R"("F": [[1, 0, 0, 0, 0],
      [0, 1, 0, 0, 0],
      [0, 0, -1, 0, 0],
      [0, 0, 0, 1, 0],
      [0, 0, 0, 0, 1]],
    "G": [[0, 0, 0, 1, 0], [0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, 0, 0]],
    "plane": [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]])";
  std::string asym = "{\"n\": 4,\n    " + rows + "}";
  asym.replace(asym.find("[0, 0, 0, 1, 0]"), 15, "[0, 0, 2, 1, 0]");
  const std::string m = message(asym);
  CHECK(m.find("in.json:5:") != std::string::npos);
  CHECK(m.find("F[3][2]") != std::string::npos);
  CHECK(m.find("not symmetric") != std::string::npos);

  CHECK(message("{\"n\": 4, " + rows + ", \"colour\": 1}").find("colour: unknown field") != std::string::npos);
  CHECK(message("{\"n\": 3, " + rows + "}").find("n: expected") != std::string::npos);
  CHECK(message("{\"n\": 5, " + rows + "}").find("F: expected 6 rows") != std::string::npos);
  CHECK(message("{" + rows + "}").find("n: missing required field") != std::string::npos);
  CHECK(message("{\"n\": 4, " + rows + ", \"point\": [1, 0, 0, 0, 0]}").find("does not satisfy") !=
        std::string::npos);
  CHECK(message("{\"n\": 4, " + rows + ", \"route\": \"fast\"}").find("unknown route") != std::string::npos);
  std::string fl = "{\"n\": 4, " + rows + "}";
  fl.replace(fl.find("[0, 1, 0, 0, 0],"), 15, "[0, 1.5, 0, 0, 0]");
  CHECK(message(fl).find("F[1][1]: floating-point") != std::string::npos);
  CHECK(message("{\"n\": 4,\n \"F\": [1,,2]}").find("in.json:2:") != std::string::npos);
}

TEST_CASE("find-point reports") {
  const fs::path in = save(planted(5, 4), "p5.json");
  const fs::path out = scratch("p5.report.json");
  const Run r = cli({"find-point", in.string(), "--out", out.string()});
  REQUIRE(r.code == kExitOk);
  std::ifstream f(out);
  const Json rep = Json::parse(f);
  CHECK(rep["command"] == "find-point");
  CHECK(rep["exit_code"] == 0);
  CHECK(rep["result"]["outcome"] == "point-found");
  CHECK(rep["result"]["trace"]["check_F"] == "0");
  CHECK(rep["result"]["trace"]["check_G"] == "0");
  std::vector<Integer> p;
  for (const auto& x : rep["result"]["point"]) p.push_back(Integer(x.get<std::string>()));
  const Instance inst = load_instance(in.string());
  CHECK(inst.F.evaluate(p) == 0);
  CHECK(inst.G.evaluate(p) == 0);

  CHECK(replay_report(rep).ok);
  CHECK(cli({"replay", out.string()}).code == kExitOk);

  // The trace survives a JSON round trip unchanged.
  const DescentTrace t = trace_from_json(rep["result"]["trace"]);
  CHECK(to_json(t) == rep["result"]["trace"]);

  Json tampered = rep;
  tampered["result"]["trace"]["steps"][0]["certificate"]["rank_F"] = 3;
  CHECK_FALSE(replay_report(tampered).ok);
  write(scratch("tampered.json"), tampered.dump());
  CHECK(cli({"replay", scratch("tampered.json").string()}).code == kExitMismatch);
}

TEST_CASE("exit codes") {
  // Definite member: F = I7.
  Instance def;
  def.F = QuadraticForm(identity_matrix(7));
  QMatrix g(7, 7);
  g(0, 3) = g(3, 0) = g(1, 4) = g(4, 1) = g(2, 5) = g(5, 2) = Rational(1, 2);
  g(6, 6) = 1;
  def.G = QuadraticForm(g);
  def.plane = LinearSubspace::coordinate_span(7, {0, 1, 2});
  const fs::path dp = save(def, "definite.json");
  const Run r = cli({"find-point", dp.string()});
  CHECK(r.code == kExitObstruction);
  const Json rep = Json::parse(r.out);
  CHECK(rep["result"]["local"]["obstruction"]["kind"] == "definite-real-member");
  CHECK(replay_report(rep).ok);
  CHECK(cli({"local-check", dp.string()}).code == kExitObstruction);

  const fs::path pp = save(planted(5, 1), "hb.json");
  CHECK(cli({"find-point", pp.string(), "--height-bound", "0"}).code == kExitExhausted);
  CHECK(cli({"local-check", pp.string()}).code == kExitOk);

  // The conic has a rational point, so a zero height bound still succeeds.
  PlantedOptions o;
  o.conic = diag({1, 1, -2});
  auto cp = generate_planted_instance(o);
  Instance ci;
  ci.F = cp.F;
  ci.G = cp.G;
  ci.plane = cp.plane;
  CHECK(cli({"find-point", save(ci, "conic.json").string(), "--height-bound", "0"}).code == kExitOk);

  def.F = QuadraticForm(identity_matrix(7));
  std::string text = canonical_dump(instance_to_json(def));
  text.replace(text.find("\"1/2\""), 5, "\"1/3\"");
  write(scratch("asym.json"), text);
  const Run a = cli({"analyze", scratch("asym.json").string()});
  CHECK(a.code == kExitInvalid);
  CHECK(a.err.find("not symmetric") != std::string::npos);
  CHECK(cli({"classify", scratch("missing-file.json").string()}).code == kExitInvalid);
  CHECK(cli({"find-point", pp.string(), "--no-such-flag"}).code == kExitInvalid);
  CHECK(cli({"find-point", pp.string(), "--threads", "0"}).code == kExitInvalid);
  CHECK(cli({}).code == kExitInvalid);
  CHECK(cli({"--help"}).code == kExitOk);

  // The plane is not on the conic configuration: invalid instance.
  Instance wrong = planted(5, 1);
  wrong.plane = LinearSubspace::coordinate_span(6, {3, 4, 5});
  CHECK(cli({"classify", save(wrong, "wrong.json").string()}).code == kExitInvalid);
}

TEST_CASE("reports are canonical") {
  const fs::path in = save(planted(6, 2), "p6.json");
  const Run a = cli({"find-point", in.string(), "--threads", "1"});
  const Run b = cli({"find-point", in.string(), "--threads", "8"});
  REQUIRE(a.code == kExitOk);
  CHECK(without_timings(a.out) == without_timings(b.out));
  for (const char* cmd : {"analyze", "classify", "local-check"}) {
    const Run x = cli({cmd, in.string()});
    const Run y = cli({cmd, in.string()});
    CHECK(x.code == kExitOk);
    CHECK(without_timings(x.out) == without_timings(y.out));
    CHECK(x.out.find('.') == std::string::npos);  // no floats anywhere
  }
  const Run g1 = cli({"gen", "--n", "6", "--seed", "11"});
  const Run g2 = cli({"gen", "--n", "6", "--seed", "11"});
  CHECK(g1.code == kExitOk);
  CHECK(g1.out == g2.out);
  CHECK(g1.out != cli({"gen", "--n", "6", "--seed", "12"}).out);
  const Run w = cli({"gen", "--kind", "weil", "--seed", "3"});
  CHECK(parse_instance(w.out).route == Route::S2ConjugateWeil);
  CHECK(cli({"gen", "--kind", "other"}).code == kExitInvalid);
}

TEST_CASE("classify and analyze content") {
  const fs::path in = save(planted(4, 3), "p4.json");
  const Json c = Json::parse(cli({"classify", in.string()}).out);
  CHECK(c["result"]["hypotheses"]["route"] == "p4-base-case");
  CHECK(c["result"]["hypotheses"].contains("rank_four_pair"));
  CHECK(c["result"]["conic"]["local"]["globally_solvable"] == false);
  const Json a = Json::parse(cli({"analyze", in.string()}).out);
  CHECK(a["result"]["multiplicity_audit"]["holds"] == true);
  CHECK(a["result"]["discriminant"]["identically_zero"] == false);
}

TEST_CASE("gen then find-point round trip") {
  int ok = 0;
  for (int seed = 1; seed <= 100; ++seed) {
    const fs::path p = scratch("rt.json");
    REQUIRE(cli({"gen", "--n", "5", "--seed", std::to_string(seed), "--out", p.string()}).code == kExitOk);
    const Run r = cli({"find-point", p.string()});
    CHECK(r.code != kExitObstruction);
    if (r.code == kExitOk) ++ok;
  }
  CHECK(ok >= 95);
}
