#include "corpus.hpp"

#include "clusterdt/cli/commands.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace clusterdt;
using namespace clusterdt::cli;

namespace {

const std::string kData = CLUSTERDT_DATA_DIR "/quivers/";
const std::string kGolden = CLUSTERDT_GOLDEN_DIR "/";

QuiverFile load(const std::string& name) { return read_quiver_file(kData + name + ".quiver"); }

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(CLUSTERDT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::path(testing::TempDir()) / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(QuiverFile, ParsesBothForms) {
  const auto a = parse_quiver("# D4\nname = d4\nn = 4\narrows = (0,1), (1,2), (1,3,1)\n");
  EXPECT_EQ(a.name, "d4");
  EXPECT_EQ(a.matrix(), corpus::d4());
  const auto b = parse_quiver("n=2; b = [[0, 2],\n [-2, 0]]");
  EXPECT_FALSE(b.name);
  EXPECT_EQ(b.matrix(), corpus::kronecker());
  EXPECT_EQ(parse_quiver("n = 4\narrows = (0,1),\n  (1,2), # comment\n  (1,3)\n").matrix(), corpus::d4());
  // Cycles are accepted here and rejected by the operations that need acyclicity.
  EXPECT_NO_THROW(parse_quiver("n = 3; arrows = (0,1),(1,2),(2,0)"));
}

TEST(QuiverFile, RoundTrip) {
  for (const auto& e : corpus::all()) {
    SCOPED_TRACE(e.name);
    const auto q = to_quiver_file(e.b, e.name);
    EXPECT_EQ(parse_quiver(serialize(q)), q);
    EXPECT_EQ(parse_quiver(serialize(q)).matrix(), e.b);
    QuiverFile m{std::nullopt, e.b.size(), std::nullopt, e.b.matrix()};
    EXPECT_EQ(parse_quiver(serialize(m)), m);
  }
  for (const auto& f : std::filesystem::directory_iterator(kData)) {
    const auto q = read_quiver_file(f.path().string());
    EXPECT_EQ(parse_quiver(serialize(q)), q) << f.path();
  }
}

TEST(QuiverFile, Errors) {
  const std::vector<std::pair<std::string, std::string>> bad = {
      {"n = 2\narrows = (0,1)\nfoo = 1", "line 3: unknown key 'foo'"},
      {"n = 2\nn = 2\narrows = (0,1)", "line 2: duplicate key 'n'"},
      {"arrows = (0,1)", "missing key 'n'"},
      {"n = 2", "exactly one of 'arrows' and 'b' is required"},
      {"n = 2; arrows = (0,1); b = [[0,1],[-1,0]]", "exactly one of 'arrows' and 'b' is required"},
      {"n = 0; arrows = (0,1)", "n must be positive"},
      {"n = 2; arrows = (0,2)", "arrow (0,2) out of range"},
      {"n = 2; arrows = (0,1), (0,1,2)", "arrow (0,1) listed twice; give its multiplicity instead"},
      {"n = 2\nb = [[0,1],[1,0]]", "line 2:"},
      {"n = 3; b = [[0,1],[-1,0]]", "b must be 3x3"},
      {"n = 2; arrows = (0,1", "unbalanced bracket"},
      {"n = 2\nhello", "line 2: expected 'key = value', got 'hello'"},
      {"n = two; arrows = (0,1)", "line 1:"},
      {"name = ; n = 2; arrows = (0,1)", "empty name"},
  };
  for (const auto& [text, what] : bad) {
    SCOPED_TRACE(text);
    try {
      parse_quiver(text);
      ADD_FAILURE() << "accepted";
    } catch (const ParseError& e) {
      EXPECT_NE(std::string(e.what()).find(what), std::string::npos) << e.what();
    }
  }
  EXPECT_THROW(read_quiver_file(kData + "missing.quiver"), ParseError);
}

TEST(Format, TruncationAndRounding) {
  const FormatStyle paper{4, true}, round{4, false};
  EXPECT_EQ(format_rational(Rational(2, 3), paper), "0.6666...");
  EXPECT_EQ(format_rational(Rational(2, 3), round), "0.6667");
  EXPECT_EQ(format_rational(Rational(-4, 5), paper), "-0.8");
  EXPECT_EQ(format_rational(Rational(-4, 5), round), "-0.8000");
  EXPECT_EQ(format_rational(Rational(0), paper), "0");
  EXPECT_EQ(format_rational(Rational(-1, 100000), round), "0.0000");
  EXPECT_EQ(format_rational(Rational(-1, 100000), paper), "-0.0000...");
  EXPECT_EQ(format_rational(Rational(99999, 100000), round), "1.0000");
  // sqrt(1/2)
  EXPECT_EQ(format_sqrt(false, Rational(50000000), paper), "0.7071...");
  EXPECT_EQ(format_unit(to_point({1, 1}), round), (std::vector<std::string>{"0.7071", "0.7071"}));
  EXPECT_EQ(format_unit(to_point({-4, 1, 2, 2}), paper), (std::vector<std::string>{"-0.8", "0.2", "0.4", "0.4"}));
  EXPECT_EQ(format_high(HighPrecision(2) / 3, {13, true}), "0.6666666666666...");
  EXPECT_EQ(format_high(HighPrecision(2) / 3, {13, false}), "0.6666666666667");
  EXPECT_EQ(format_high(HighPrecision(-0.25), {1, true}), "-0.2...");
  EXPECT_EQ(format_high(HighPrecision(-0.25), {2, true}), "-0.25");
  EXPECT_EQ(tuple({"a", "b"}), "(a, b)");
}

TEST(Format, UnitRowsHaveNormOne) {
  for (const auto& x : {to_point({3, -1, 7, 2}), to_point({1, 1, 1, 1}), to_point({-5, 0, 12})}) {
    double s = 0;
    for (const auto& c : format_unit(x, {13, false})) s += std::stod(c) * std::stod(c);
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(CmdCoxeter, KnownMatrices) {
  const auto d4 = cmd_coxeter(load("d4"), {}).report["coxeter"];
  EXPECT_EQ(d4["phi"], json::parse("[[0,1,0,0],[1,1,1,1],[-1,-1,-1,0],[-1,-1,0,-1]]"));
  const auto qp = cmd_coxeter(load("q_prime"), {}).report["coxeter"];
  EXPECT_EQ(qp["phi"], json::parse("[[0,1,0,0],[2,2,2,1],[1,1,0,1],[-2,-2,-1,-1]]"));
  EXPECT_EQ(qp["spectrum"]["char_poly"], "x^4 - x^3 - 3x^2 - x + 1");
  EXPECT_EQ(qp["spectrum"]["rho"], "2.3692054070925");
  EXPECT_EQ(qp["palindromic"], true);
  EXPECT_THROW(cmd_coxeter(parse_quiver("n = 3; arrows = (0,1),(1,2),(2,0)"), {}), CyclicQuiver);
}

TEST(CmdSigns, D4AndQPrimeRows) {
  CliOptions o;
  o.csv = true;
  const auto d4 = csv_lines(cmd_signs(load("d4"), o).text);
  const auto qp = csv_lines(cmd_signs(load("q_prime"), o).text);
  ASSERT_EQ(d4.size(), 12u);
  ASSERT_EQ(qp.size(), 12u);
  EXPECT_EQ(d4[0], "n,s0,s1,s2,s3");
  for (int n = 0; n <= 10; ++n) {
    const std::string plus = std::to_string(n) + ",+,+,+,+", minus = std::to_string(n) + ",-,-,-,-";
    EXPECT_EQ(d4[n + 1], n % 4 == 0 ? plus : minus);
    EXPECT_EQ(qp[n + 1], n == 0 ? plus : minus);
  }
  const auto rows = cmd_signs(load("d4"), {}).report["signs"]["rows"];
  EXPECT_EQ(rows[3]["sign"], "(-,-,-,-)");
  EXPECT_EQ(rows[3]["point"], json::parse(R"(["-4","1","2","2"])"));
}

TEST(CmdSigns, StartInNegativeConeAndErrors) {
  CliOptions o;
  o.start = "-1,-2/3,-5";
  o.iters = 0;
  const auto b = to_quiver_file(corpus::q_prime());
  EXPECT_THROW(cmd_signs(b, o), std::invalid_argument);  // wrong length
  o.start = "-1,-2/3,-5,-1";
  EXPECT_EQ(cmd_signs(b, o).report["signs"]["rows"][0]["sign"], "(-,-,-,-)");
  o.start = "1,0,1,1";
  EXPECT_THROW(cmd_signs(b, o), std::invalid_argument);
}

TEST(CmdOrbit, TruncatedUnitRows) {
  CliOptions o;
  o.iters = 6;
  o.digits = 4;
  o.paper_style = true;
  o.csv = true;
  const std::vector<std::string> d4 = {
      "n,u0,u1,u2,u3",
      "0,0.5,0.5,0.5,0.5",
      "1,-0.5,-0.5,-0.5,-0.5",
      "2,-0.1690...,-0.6761...,0.5070...,0.5070...",
      "3,-0.8,0.2,0.4,0.4",
      "4,0.5,0.5,0.5,0.5",
      "5,-0.5,-0.5,-0.5,-0.5",
      "6,-0.1690...,-0.6761...,0.5070...,0.5070...",
  };
  const std::vector<std::string> qp = {
      "n,u0,u1,u2,u3",
      "0,0.5,0.5,0.5,0.5",
      "1,-0.5,-0.5,-0.5,-0.5",
      "2,-0.1025...,-0.7181...,-0.3077...,0.6155...",
      "3,-0.3201...,-0.7318...,-0.0914...,0.5946...",
      "4,-0.2945...,-0.6812...,-0.1841...,0.6444...",
      "5,-0.2877...,-0.7076...,-0.1399...,0.6299...",
      "6,-0.2995...,-0.6946...,-0.1547...,0.6354...",
  };
  EXPECT_EQ(csv_lines(cmd_orbit(load("d4"), o).text), d4);
  EXPECT_EQ(csv_lines(cmd_orbit(load("q_prime"), o).text), qp);
}

TEST(CmdOrbit, LimitDirection) {
  CliOptions o;
  o.iters = 0;
  o.paper_style = true;
  const auto qp = cmd_orbit(load("q_prime"), o).report["orbit"];
  EXPECT_EQ(qp["rows"].size(), 1u);
  EXPECT_EQ(qp["rows"][0]["unit"], json::parse(R"(["0.5","0.5","0.5","0.5"])"));
  EXPECT_EQ(qp["limit_direction"],
            json::parse(R"(["-0.2947575153522...","-0.6983410991536...","-0.1513810480345...","0.6344458169711..."])"));
  EXPECT_TRUE(cmd_orbit(load("d4"), o).report["orbit"]["limit_direction"].is_null());
  EXPECT_TRUE(cmd_orbit(load("kronecker"), o).report["orbit"]["limit_direction"].is_null());
}

TEST(CmdClassify, Verdicts) {
  const auto d4 = cmd_classify(load("d4"), {});
  EXPECT_EQ(d4.exit_code, kOk);
  EXPECT_EQ(d4.report["trichotomy"]["verdict"], "finite");
  const auto qp = cmd_classify(load("q_prime"), {}).report;
  EXPECT_EQ(qp["trichotomy"]["verdict"], "wild");
  EXPECT_EQ(qp["trichotomy"]["sign_stability"]["stretch_factor"]["rho"], "2.3692054070925");
  EXPECT_EQ(format_rational(classify(corpus::q_prime()).by_sign_stability.stretch_factor->midpoint(), {15, false}),
            "2.369205407092467");
  const auto kr = cmd_classify(load("kronecker"), {}).report;
  EXPECT_EQ(kr["trichotomy"]["verdict"], "tame");
  EXPECT_EQ(kr["entropy"]["h_algebraic"], "0.0000000000000");
}

TEST(CmdGraph, Counts) {
  CliOptions o;
  o.max_seeds = 100;
  const auto a2 = cmd_graph(load("a2"), o);
  EXPECT_EQ(a2.report["graph"]["vertices"], 10);
  EXPECT_EQ(a2.report["graph"]["edges"], 10);
  EXPECT_EQ(a2.report["graph"]["complete"], true);
  EXPECT_EQ(a2.report["graph"]["dt_loop_order"], 5);
  o.require_complete = true;
  const auto kr = cmd_graph(load("kronecker"), o);
  EXPECT_EQ(kr.report["graph"]["complete"], false);
  EXPECT_EQ(kr.exit_code, kTruncated);
  EXPECT_EQ(cmd_graph(load("a2"), o).exit_code, kOk);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_cli("coxeter " + kData + "d4.quiver").code, 0);
  EXPECT_EQ(run_cli("coxeter " + kData + "missing.quiver").code, 2);
  EXPECT_EQ(run_cli("coxeter " + write_temp("bad.quiver", "n = 2\nb = [[0,1],[1,0]]\n")).code, 2);
  EXPECT_EQ(run_cli("nosuchcommand").code, 2);
  EXPECT_EQ(run_cli("signs " + kData + "d4.quiver --start 1,0,1,1").code, 2);
  const auto cyc = write_temp("cyc.quiver", "n = 3\narrows = (0,1), (1,2), (2,0)\n");
  EXPECT_EQ(run_cli("coxeter " + cyc).code, 3);
  EXPECT_EQ(run_cli("classify " + cyc).code, 3);
  EXPECT_EQ(run_cli("graph " + cyc + " --max-seeds 50").code, 0);
  EXPECT_EQ(run_cli("graph " + kData + "kronecker.quiver --max-seeds 50 --require-complete").code, 5);
  EXPECT_EQ(run_cli("graph " + kData + "a2.quiver --require-complete").code, 0);
  EXPECT_EQ(run_cli("classify " + write_temp("split.quiver", "n = 3\narrows = (0,1)\n")).code, 3);
}

TEST(Binary, DotExport) {
  const auto path = (std::filesystem::path(testing::TempDir()) / "a2.dot").string();
  EXPECT_EQ(run_cli("graph " + kData + "a2.quiver --export " + path).code, 0);
  EXPECT_EQ(slurp(path), to_dot(explore(corpus::a2(), 10000), "a2"));
}

TEST(Binary, GoldenReports) {
  // Byte-stable reports for fixed flags and seed.
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"coxeter_d4.json", "coxeter " + kData + "d4.quiver"},
      {"coxeter_q_prime.json", "coxeter " + kData + "q_prime.quiver"},
      {"signs_q_prime.csv", "signs " + kData + "q_prime.quiver --iters 10 --csv"},
      {"orbit_q_prime.json", "orbit " + kData + "q_prime.quiver --iters 6 --digits 4 --paper-style"},
      {"classify_kronecker.json", "classify " + kData + "kronecker.quiver --seed 7"},
      {"graph_a2.json", "graph " + kData + "a2.quiver"},
      {"entropy_q_prime.json", "entropy " + kData + "q_prime.quiver"},
  };
  for (const auto& [file, args] : cases) {
    SCOPED_TRACE(file);
    const auto a = run_cli(args), b = run_cli(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    // The quiver path is not part of any report.
    EXPECT_EQ(a.out, slurp(kGolden + file));
  }
}
