#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace {

struct Cmd {
  int code = -1;
  std::string out;
  std::string err;
};

const std::string& binary() {
  static const std::string b = [] {
    const char* p = std::getenv("BULKCA_BIN");
    REQUIRE(p != nullptr);
    return std::string(p);
  }();
  return b;
}

const std::string& work_dir() {
  static const std::string d = [] {
    char tmpl[] = "/tmp/bulkca_cli_XXXXXX";
    char* p = mkdtemp(tmpl);
    REQUIRE(p != nullptr);
    return std::string(p);
  }();
  return d;
}

std::string path_of(const std::string& name) { return work_dir() + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Cmd run_cli(const std::string& args) {
  static int seq = 0;
  const std::string out_path = path_of("stdout." + std::to_string(seq));
  const std::string err_path = path_of("stderr." + std::to_string(seq));
  ++seq;
  const std::string cmd =
      binary() + " " + args + " >" + out_path + " 2>" + err_path;
  const int raw = std::system(cmd.c_str());
  Cmd r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = read_file(out_path);
  r.err = read_file(err_path);
  return r;
}

// First value wins; repeated keys (note) are checked via contains instead.
std::map<std::string, std::string> porcelain(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos)
      kv.emplace(line.substr(0, eq), line.substr(eq + 1));
  }
  return kv;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// Shared fixture files, built once.
const std::string& add2() {
  static const std::string p = [] {
    REQUIRE(run_cli("make additive 2 -o " + path_of("add2.ca")).code == 0);
    return path_of("add2.ca");
  }();
  return p;
}

const std::string& shift21() {
  static const std::string p = [] {
    REQUIRE(run_cli("make shift 2:1 -o " + path_of("s21.ca")).code == 0);
    return path_of("s21.ca");
  }();
  return p;
}

const std::string& shift22() {
  static const std::string p = [] {
    REQUIRE(run_cli("make shift 2:2 -o " + path_of("s22.ca")).code == 0);
    return path_of("s22.ca");
  }();
  return p;
}

}  // namespace

TEST_CASE("make writes a parseable file and reports it") {
  const Cmd r =
      run_cli("--porcelain make additive 2 -o " + path_of("mk.ca"));
  CHECK(r.code == 0);
  const auto kv = porcelain(r.out);
  CHECK(kv.at("path") == path_of("mk.ca"));
  CHECK(kv.at("states") == "2");
  CHECK(kv.at("radius") == "1");
  const std::string text = read_file(path_of("mk.ca"));
  CHECK(contains(text, "ca v1"));
  CHECK(contains(text, "additive 2"));
}

TEST_CASE("make without an output path prints the text format") {
  const Cmd r = run_cli("make additive 3");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "ca v1"));
  CHECK(contains(r.out, "states 3"));
  CHECK(contains(r.out, "additive 3"));
}

TEST_CASE("human and porcelain report styles") {
  const Cmd human = run_cli("info " + add2());
  CHECK(human.code == 0);
  CHECK(contains(human.out, "states: 2"));
  const Cmd script = run_cli("--porcelain info " + add2());
  CHECK(script.code == 0);
  CHECK(contains(script.out, "states=2"));
  CHECK(!contains(script.out, "states: "));
}

TEST_CASE("info reports rule structure") {
  const Cmd r = run_cli("--porcelain info " + add2());
  REQUIRE(r.code == 0);
  const auto kv = porcelain(r.out);
  CHECK(kv.at("states") == "2");
  CHECK(kv.at("radius") == "1");
  CHECK(kv.at("window") == "3");
  CHECK(kv.at("table_entries") == "8");
  CHECK(kv.at("materialized") == "yes");
  CHECK(kv.at("kind") == "additive 2");
  CHECK(kv.at("neighborhood") == "-1 0 1");
  CHECK(kv.at("neighborhood_exhaustive") == "yes");
}

TEST_CASE("run renders ascii rows top down or time up") {
  const std::string args = "run " + add2() + " -c \"5 : 0 0 1 0 0\" -s 2";
  const Cmd down = run_cli(args);
  CHECK(down.code == 0);
  CHECK(down.out == "..#..\n.###.\n#.#.#\n");
  const Cmd up = run_cli(args + " --time-up");
  CHECK(up.code == 0);
  CHECK(up.out == "#.#.#\n.###.\n..#..\n");
}

TEST_CASE("run replicates the period horizontally") {
  const Cmd r = run_cli("run " + add2() + " -c \"1 : 1\" -x 5 -s 0");
  CHECK(r.code == 0);
  CHECK(r.out == "#####\n");
}

TEST_CASE("run writes deterministic pgm bytes") {
  const std::string args = "--porcelain run " + add2() +
                           " -c \"5 : 0 0 1 0 0\" -s 2 --pgm ";
  const Cmd r1 = run_cli(args + path_of("d1.pgm"));
  REQUIRE(r1.code == 0);
  const auto kv = porcelain(r1.out);
  CHECK(kv.at("width") == "5");
  CHECK(kv.at("height") == "3");
  const std::string bytes = read_file(path_of("d1.pgm"));
  REQUIRE(bytes.size() == 11 + 15);
  CHECK(bytes.substr(0, 11) == "P5\n5 3\n255\n");
  const unsigned char want[15] = {0, 0,   255, 0,   0, 0,   255, 255,
                                  255, 0, 255, 0,   255, 0,  255};
  for (int i = 0; i < 15; ++i)
    CHECK(static_cast<unsigned char>(bytes[11 + i]) == want[i]);
  REQUIRE(run_cli(args + path_of("d2.pgm")).code == 0);
  CHECK(read_file(path_of("d2.pgm")) == bytes);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("run " + add2()).code == 1);
  const Cmd bad = run_cli("make frobnicate 3");
  CHECK(bad.code == 1);
  CHECK(contains(bad.err, "unknown make target"));
  CHECK(run_cli("frobnicate").code == 1);
}

TEST_CASE("file parse errors carry the path and line") {
  std::ofstream(path_of("bad.ca"))
      << "ca v1\nstates 2\nradius 1\nrule table\n0 1 2 0 0 0 0 0\n";
  const Cmd r = run_cli("info " + path_of("bad.ca"));
  CHECK(r.code == 1);
  CHECK(contains(r.err, "bulkca: "));
  CHECK(contains(r.err, path_of("bad.ca")));
  CHECK(contains(r.err, "line 5"));
}

TEST_CASE("config parse errors exit 1") {
  const Cmd r = run_cli("run " + add2() + " -c \"2 : 5 0\"");
  CHECK(r.code == 1);
  CHECK(contains(r.err, "bulkca: "));
}

TEST_CASE("props runs the analyzer battery") {
  const Cmd r = run_cli("--porcelain props " + add2());
  REQUIRE(r.code == 0);
  const auto kv = porcelain(r.out);
  CHECK(kv.at("balanced") == "yes");
  CHECK(kv.at("surjective") == "holds");
  CHECK(kv.at("injective") == "fails");
  CHECK(contains(kv.at("collision_a"), " : "));
  CHECK(contains(kv.at("collision_b"), " : "));
  CHECK(kv.count("inverse_radius") == 0);
  CHECK(kv.at("lr_permutative") == "yes");
  CHECK(kv.at("quiescent") == "0");
  CHECK(kv.at("spreading") == "none");
  CHECK(kv.at("captive") == "yes");
  CHECK(kv.at("captive_exhaustive") == "yes");
  CHECK(kv.at("nilpotent") == "fails");
}

TEST_CASE("props reports the inverse radius of a reversible rule") {
  const Cmd r = run_cli("--porcelain props " + shift21());
  REQUIRE(r.code == 0);
  const auto kv = porcelain(r.out);
  CHECK(kv.at("injective") == "holds");
  CHECK(kv.at("inverse_radius") == "1");
  CHECK(kv.at("surjective") == "holds");
  CHECK(kv.at("quiescent") == "0 1");
}

TEST_CASE("props surfaces the shortest orphan") {
  REQUIRE(run_cli("make deltamax 2 -o " + path_of("dm2.ca")).code == 0);
  const Cmd r = run_cli("--porcelain props " + path_of("dm2.ca"));
  REQUIRE(r.code == 0);
  const auto kv = porcelain(r.out);
  CHECK(kv.at("surjective") == "fails");
  CHECK(kv.at("orphan") == "0 1 0");
}

TEST_CASE("check finds and verifies quotients") {
  REQUIRE(run_cli("make parity-big -o " + path_of("pb.ca")).code == 0);
  REQUIRE(run_cli("make parity-small -o " + path_of("ps.ca")).code == 0);
  const Cmd found =
      run_cli("--porcelain check quot " + path_of("ps.ca") + " " +
              path_of("pb.ca"));
  CHECK(found.code == 0);
  auto kv = porcelain(found.out);
  CHECK(kv.at("result") == "holds");
  CHECK(kv.at("map") == "0 1 1");
  CHECK(kv.at("exhaustive") == "yes");

  const Cmd given =
      run_cli("--porcelain check quot " + path_of("ps.ca") + " " +
              path_of("pb.ca") + " --map \"0 1 1\"");
  CHECK(given.code == 0);
  CHECK(porcelain(given.out).at("result") == "holds");

  const Cmd none = run_cli("--porcelain check sub " + path_of("ps.ca") +
                           " " + path_of("pb.ca"));
  CHECK(none.code == 2);
  kv = porcelain(none.out);
  CHECK(kv.at("result") == "none");
  CHECK(kv.at("exhaustive") == "yes");
}

TEST_CASE("check mixed finds the gadget pair projection") {
  REQUIRE(run_cli("make gadget 5 -o " + path_of("g5.ca")).code == 0);
  REQUIRE(run_cli("make shift 2:-1 -o " + path_of("sm1.ca")).code == 0);
  const Cmd found = run_cli("--porcelain check mixed " + path_of("sm1.ca") +
                            " " + path_of("g5.ca"));
  CHECK(found.code == 0);
  const auto kv = porcelain(found.out);
  CHECK(kv.at("result") == "holds");
  CHECK(kv.at("subset") == "1 2 3 4");
  CHECK(kv.at("map") == "0 0 1 1");

  const Cmd given = run_cli("--porcelain check mixed " + path_of("sm1.ca") +
                            " " + path_of("g5.ca") +
                            " --subset \"1 2 3 4\" --map \"0 0 1 1\"");
  CHECK(given.code == 0);
  CHECK(porcelain(given.out).at("result") == "holds");
}

TEST_CASE("check honors an explicit rescaling") {
  const Cmd plain = run_cli("--porcelain check sub " + shift22() + " " +
                            shift21());
  CHECK(plain.code == 2);
  CHECK(porcelain(plain.out).at("result") == "none");

  const Cmd shifted = run_cli("--porcelain check sub " + shift22() + " " +
                              shift21() + " --alpha 1:1:-1");
  CHECK(shifted.code == 0);
  const auto kv = porcelain(shifted.out);
  CHECK(kv.at("alpha") == "1:1:-1");
  CHECK(kv.at("group") == "1");
  CHECK(kv.at("result") == "holds");
  CHECK(kv.at("map") == "0 1");
}

TEST_CASE("search reports the first witness") {
  const Cmd r = run_cli("--porcelain search inj " + shift22() + " " +
                        shift21());
  CHECK(r.code == 0);
  const auto kv = porcelain(r.out);
  CHECK(kv.at("result") == "holds");
  CHECK(kv.at("alpha") == "1:1:-1");
  CHECK(kv.at("group") == "1");
  CHECK(kv.at("map") == "0 1");
  CHECK(kv.count("cells_total") == 1);
}

TEST_CASE("search reports unknown with skip counters") {
  REQUIRE(run_cli("make shiftprod 2:0 2:1 2:2 2:3 -o " +
                  path_of("a23.ca")).code == 0);
  REQUIRE(run_cli("make shiftprod 2:0 2:1 2:2 2:4 -o " +
                  path_of("a24.ca")).code == 0);
  const Cmd r = run_cli("--porcelain search inj " + path_of("a23.ca") + " " +
                        path_of("a24.ca"));
  CHECK(r.code == 2);
  const auto kv = porcelain(r.out);
  CHECK(kv.at("result") == "unknown");
  CHECK(kv.at("cells_skipped_cutoff") != "0");
  CHECK(contains(r.out, "note=window scan above cutoff; cells skipped"));
}

TEST_CASE("transform writes the rescaled rule") {
  const Cmd r = run_cli("--porcelain transform " + add2() +
                        " --alpha 2:2:0 -o " + path_of("t.ca"));
  CHECK(r.code == 0);
  auto kv = porcelain(r.out);
  CHECK(kv.at("states") == "4");
  CHECK(kv.at("radius") == "2");

  const Cmd info = run_cli("--porcelain info " + path_of("t.ca"));
  REQUIRE(info.code == 0);
  kv = porcelain(info.out);
  CHECK(kv.at("states") == "4");
  CHECK(kv.at("table_entries") == "1024");

  const Cmd a = run_cli("transform " + add2() + " --alpha 2:2:0");
  const Cmd b = run_cli("transform " + add2() + " --alpha 2:2:0");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("make builds encoders on top of a base file") {
  const Cmd two = run_cli("--porcelain make encode2 " + add2() + " -o " +
                          path_of("e2.ca"));
  CHECK(two.code == 0);
  auto kv = porcelain(two.out);
  CHECK(kv.at("states") == "2");
  CHECK(kv.at("radius") == "12");

  const Cmd cap = run_cli("--porcelain make encodecaptive " + add2() +
                          " -o " + path_of("ec.ca"));
  CHECK(cap.code == 0);
  kv = porcelain(cap.out);
  CHECK(kv.at("states") == "3");
  CHECK(kv.at("radius") == "10");
}
