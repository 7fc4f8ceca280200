#include "cli.hpp"

#include "handelman/serialize.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = HANDELMAN_FIXTURE_DIR;
const std::string kBinary = HANDELMAN_BINARY;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = handelman::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return (kFixtures / name).string(); }

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "handelman_cli_tests";
  fs::create_directories(dir);
  return dir;
}

// Exit status of the real binary, output discarded.
int exec(const std::string& args) {
  const int status = std::system((kBinary + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("certify the unit-square fixture") {
  const auto path = (scratch() / "square.cert.json").string();
  const auto r = run({"certify", fixture("square.json"), "-o", path});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "C = 87/2"));
  CHECK(contains(r.out, "theorem N = 167"));
  CHECK(contains(r.out, "c = 17"));
  CHECK(contains(r.out, "c threshold = 16"));
  CHECK(contains(r.out, "scaling c: [1/4, 1/4, 1/4, 1/4]"));
  CHECK(contains(r.out, "[2, -2, 0, 0]"));
  CHECK(contains(r.out, "used N = 13"));
  CHECK(fs::exists(path));

  const auto v = run({"verify", path, fixture("square.json")});
  CHECK(v.code == 0);
  CHECK(contains(v.out, "PASS"));

  const auto sos_path = (scratch() / "square.sos.json").string();
  const auto s = run({"schmudgen", path, "-i", fixture("square.json"), "-o", sos_path});
  CHECK(s.code == 0);
  CHECK(contains(s.out, "parity buckets = "));
  CHECK(fs::exists(sos_path));
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const auto a = (scratch() / "a.cert.json").string(), b = (scratch() / "b.cert.json").string();
  REQUIRE(run({"certify", fixture("interval.json"), "-o", a, "--threads", "1"}).code == 0);
  REQUIRE(run({"certify", fixture("interval.json"), "-o", b, "--threads", "4"}).code == 0);
  CHECK(handelman::io::read_file(a) == handelman::io::read_file(b));
}

TEST_CASE("inspect") {
  const auto sq = run({"inspect", fixture("square.json")});
  CHECK(sq.code == 0);
  CHECK(contains(sq.out, "y1 + y2 - 1/2"));
  CHECK(contains(sq.out, "y3 + y4 - 1/2"));
  const auto iv = run({"inspect", fixture("interval.json")});
  CHECK(iv.code == 0);
  CHECK(contains(iv.out, "[1, 0]"));
  CHECK(contains(iv.out, "y1 + y2 - 1"));
  const auto sx = run({"inspect", fixture("simplex.json")});
  CHECK(sx.code == 0);
  CHECK(contains(sx.out, "barycentric forms"));
  CHECK(contains(sx.out, "L0 = -x1 + 1"));
  CHECK(contains(sx.out, "L1 = x1"));
}

TEST_CASE("error exit codes") {
  const auto unb = run({"certify", fixture("unbounded.json"), "-o", (scratch() / "u.json").string()});
  CHECK(unb.code == 3);
  CHECK(contains(unb.err, "unbounded"));
  CHECK(run({"certify", fixture("empty_interior.json"), "-o", (scratch() / "e.json").string()}).code == 3);

  const auto neg = run({"certify", fixture("negative.json"), "-o", (scratch() / "n.json").string(),
                        "--escalation-rounds", "3"});
  CHECK(neg.code == 4);
  CHECK(contains(neg.err, "not PD on P"));
  CHECK_FALSE(fs::exists(scratch() / "n.json"));

  const auto mem = run({"certify", fixture("square.json"), "-o", (scratch() / "m.json").string(), "--mem-cap-mb", "0.1"});
  CHECK(mem.code == 5);
  CHECK(contains(mem.err, "memory cap"));

  CHECK(run({"certify", (scratch() / "missing.json").string()}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"certify", fixture("square.json"), "--resolution", "abc"}).code == 2);
}

TEST_CASE("verify failures") {
  const auto path = (scratch() / "interval.cert.json").string();
  REQUIRE(run({"certify", fixture("interval.json"), "-o", path}).code == 0);
  CHECK(run({"verify", path, fixture("interval.json")}).code == 0);

  // The wrong problem.
  const auto wrong = run({"verify", path, fixture("simplex.json")});
  CHECK(wrong.code == 1);
  CHECK(contains(wrong.out, "FAIL"));

  // Tamper with one matrix entry.
  std::string text = handelman::io::read_file(path);
  auto doc = nlohmann::ordered_json::parse(text);
  auto& entry = doc["terms"][0]["matrix"][0][0];
  entry = handelman::to_string(handelman::parse_rat(entry.get<std::string>()) + 1);
  const auto tampered = (scratch() / "tampered.cert.json").string();
  handelman::io::write_file(tampered, doc.dump(1));
  const auto t = run({"verify", tampered, fixture("interval.json")});
  CHECK(t.code == 1);
  CHECK(contains(t.out, "expansion mismatch"));

  // Truncated and empty files are parse errors.
  const auto cut = (scratch() / "cut.cert.json").string();
  handelman::io::write_file(cut, text.substr(0, text.size() / 3));
  const auto c = run({"verify", cut, fixture("interval.json")});
  CHECK(c.code == 2);
  CHECK(contains(c.err, "byte"));
  const auto empty = (scratch() / "empty.cert.json").string();
  handelman::io::write_file(empty, "");
  CHECK(run({"verify", empty, fixture("interval.json")}).code == 2);
  CHECK(run({"schmudgen", empty}).code == 2);
}

TEST_CASE("schmudgen summaries") {
  const auto path = (scratch() / "constant.cert.json").string();
  REQUIRE(run({"certify", fixture("constant.json"), "-o", path}).code == 0);
  const auto s = run({"schmudgen", path, "-o", (scratch() / "constant.sos.json").string()});
  CHECK(s.code == 0);
  CHECK(contains(s.out, "parity buckets = 1"));
}

TEST_CASE("the installed binary reports the same exit codes") {
  const auto out = (scratch() / "bin.cert.json").string();
  CHECK(exec("certify " + fixture("interval.json") + " -o " + out) == 0);
  CHECK(exec("verify " + out + " " + fixture("interval.json")) == 0);
  CHECK(exec("verify " + out + " " + fixture("triangle.json")) == 1);
  CHECK(exec("certify " + fixture("unbounded.json") + " -o " + out + ".u") == 3);
  CHECK(exec("certify " + fixture("negative.json") + " --escalation-rounds 2 -o " + out + ".n") == 4);
  CHECK(exec("certify " + fixture("square.json") + " --mem-cap-mb 0.1 -o " + out + ".m") == 5);
  CHECK(exec("inspect " + fixture("simplex.json")) == 0);
  CHECK(exec("") == 2);
  CHECK(exec("certify /nonexistent.json") == 2);
}

TEST_CASE("time limit exit code") {
  // A tiny wall clock cap has passed by the time expansion starts.
  const auto r = run({"certify", fixture("square.json"), "-o", (scratch() / "tl.json").string(),
                      "--max-seconds", "0.000001"});
  CHECK(r.code == 6);
  CHECK(contains(r.err, "time limit"));
}

}  // TEST_SUITE
