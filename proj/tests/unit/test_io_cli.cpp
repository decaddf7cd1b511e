#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "qcorr/cli.hpp"
#include "qcorr/io.hpp"
#include "qcorr/report.hpp"
#include "qcorr/zoo.hpp"
#include "states.hpp"

using namespace qcorr;
using namespace fixture;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qcorr_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
  static int& counter() {
    static int n = 0;
    return n;
  }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qcorr");
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

ErrorCode zoo_error(std::string_view name, const ZooParams& p) {
  try {
    zoo(name, p);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("zoo states") {
  CHECK(frob(to_density(zoo("bell-times-zero")).matrix(), bell_times_zero().matrix()) < 1e-15);
  ZooParams three;
  three.n = 3;
  const auto g = zoo("ghz", three);
  CHECK(g.is_vector());
  CHECK(frob(to_density(g).matrix(), ghz3().matrix()) < 1e-15);
  ZooParams one;
  one.p = 1.0;
  CHECK(frob(to_density(zoo("werner", one)).matrix(), bell().matrix()) < 1e-15);
  CHECK(frob(to_density(zoo("w", three)).matrix(), w3().matrix()) < 1e-15);
  CHECK(frob(to_density(zoo("classical-corr")).matrix(), diag({0.5, 0, 0, 0.5}, {2, 2}).matrix()) < 1e-15);

  CHECK(zoo_error("nope", {}) == ErrorCode::UnknownName);
  ZooParams bad;
  bad.p = 2.0;
  CHECK(zoo_error("werner", bad) == ErrorCode::BadParams);
  bad = {};
  bad.n = 1;
  CHECK(zoo_error("ghz", bad) == ErrorCode::BadParams);
  bad = {};
  bad.rank = 9;
  bad.dims = Dims{2, 2};
  CHECK(zoo_error("random-mixed", bad) == ErrorCode::BadParams);
}

TEST_CASE("every zoo state validates without clipping") {
  for (const auto& name : zoo_names()) {
    const auto file = zoo(name);
    const auto rho = to_density(file);
    CHECK_FALSE(rho.clipped());
    if (!file.is_vector()) {
      const auto again = DensityMatrix::validate(std::get<Matrix>(file.content), file.dims);
      CHECK(again.matrix() == std::get<Matrix>(file.content));
    }
  }
}

TEST_CASE("state files round trip exactly") {
  TempDir dir;
  ZooParams p;
  p.dims = Dims{2, 3};
  p.rank = 4;
  p.seed = 11;
  const auto rho = to_density(zoo("random-mixed", p));
  serialize(rho, dir / "rho.json");
  const auto back = parse_state(dir / "rho.json");
  CHECK(back.matrix() == rho.matrix());
  CHECK(back.dims() == rho.dims());

  const auto psi = random_pure({2, 2, 2}, 3);
  StateFile vf{psi.dims(), psi.amplitudes(), "psi"};
  write_state_file(vf, dir / "psi.json");
  const auto vback = read_state_file(dir / "psi.json");
  REQUIRE(vback.is_vector());
  CHECK(std::get<Vector>(vback.content) == psi.amplitudes());
  CHECK(vback.label == "psi");
}

TEST_CASE("state file errors") {
  TempDir dir;
  auto code_of = [&](const std::string& text) {
    write_text(dir / "bad.json", text);
    try {
      parse_state(dir / "bad.json");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::BadParams;
  };
  CHECK(code_of(R"({"dims": [2, 2], "matrix": [[[1,0],[0,0]],[[0,0],[0,0]]]})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"dims": [2], "matrix": [[[1,0],[0,0]],[[0,0],[0,0]]], "vector": [[1,0],[0,0]]})") ==
        ErrorCode::ParseError);
  CHECK(code_of(R"({"dims": [2], "matrix": [[[1,0],[0,0]],[[0,0],[1,0]]]})") == ErrorCode::TraceMismatch);
  CHECK(code_of(R"({"dims": [2], "vector": [[1,0],[1,0]]})") == ErrorCode::NotNormalized);
  CHECK(code_of("not json") == ErrorCode::ParseError);
  try {
    parse_state(dir / "missing.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("vector and matrix files give the same analysis") {
  TempDir dir;
  StateFile vf{{2, 2}, bell_vector(), "bell"};
  write_state_file(vf, dir / "v.json");
  serialize(bell().with_label("bell"), dir / "m.json");
  const auto v = run({"analyze", (dir / "v.json").string(), "--measures", "witness,gmc,entropy,discord", "--json",
                      "--no-timing", "--starts", "3"});
  const auto m = run({"analyze", (dir / "m.json").string(), "--measures", "witness,gmc,entropy,discord", "--json",
                      "--no-timing", "--starts", "3"});
  CHECK(v.code == kExitOk);
  CHECK(v.out == m.out);
}

TEST_CASE("basis files round trip") {
  TempDir dir;
  const auto b = random_basis(4, 9);
  write_basis_file(b, dir / "b.json");
  CHECK(read_basis_file(dir / "b.json").vectors() == b.vectors());
}

TEST_CASE("report minima are consistent") {
  AnalysisRequest req;
  req.discord = true;
  req.concurrence = true;
  req.config.n_random_starts = 3;
  req.timing = false;
  for (const auto& rho : {ghz3(), bell_times_zero(), random_mixed({2, 2, 2}, 3, 5)}) {
    const auto rep = analyze(rho, req);
    CHECK(minima_consistent(rep));
    CHECK_FALSE(report_to_json(rep).contains("wall_time_seconds"));
  }
}

TEST_CASE("cli witness on GHZ") {
  TempDir dir;
  const auto z = run({"zoo", "ghz", "--n", "3", "-o", (dir / "g.json").string()});
  REQUIRE(z.code == kExitOk);
  const auto w = run({"witness", (dir / "g.json").string(), "--json", "--no-timing"});
  REQUIRE(w.code == kExitOk);
  const auto j = json::parse(w.out);
  CHECK(j["witness"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["config"]["seed"].get<int>() == 42);
  const auto text = run({"witness", (dir / "g.json").string()});
  CHECK(text.out.find("W ") != std::string::npos);
  CHECK(text.out.find("seed") != std::string::npos);
}

TEST_CASE("cli analyze on bell times zero") {
  TempDir dir;
  REQUIRE(run({"zoo", "bell-times-zero", "-o", (dir / "b.json").string()}).code == kExitOk);
  const auto a = run({"analyze", (dir / "b.json").string(), "--measures", "witness,gmc", "--json", "--no-timing"});
  REQUIRE(a.code == kExitOk);
  const auto j = json::parse(a.out);
  CHECK(j["gmc"]["verdict"] == "necessary-condition-passed");
  CHECK(j["witness"]["per_partition"].size() == 3);
  CHECK_FALSE(j.contains("discord"));
  CHECK_FALSE(j.contains("wall_time_seconds"));
  const auto timed = run({"analyze", (dir / "b.json").string(), "--measures", "witness", "--json"});
  CHECK(json::parse(timed.out).contains("wall_time_seconds"));
}

TEST_CASE("cli discord on a cut") {
  TempDir dir;
  REQUIRE(run({"zoo", "ghz", "--n", "3", "-o", (dir / "g.json").string()}).code == kExitOk);
  const auto d = run({"discord", (dir / "g.json").string(), "--cut", "1|23", "--json", "--no-timing", "--starts", "4"});
  REQUIRE(d.code == kExitOk);
  const auto j = json::parse(d.out);
  CHECK(j["discord"]["cut"]["partition"] == "1|23");
  CHECK(j["discord"]["cut"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(j["discord"]["cut"]["per_start_values"].size() >= 4);
  CHECK(j["discord"]["cut"].contains("argmin"));
}

TEST_CASE("cli gmc fixed point") {
  TempDir dir;
  REQUIRE(run({"zoo", "bell-times-zero", "-o", (dir / "b.json").string()}).code == kExitOk);
  write_basis_file(ProjectiveBasis::bell(), dir / "bg.json");
  write_basis_file(ProjectiveBasis::computational(2), dir / "bgp.json");
  const auto r = run({"gmc", (dir / "b.json").string(), "--fixed-point", (dir / "bg.json").string(),
                      (dir / "bgp.json").string(), "--cut", "12|3", "--json", "--no-timing"});
  REQUIRE(r.code == kExitOk);
  const auto j = json::parse(r.out);
  CHECK(j["gmc"]["fixed_point"]["certified"] == true);
  CHECK(run({"gmc", (dir / "b.json").string(), "--fixed-point", (dir / "bg.json").string(),
             (dir / "bgp.json").string()})
            .code == kExitUsage);
}

TEST_CASE("cli exit codes") {
  TempDir dir;
  write_text(dir / "neg.json", R"({"dims": [2], "matrix": [[[1.2,0],[0,0]],[[0,0],[-0.2,0]]]})");
  const auto v = run({"witness", (dir / "neg.json").string()});
  CHECK(v.code == kExitValidation);
  CHECK(v.err.find("NotPositive") != std::string::npos);
  CHECK(v.out.empty());

  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"witness", (dir / "missing.json").string()}).code == kExitUsage);
  REQUIRE(run({"zoo", "bell", "-o", (dir / "b.json").string()}).code == kExitOk);
  CHECK(run({"discord", (dir / "b.json").string(), "--cut", "1|3"}).code == kExitUsage);
  CHECK(run({"analyze", (dir / "b.json").string(), "--measures", "nonsense"}).code == kExitUsage);
  CHECK(run({"analyze", (dir / "b.json").string(), "--partition-mode", "weird"}).code == kExitUsage);
  CHECK(run({"zoo", "unknown-state"}).code == kExitUsage);
}

TEST_CASE("seed from the environment, flag wins") {
  TempDir dir;
  REQUIRE(run({"zoo", "bell", "-o", (dir / "b.json").string()}).code == kExitOk);
  ::setenv("QCORR_SEED", "7", 1);
  const auto env = json::parse(run({"witness", (dir / "b.json").string(), "--json", "--no-timing"}).out);
  const auto flag = json::parse(run({"witness", (dir / "b.json").string(), "--json", "--no-timing", "--seed", "9"}).out);
  ::unsetenv("QCORR_SEED");
  CHECK(env["config"]["seed"].get<int>() == 7);
  CHECK(flag["config"]["seed"].get<int>() == 9);
}

TEST_CASE("cli output is deterministic across thread counts") {
  TempDir dir;
  REQUIRE(run({"zoo", "random-mixed", "--dims", "2,2,2", "--rank", "3", "-o", (dir / "r.json").string()}).code ==
          kExitOk);
  const std::vector<std::string> base{"analyze", (dir / "r.json").string(), "--measures", "witness,gmc,discord",
                                      "--json", "--no-timing", "--starts", "3"};
  auto with_threads = [&](const std::string& t) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(t);
    return run(args).out;
  };
  const auto one = with_threads("1");
  CHECK(one == with_threads("1"));
  CHECK(one == with_threads("4"));
}
