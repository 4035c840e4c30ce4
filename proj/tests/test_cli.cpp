#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path d = [] {
    const fs::path p = fs::temp_directory_path() / "qvi_test_cli";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd =
      std::string("\"") + QVI_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" + err.string() + "\"";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("reproduce") {
  const fs::path d = scratch() / "r53";
  const Result r = run("reproduce 5.3 \"" + d.string() + "\"");
  CHECK(r.status == 0);
  for (const char* f : {"trace.csv", "flows.svg", "residual.svg"}) CHECK(fs::exists(d / f));

  const Result bad = run("reproduce 9.9 \"" + (scratch() / "x").string() + "\"");
  CHECK(bad.status == 2);
  for (const char* name : {"5.1", "5.2", "5.3", "all"}) CHECK(bad.err.find(name) != std::string::npos);
}

TEST_CASE("solve") {
  const fs::path out = scratch() / "solve52";
  const fs::path cfg = write_config("ok.ini",
                                    "[problem]\nname = example-5.2\nparams.a = 2\nparams.b = 3\n"
                                    "[output]\ndir = " + out.string() + "\n");
  const Result r = run("solve \"" + cfg.string() + "\"");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("Tolerance iterations=", 0) == 0);
  CHECK(r.out.find(" residual=") != std::string::npos);
  CHECK(r.out.find(" seed=0") != std::string::npos);
  const std::string first = slurp(out / "trace.csv");
  CHECK(first.rfind("k,lambda,E_k,residual,dist_to_solution\n", 0) == 0);

  // A rerun overwrites the trace instead of appending.
  CHECK(run("solve \"" + cfg.string() + "\"").status == 0);
  CHECK(slurp(out / "trace.csv") == first);

  const Result mu = run("solve \"" + write_config("mu.ini", "[problem]\nname = example-5.2\n[solver]\nmu = 1.5\n").string() + "\"");
  CHECK(mu.status == 2);
  CHECK(mu.err.find("mu must be in (0,1)") != std::string::npos);
  CHECK(mu.err.find("line 4") != std::string::npos);

  const Result pair = run("solve \"" +
                          write_config("pair.ini", "[problem]\nname = example-5.1\n[solver]\ngeometry = entropy\n"
                                                   "[output]\ndir = " + (scratch() / "pair").string() + "\n")
                              .string() +
                          "\"");
  CHECK(pair.status == 2);
  CHECK(pair.err.find("unsupported geometry/set pair") != std::string::npos);

  const Result maxit = run("solve \"" +
                           write_config("maxit.ini", "seed = 5\n[problem]\nname = example-5.1\n[solver]\nmax_iter = 3\n"
                                                     "[output]\ndir = " + (scratch() / "maxit").string() + "\n")
                               .string() +
                           "\"");
  CHECK(maxit.status == 3);
  CHECK(maxit.out.rfind("MaxIter iterations=3 ", 0) == 0);
  CHECK(maxit.out.find("seed=5") != std::string::npos);

  CHECK(run("solve \"" + (scratch() / "missing.ini").string() + "\"").status == 1);
}

TEST_CASE("check") {
  const Result g = run("check geometry --seed 42");
  CHECK(g.status == 0);
  CHECK(g.out.find("FAIL") == std::string::npos);
  CHECK(g.out.find("seed=42") != std::string::npos);

  const Result all = run("check all --seed 7");
  CHECK(all.status == 0);
  CHECK(all.out.find("FAIL") == std::string::npos);

  CHECK(run("check bogus").status == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("reproduce 5.1").status == 2);
  CHECK(run("check geometry --seed notanumber").status == 2);
  CHECK(run("--help").status == 0);
}
