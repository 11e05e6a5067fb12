// Integration checks for the pdc-herald binary (path passed as argv[1]):
// exercises each subcommand through a shell and verifies stdout, files and
// exit codes.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pdc/csv.hpp"

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAILED", what.c_str());
  if (!ok) ++failures;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& cmd) {
  RunResult res;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe))
    res.out.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: pdc_cli_tests <path-to-pdc-herald>\n";
    return 2;
  }
  const std::string bin = std::string("\"") + argv[1] + "\"";
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "pdc_cli_test";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  {
    auto r = run(bin + " print-config");
    check(r.exit_code == 0, "print-config exits 0");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    check(!j.is_discarded() && j["mode"] == "single" &&
              j["grid"]["points"] == 20,
          "print-config emits the default JSON config");
    auto flag = run(bin + " --print-config");
    check(flag.exit_code == 0 && flag.out == r.out,
          "--print-config flag matches the subcommand");
  }

  check(run(bin).exit_code == 2, "no subcommand exits 2");
  check(run(bin + " sweep --no-such-flag").exit_code == 2,
        "unknown flag exits 2");
  check(run(bin + " sweep --points 0").exit_code == 2, "empty grid exits 2");

  {
    auto r = run(bin + " sweep --start 0.1 --stop 1 --points 5");
    check(r.exit_code == 0, "sweep exits 0");
    auto doc = pdc::read_csv_string(r.out);
    check(doc.rows.size() == 5 && doc.rows[0].detector == "pnr1" &&
              *doc.rows[0].r == 0.1 && *doc.rows[4].r == 1.0,
          "sweep emits one CSV row per grid point");
  }

  {
    auto r = run(bin +
                 " sweep --detector binary_click --eta 1 --start 0.1 --stop 2"
                 " --points 20");
    auto doc = pdc::read_csv_string(r.out);
    bool ok = r.exit_code == 0 && doc.rows.size() == 20;
    for (const auto& row : doc.rows)
      ok = ok && row.fidelity && row.herald_prob &&
           std::abs(*row.fidelity + *row.herald_prob - 1.0) < 1e-12;
    check(ok, "ideal binary sweep rows satisfy p + F = 1");
  }

  {
    auto r = run(bin + " sweep --points 3 --format json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    check(r.exit_code == 0 && !j.is_discarded() && j["rows"].size() == 3,
          "sweep --format json emits parseable JSON");
  }

  {
    fs::path out = tmp / "sweep.csv";
    std::string cmd = bin + " sweep --points 6 --output \"" + out.string() + "\"";
    auto r1 = run(cmd);
    std::ifstream f1(out);
    std::stringstream s1;
    s1 << f1.rdbuf();
    auto r2 = run(cmd);
    std::ifstream f2(out);
    std::stringstream s2;
    s2 << f2.rdbuf();
    check(r1.exit_code == 0 && r2.exit_code == 0 && !s1.str().empty() &&
              s1.str() == s2.str(),
          "sweep --output writes a deterministic file");
    check(pdc::read_csv_string(s1.str()).rows.size() == 6,
          "written CSV re-parses");
  }

  {
    fs::path cfg = tmp / "config.json";
    std::ofstream(cfg) << R"({"grid": {"stop": 1.5, "points": 7}})";
    auto r = run(bin + " sweep --config \"" + cfg.string() + "\" --points 4");
    auto doc = pdc::read_csv_string(r.out);
    check(r.exit_code == 0 && doc.rows.size() == 4 && *doc.rows[3].r == 1.5,
          "flags override config fields");
    std::ofstream(cfg) << R"({"grdi": {}})";
    check(run(bin + " sweep --config \"" + cfg.string() + "\"").exit_code == 2,
          "unknown config key exits 2");
  }

  {
    auto r = run(bin +
                 " sweep --mode multimode --schmidt-k 2 --start 0.2 --stop 1.36"
                 " --points 4");
    auto doc = pdc::read_csv_string(r.out);
    bool ok = r.exit_code == 0 && doc.rows.size() == 4;
    for (const auto& row : doc.rows)
      ok = ok && !row.r && row.gain && row.mu &&
           std::abs(*row.schmidt_k - 2.0) < 1e-6;
    check(ok, "multimode sweep fills the profile columns");
    check(run(bin + " sweep --mode multimode --mu 0.99999 --max-modes 10")
                  .exit_code == 2,
          "mode profile overflowing max-modes exits 2");
  }

  {
    fs::path dir = tmp / "fig3";
    auto r = run(bin + " figure fig3 --out-dir \"" + dir.string() + "\"");
    check(r.exit_code == 0, "figure fig3 exits 0");
    std::ifstream f(dir / "fig3_eta1.csv");
    std::stringstream ss;
    ss << f.rdbuf();
    auto doc = pdc::read_csv_string(ss.str());
    double max_p = 0.0;
    for (const auto& row : doc.rows)
      if (row.herald_prob) max_p = std::max(max_p, *row.herald_prob);
    check(doc.rows.size() == 300 && std::abs(max_p - 0.25) < 2e-4,
          "fig3 ideal curve peaks at p = 0.25 up to grid resolution");
    bool noted = false;
    for (const auto& m : doc.metadata)
      noted = noted || contains(m, "reproduction convention");
    check(noted, "figure metadata flags the convention-chosen eta set");
    check(run(bin + " figure fig7").exit_code == 2, "unknown figure exits 2");
  }

  {
    auto r = run(bin + " optimize --f-min 1 --json");
    auto j = nlohmann::json::parse(r.out, nullptr, false);
    bool ok = r.exit_code == 0 && !j.is_discarded();
    ok = ok && std::abs(j["heralding_probability"].get<double>() - 0.25) < 1e-9;
    ok = ok && std::abs(j["fidelity"].get<double>() - 1.0) < 1e-12;
    ok = ok && std::abs(j["r"].get<double>() - 0.8814) < 5e-4;
    ok = ok && j["sources_needed"]["0.99"] == 17;
    check(ok, "optimize --json reports the ideal pnr optimum");
    auto text = run(bin + " optimize --f-min 1");
    check(text.exit_code == 0 &&
              contains(text.out, "sources_needed[0.99] = 17") &&
              contains(text.out, "mean_photons"),
          "optimize prints the scalar summary");
    check(run(bin + " optimize --detector binary_click --f-min 1").exit_code ==
              3,
          "infeasible optimize exits 3");
  }

  {
    auto r = run(bin + " multiplex --nu 0.25 --target 0.99");
    check(r.exit_code == 0 && contains(r.out, "sources_needed = 17"),
          "multiplex solves for the bank size");
    auto p = run(bin + " multiplex --nu 0.25 --sources 17");
    check(p.exit_code == 0 && contains(p.out, "0.992483053181786"),
          "multiplex evaluates a fixed bank");
    check(run(bin + " multiplex --nu 0 --target 0.5").exit_code == 3,
          "unreachable multiplex target exits 3");
    check(run(bin + " multiplex --nu 0.25").exit_code == 2,
          "multiplex without a question exits 2");
    check(run(bin + " multiplex --nu 0.25 --target 0.9 --sources 3")
                  .exit_code == 2,
          "multiplex with two questions exits 2");
  }

  {
    auto plain = run(bin + " sweep --points 8");
    auto env = run("PDC_HERALD_JOBS=3 " + bin + " sweep --points 8");
    check(env.exit_code == 0 && env.out == plain.out,
          "PDC_HERALD_JOBS changes nothing but the thread count");
  }

  fs::remove_all(tmp);
  std::printf("%s\n", failures == 0 ? "ALL OK" : "FAILURES PRESENT");
  return failures == 0 ? 0 : 1;
}
