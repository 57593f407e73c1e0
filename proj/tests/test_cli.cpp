// End-to-end checks of the command-line tool.  argv[1] is the path to
// the built binary.
#define DOCTEST_CONFIG_IMPLEMENT
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

std::string g_cli;

int run(const std::string& args) {
  const int rc = std::system((g_cli + " " + args).c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

const char* kConfig = R"(
[process]
kind = brownian
dimension = 2
[domain]
shape = ball
radius = 1.0
[experiment]
t_max = 0.02
t_min = 0.002
n_t = 3
n_paths = 8000
seed = 5
)";

}  // namespace

TEST_CASE("validate accepts a good config and rejects a bad one") {
  write("cli_cfg.ini", kConfig);
  CHECK(run("validate --config cli_cfg.ini > /dev/null 2>&1") == 0);
  write("cli_bad.ini", "[process]\nkind = stable\nalpha = 0.5\n");
  CHECK(run("validate --config cli_bad.ini > /dev/null 2>&1") == 2);
  CHECK(run("validate --config no_such_file.ini > /dev/null 2>&1") == 2);
  CHECK(run("definitely-not-a-command > /dev/null 2>&1") == 2);
}

TEST_CASE("scan emits the documented schema and reruns byte-identically") {
  write("cli_cfg.ini", kConfig);
  const int rc1 =
      run("scan --config cli_cfg.ini --out cli_a.csv 2> /dev/null");
  const int rc2 =
      run("scan --config cli_cfg.ini --out cli_b.csv 2> /dev/null");
  CHECK(rc1 == rc2);
  CHECK((rc1 == 0 || rc1 == 1));  // flagged rows are allowed at this budget
  const std::string a = slurp("cli_a.csv");
  CHECK(a == slurp("cli_b.csv"));
  CHECK(a.rfind("t,psi_inv,q_hat,q_se,loss,loss_se,scaled_loss,scaled_se,"
                "target,rel_gap,n_paths,n_steps,flagged\n",
                0) == 0);
  // header + three data rows
  int lines = 0;
  for (char c : a) lines += c == '\n';
  CHECK(lines == 4);
}

TEST_CASE("worker count does not change the bytes") {
  write("cli_cfg.ini", kConfig);
  run("scan --config cli_cfg.ini --workers 1 --out cli_w1.csv 2> /dev/null");
  run("scan --config cli_cfg.ini --workers 3 --out cli_w3.csv 2> /dev/null");
  CHECK(slurp("cli_w1.csv") == slurp("cli_w3.csv"));
}

TEST_CASE("seed override changes results; same seed repeats them") {
  write("cli_cfg.ini", kConfig);
  run("scan --config cli_cfg.ini --seed 9 --out cli_s9.csv 2> /dev/null");
  run("scan --config cli_cfg.ini --seed 10 --out cli_s10.csv 2> /dev/null");
  run("scan --config cli_cfg.ini --seed 9 --out cli_s9b.csv 2> /dev/null");
  CHECK(slurp("cli_s9.csv") == slurp("cli_s9b.csv"));
  CHECK(slurp("cli_s9.csv") != slurp("cli_s10.csv"));
}

TEST_CASE("mean-sup emits alpha,value,se,method") {
  CHECK(run("mean-sup --alpha 2.0 --out cli_ms.csv") == 0);
  const std::string out = slurp("cli_ms.csv");
  CHECK(out.rfind("alpha,value,se,method\n", 0) == 0);
  CHECK(out.find("closed-form") != std::string::npos);
  CHECK(out.find("1.128379") != std::string::npos);
}

TEST_CASE("svg output is well-formed") {
  write("cli_cfg.ini", kConfig);
  run("scan --config cli_cfg.ini --out cli_p.csv --svg cli_p.svg 2> "
      "/dev/null");
  const std::string svg = slurp("cli_p.svg");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);  // target rule
  CHECK(svg.find("</svg>") != std::string::npos);
  // ASCII content only, every tag closed (crude XML sanity).
  size_t open = 0, close = 0;
  for (size_t i = 0; i + 1 < svg.size(); ++i) {
    if (svg[i] == '<' && svg[i + 1] != '/') ++open;
    if (svg[i] == '<' && svg[i + 1] == '/') ++close;
  }
  CHECK(open > close);  // self-closing tags outnumber paired ones

  // The standalone plot subcommand renders any CSV.
  CHECK(run("plot --in cli_p.csv --svg cli_p2.svg --y scaled_loss --target "
            "7.09") == 0);
  const std::string svg2 = slurp("cli_p2.svg");
  CHECK(svg2.rfind("<?xml", 0) == 0);
  CHECK(svg2.find("</svg>") != std::string::npos);
}

TEST_CASE("budget multiplier shrinks the run") {
  write("cli_cfg.ini", kConfig);
  run("scan --config cli_cfg.ini --budget-multiplier 0.25 --out cli_m.csv "
      "2> /dev/null");
  const std::string out = slurp("cli_m.csv");
  CHECK(out.find(",2000,") != std::string::npos);  // 8000 * 0.25 paths
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli>\n");
    return 1;
  }
  g_cli = argv[1];
  doctest::Context ctx;
  return ctx.run();
}
