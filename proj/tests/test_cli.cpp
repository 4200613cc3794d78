// Black-box checks of the installed CLI: spawns the real binary, parses the
// CSV it prints, and asserts on exit codes.  CFM_CLI_PATH comes from the
// build so the test always runs the binary it was built next to.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string("'") + CFM_CLI_PATH + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("tabulate prints the d,T,g table") {
  RunResult r = run_cli("tabulate --x 10");
  CHECK(r.exit_code == 0);
  REQUIRE(!r.out.empty());
  CHECK(r.out.back() == '\n');
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "d,T,g");
  CHECK(lines[1] == "1,0,0");
  CHECK(lines[2] == "2,1,1");
  CHECK(lines[7] == "7,4,4");
  CHECK(lines[10] == "10,1,4");
}

TEST_CASE("tabulate output is identical for every chunk/shard choice") {
  RunResult base = run_cli("tabulate --x 2000 --chunk-size 1024 --shards 1");
  RunResult alt1 = run_cli("tabulate --x 2000 --chunk-size 128 --shards 3");
  RunResult alt2 = run_cli("tabulate --x 2000 --chunk-size 333 --shards 8");
  CHECK(base.exit_code == 0);
  CHECK(base.out == alt1.out);
  CHECK(base.out == alt2.out);
}

TEST_CASE("moments reports sums and prime columns") {
  RunResult r = run_cli("moments --x 100 --r 1,2");
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "x_lo,x_hi,r,sum_T_r,sum_g_r,prime_count,prime_sum_T_r,prime_sum_g_r");
  auto row1 = fields_of(lines[1]);
  REQUIRE(row1.size() == 8);
  CHECK(row1[0] == "0");
  CHECK(row1[1] == "100");
  CHECK(row1[2] == "1");
  CHECK(row1[5] == "25");  // pi(100)
  auto row2 = fields_of(lines[2]);
  CHECK(row2[2] == "2");
  CHECK(row2[5] == "25");

  // an exclusive lower bound drops exactly the low range
  RunResult band = run_cli("moments --x 100 --x-lo 50 --r 1");
  auto band_row = fields_of(lines_of(band.out)[1]);
  CHECK(band_row[0] == "50");
  CHECK(std::stoull(band_row[3]) < std::stoull(row1[3]));
}

TEST_CASE("deviations counts threshold crossers exactly") {
  RunResult r = run_cli("deviations --x 1000 --alpha 1/1000000");
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "x,alpha,count,bound_first,bound_second");
  auto row = fields_of(lines[1]);
  REQUIRE(row.size() == 5);
  CHECK(row[0] == "1000");
  CHECK(row[1] == "1/1000000");
  CHECK(row[2] == "987");

  RunResult multi = run_cli("deviations --x 1000 --alpha 2 --alpha 4/1");
  auto mlines = lines_of(multi.out);
  REQUIRE(mlines.size() == 3);
  CHECK(fields_of(mlines[1])[1] == "2/1");
  CHECK(fields_of(mlines[2])[1] == "4/1");

  // threshold must stay exact, so float spellings are rejected outright
  RunResult bad = run_cli("deviations --x 1000 --alpha 0.5");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("constants lists closed forms and quadrature cross-checks") {
  RunResult r = run_cli("constants");
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 15);  // header + 11 constants + 3 quadrature rows
  CHECK(lines[0] == "name,closed_form,value");
  bool saw_c1 = false, saw_quad = false, saw_zeta3 = false;
  for (const auto& line : lines) {
    if (line.rfind("c1,(4/3)*log(2),0.924196", 0) == 0) saw_c1 = true;
    if (line.rfind("C_quadrature,adaptive_quadrature,", 0) == 0) saw_quad = true;
    if (line.rfind("zeta3,zeta(3),1.2020569", 0) == 0) saw_zeta3 = true;
  }
  CHECK(saw_c1);
  CHECK(saw_quad);
  CHECK(saw_zeta3);
}

TEST_CASE("verify passes everywhere it is expected to") {
  RunResult r = run_cli("verify --x 500");
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 12);  // header + 5 fixed rows + 2 per default alpha
  CHECK(lines[0] == "check,x,measured,lower,upper,pass");
  for (size_t i = 1; i < lines.size(); ++i) {
    CHECK(lines[i].size() >= 2);
    CHECK(lines[i].substr(lines[i].size() - 2) == ",1");
  }
  CHECK(fields_of(lines[1])[0] == "g_mean_theta");
}

TEST_CASE("figures emits the sampled ratio curves") {
  RunResult r = run_cli("figures --x 200 --step 50");
  CHECK(r.exit_code == 0);
  auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "x,ratio_mean,ratio_second");
  CHECK(fields_of(lines[1])[0] == "50");
  CHECK(fields_of(lines[4])[0] == "200");

  RunResult primes = run_cli("figures --x 150 --step 50 --primes");
  CHECK(primes.exit_code == 0);
  auto plines = lines_of(primes.out);
  REQUIRE(plines.size() == 4);
  for (size_t i = 1; i < plines.size(); ++i) {
    auto row = fields_of(plines[i]);
    CHECK(std::stod(row[1]) > 0.0);
    CHECK(std::stod(row[2]) > 0.0);
  }
}

TEST_CASE("--out writes the same bytes that stdout would get") {
  std::string path = "/tmp/cfm_cli_out_test.csv";
  std::remove(path.c_str());
  RunResult direct = run_cli("tabulate --x 50");
  RunResult filed = run_cli("tabulate --x 50 --out " + path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.is_open());
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == direct.out);
  std::remove(path.c_str());
}

TEST_CASE("exit codes distinguish usage errors from resource guards") {
  CHECK(run_cli("tabulate --x 0").exit_code == 2);
  CHECK(run_cli("tabulate").exit_code == 2);            // missing required --x
  CHECK(run_cli("nonsense").exit_code == 2);            // unknown subcommand
  CHECK(run_cli("moments --x 10 --r 7").exit_code == 2);
  CHECK(run_cli("tabulate --x 10 --chunk-size 67108865").exit_code == 4);
  CHECK(run_cli("deviations --x 1099511627776 --alpha 2").exit_code == 4);
}
