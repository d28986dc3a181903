#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "subprocess.hpp"

using namespace testsupport;

namespace {

const std::string kP1 = R"({"labels":["a1","a2","a3","a4"],"probs":[0.1,0.2,0.3,0.4]})";

std::string cli() { return std::string(MIMTILT_CLI_PATH); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("compute") {
  TempDir dir;
  const std::string dist = dir.write("p1.json", kP1);

  SUBCASE("json output carries the neutral tilt") {
    const RunResult res =
        run_command(cli() + " compute --dist " + dist + " --omega 0 --json");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.output);
    CHECK(std::abs(doc["beta"].get<double>() - 0.3) <= 1e-12);
    CHECK(std::abs(doc["mim_total"].get<double>() - 1.0) <= 1e-12);
    CHECK(doc["kl_to_source"].get<double>() <= 1e-12);
    const auto utility = doc["utility"].get<std::vector<double>>();
    CHECK(std::abs(utility[2] - 0.3) <= 1e-12);
  }

  SUBCASE("the p=0.3 atom dominates at omega 10/3") {
    const RunResult res =
        run_command(cli() + " compute --dist " + dist + " --omega 3.3333333333333335 --json");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.output);
    const auto utility = doc["utility"].get<std::vector<double>>();
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < utility.size(); ++i)
      if (utility[i] > utility[argmax]) argmax = i;
    CHECK(doc["labels"][argmax].get<std::string>() == "a3");
  }

  SUBCASE("text output names the quantities") {
    const RunResult res = run_command(cli() + " compute --dist " + dist + " --omega 1");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("beta: ") != std::string::npos);
    CHECK(res.output.find("mim_total: ") != std::string::npos);
    CHECK(res.output.find("utility:") != std::string::npos);
  }

  SUBCASE("overflowed totals fall back to the log value") {
    const RunResult res = run_command(cli() + " compute --dist " + dist + " --omega 1e6");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("not representable") != std::string::npos);
  }

  SUBCASE("malformed input exits 2 naming the invariant") {
    const std::string bad = dir.write("bad.json", R"({"labels":["a","b"],"probs":[0.6,0.6]})");
    const RunResult res = run_command(cli() + " compute --dist " + bad + " --omega 0");
    CHECK(res.exit_code == 2);
    CHECK(res.output.find("NotNormalized") != std::string::npos);

    const std::string garbage = dir.write("garbage.json", "not json at all");
    CHECK(run_command(cli() + " compute --dist " + garbage + " --omega 0").exit_code == 2);
  }
}

TEST_CASE("solve") {
  TempDir dir;
  const std::string dist = dir.write("p1.json", kP1);

  SUBCASE("equality mode at the neutral budget") {
    const RunResult res =
        run_command(cli() + " solve --dist " + dist + " --beta 0.3 --mode equality --json");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.output);
    CHECK(std::abs(doc["omega"].get<double>()) <= 1e-9);
  }

  SUBCASE("inequality mode reports the inactive constraint") {
    const RunResult res =
        run_command(cli() + " solve --dist " + dist + " --beta 0.35 --mode inequality");
    REQUIRE(res.exit_code == 0);
    CHECK(res.output.find("constraint inactive") != std::string::npos);
    CHECK(res.output.find("omega: 0\n") != std::string::npos);
  }

  SUBCASE("budgets outside the range exit 3 and print the range") {
    const RunResult res =
        run_command(cli() + " solve --dist " + dist + " --beta 0.05 --mode equality");
    CHECK(res.exit_code == 3);
    CHECK(res.output.find("[0.1, 0.4]") != std::string::npos);
  }
}

TEST_CASE("sweep") {
  TempDir dir;
  const std::string dist = dir.write("p1.json", kP1);

  SUBCASE("omega sweep reproduces the budget curve") {
    const std::string out = dir.path("omega.csv");
    const RunResult res = run_command(cli() + " sweep --dist " + dist +
                                      " --axis omega --range -10:10:0.1 --out " + out);
    REQUIRE(res.exit_code == 0);
    const auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 202);
    CHECK(lines[0] == "omega,beta,a1,a2,a3,a4");

    // beta column strictly decreasing, neutral row at 0.3
    double previous = 1.0;
    bool saw_neutral = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto fields = split_csv(lines[i]);
      REQUIRE(fields.size() == 6);
      const double omega = std::stod(fields[0]);
      const double beta = std::stod(fields[1]);
      CHECK(beta < previous);
      previous = beta;
      if (std::abs(omega) <= 1e-12) {
        saw_neutral = true;
        CHECK(std::abs(beta - 0.3) <= 1e-12);
      }
    }
    CHECK(saw_neutral);
  }

  SUBCASE("sweeps are byte-identical across runs") {
    const std::string out1 = dir.path("a.csv");
    const std::string out2 = dir.path("b.csv");
    REQUIRE(run_command(cli() + " sweep --dist " + dist +
                        " --axis omega --range -3:3:0.05 --out " + out1)
                .exit_code == 0);
    REQUIRE(run_command(cli() + " sweep --dist " + dist +
                        " --axis omega --range -3:3:0.05 --out " + out2)
                .exit_code == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(!slurp(out1).empty());
  }

  SUBCASE("beta sweep walks the budget axis") {
    const std::string out = dir.path("beta.csv");
    const RunResult res = run_command(cli() + " sweep --dist " + dist +
                                      " --axis beta --range 0.11:0.39:0.01 --out " + out);
    REQUIRE(res.exit_code == 0);
    const auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 30);
    double previous_u1 = 2.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const double u1 = std::stod(split_csv(lines[i])[2]);
      CHECK(u1 < previous_u1);
      previous_u1 = u1;
    }
  }

  SUBCASE("infeasible ranges exit 3") {
    CHECK(run_command(cli() + " sweep --dist " + dist +
                      " --axis beta --range 0.0:0.5:0.1 --out " + dir.path("x.csv"))
              .exit_code == 3);
  }

  SUBCASE("bad arguments exit 3") {
    CHECK(run_command(cli() + " sweep --dist " + dist +
                      " --axis sideways --range 0:1:0.1 --out " + dir.path("x.csv"))
              .exit_code == 3);
    CHECK(run_command(cli() + " sweep --dist " + dist + " --axis omega --range 0:1 --out " +
                      dir.path("x.csv"))
              .exit_code == 3);
  }
}

TEST_CASE("verify") {
  TempDir dir;
  const std::string dist = dir.write("p1.json", kP1);

  SUBCASE("all checks pass on the worked example") {
    const RunResult res =
        run_command(cli() + " verify --dist " + dist + " --beta 0.2 --grid-step 0.001");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("FAIL") == std::string::npos);
    std::size_t passes = 0;
    for (const auto& line : lines_of(res.output))
      if (line.rfind("PASS", 0) == 0) ++passes;
    CHECK(passes >= 4);
  }

  SUBCASE("three-atom inputs include the Sanov check") {
    const std::string tri =
        dir.write("tri.json", R"({"labels":["a","b","c"],"probs":[0.2,0.3,0.5]})");
    const RunResult res = run_command(cli() + " verify --dist " + tri + " --beta 0.3 --n 8");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("Sanov") != std::string::npos);
  }

  SUBCASE("alphabets beyond the oracle cap exit 3") {
    const std::string five = dir.write(
        "five.json",
        R"({"labels":["a","b","c","d","e"],"probs":[0.1,0.15,0.2,0.25,0.3]})");
    CHECK(run_command(cli() + " verify --dist " + five + " --beta 0.2").exit_code == 3);
  }
}

TEST_CASE("ingest") {
  TempDir dir;

  SUBCASE("counts become a distribution on stdout") {
    const std::string csv = dir.write("counts.csv", "label,count\na1,1\na2,2\na3,3\na4,4\n");
    const RunResult res = run_command(cli() + " ingest --counts " + csv);
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(lines_of(res.output)[0]);
    const auto probs = doc["probs"].get<std::vector<double>>();
    CHECK(std::abs(probs[0] - 0.1) <= 1e-15);
    CHECK(std::abs(probs[3] - 0.4) <= 1e-15);
  }

  SUBCASE("a usage file adds the budget report") {
    const std::string src = dir.write("src.csv", "label,count\na1,1\na2,2\na3,3\na4,4\n");
    const std::string use = dir.write("use.csv", "label,count\na1,1\na2,2\na3,3\na4,4\n");
    const RunResult res =
        run_command(cli() + " ingest --counts " + src + " --usage " + use);
    REQUIRE(res.exit_code == 0);
    const auto lines = lines_of(res.output);
    bool found = false;
    for (const auto& line : lines) {
      if (line.rfind("beta = ", 0) == 0) {
        found = true;
        CHECK(std::abs(std::stod(line.substr(7)) - 0.3) <= 1e-12);
      }
    }
    CHECK(found);
  }

  SUBCASE("bad input exits 2") {
    CHECK(run_command(cli() + " ingest --counts " + dir.write("empty.csv", "")).exit_code ==
          2);
    CHECK(run_command(cli() + " ingest --counts " +
                      dir.write("noheader.csv", "a,1\nb,2\n"))
              .exit_code == 2);
  }
}
