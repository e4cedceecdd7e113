#include <doctest.h>

#include <json.hpp>

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rellich-lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = rellich::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json results(const Run& r) { return nlohmann::json::parse(r.out)["results"]; }

// key,value section of CSV output as a map.
std::map<std::string, std::string> csv_pairs(const std::string& text) {
  std::map<std::string, std::string> m;
  std::istringstream in(text);
  std::string line;
  bool in_pairs = false;
  while (std::getline(in, line)) {
    if (line == "key,value") {
      in_pairs = true;
      continue;
    }
    if (!in_pairs) continue;
    const auto c = line.find(',');
    m[line.substr(0, c)] = line.substr(c + 1);
  }
  return m;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("constants") {
    const Run r = run({"constants", "--n", "3", "--gamma", "0"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["command"] == "constants");
    CHECK(j["versions"].is_string());
    CHECK(j["seed"].is_null());
    CHECK(j["results"]["hardy"]["value"] == 0.25);
    CHECK(j["results"]["rellich"]["value"] == 0.5625);
    CHECK(j["results"]["hardy-rellich"]["value"].get<double>() == doctest::Approx(25.0 / 36.0));
    CHECK(j["results"]["hardy-rellich"]["argmin_j"] == 1);
    CHECK(results(run({"constants", "--n", "2", "--gamma", "2", "--which", "rellich"}))["rellich"]["value"] == 0.0);
    CHECK(results(run({"constants", "--n", "5", "--gamma", "0", "--which", "alpha:1"}))["alpha:1"]["value"].get<double>() ==
          doctest::Approx(5.25 * 5.25 / 4.25));
    CHECK(run({"constants", "--n", "1", "--gamma", "0"}).code == 2);
    CHECK(run({"constants", "--gamma", "0"}).code == 2);
    CHECK(run({"constants", "--n", "3", "--gamma", "0", "--which", "bogus"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
  }

  TEST_CASE("verify") {
    Run r = run({"verify", "--ineq", "3.44", "--n", "5", "--gamma", "0", "--profile", "bump:1,3", "--mode", "0"});
    CHECK(r.code == 0);
    r = run({"verify", "--ineq", "3.89", "--n", "3", "--gamma", "0", "--s", "-0.5", "--profile", "bump:1,3", "--mode", "1"});
    CHECK(r.code == 0);
    r = run({"verify", "--ineq", "2.2", "--n", "5", "--gamma", "0", "--alpha", "1", "--beta", "0", "--profile", "bump:1,3", "--mode", "0"});
    CHECK(results(r)["cauchy_valid"] == false);
    CHECK(results(r)["preconditions_met"] == false);
    r = run({"verify", "--ineq", "3.44", "--n", "5", "--gamma", "0", "--profile", "poly:7,3,0.5,2", "--mode", "0,2", "--profile2", "bump:1,2"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["seed"] == 7);
    CHECK(run({"verify", "--ineq", "3.44", "--n", "5", "--gamma", "0", "--profile", "bump:1", "--mode", "0"}).code == 2);
    CHECK(run({"verify", "--ineq", "3.44", "--n", "5", "--gamma", "0", "--profile", "bump:3,1", "--mode", "0"}).code == 2);
    CHECK(run({"verify", "--ineq", "3.44", "--n", "5", "--gamma", "0", "--profile", "bump:1,3", "--mode", "0,0"}).code == 2);
    CHECK(run({"verify", "--ineq", "1.0", "--n", "5", "--gamma", "0", "--profile", "bump:1,3"}).code == 2);
  }

  TEST_CASE("violations exit with 1") {
    // A constant beyond the sharp one: the trial profile for eps = 2^-3 gives HR quotient ~1088, far above 6.25,
    // so instead push the Schmincke form outside its range with a very negative s.
    const Run r = run({"verify", "--ineq", "2.24", "--n", "5", "--gamma", "0", "--s", "-400", "--profile", "bump:1,1.05", "--mode", "0"});
    CHECK(results(r)["preconditions_met"] == false);
    CHECK(r.code == (results(r)["holds"] == true ? 0 : 1));
  }

  TEST_CASE("sharpness") {
    Run r = run({"sharpness", "--n", "5", "--gamma", "0", "--j0", "0", "--eps-steps", "3"});
    CHECK(r.code == 0);
    auto j = results(r);
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][1]["epsilon"] == 0.25);
    CHECK(j["limit"] == 6.25);
    CHECK(j["gap_kind"] == "relative");
    r = run({"sharpness", "--n", "3", "--gamma", "1", "--j0", "0", "--target", "A"});
    CHECK(r.code == 3);
    CHECK(r.err.find("(3, 1)") != std::string::npos);
    r = run({"sharpness", "--n", "2", "--gamma", "2", "--j0", "0", "--target", "C", "--eps-steps", "2"});
    CHECK(r.code == 0);
    j = results(r);
    CHECK(j["limit"] == 0.0);
    CHECK(j["gap_kind"] == "absolute");
    CHECK(j["final_gap"] == j["rows"][1]["rellich_q"]);
  }

  TEST_CASE("oracle") {
    const Run r = run({"oracle", "--n", "5", "--gamma", "0", "--j", "0", "--quotient", "hardy-rellich"});
    CHECK(r.code == 0);
    const auto j = results(r);
    CHECK(j["theoretical"] == 6.25);
    CHECK(j["gap"].get<double>() > 0.0);
    CHECK(j["gap"].get<double>() < 0.02);
    CHECK(run({"oracle", "--n", "5", "--gamma", "0", "--j", "0", "--points", "10"}).code == 2);
  }

  TEST_CASE("schmincke") {
    auto j = results(run({"schmincke", "--n", "4", "--gamma", "0", "--variant", "sec3"}));
    CHECK(j["s_min"] == -3.0);
    CHECK(j["case"] == "case_ii");
    j = results(run({"schmincke", "--n", "5", "--gamma", "0", "--variant", "sec2", "--s", "0"}));
    CHECK(j["rhs_constant"] == 25.0 / 16.0);
    CHECK(j["admissible"] == true);
    j = results(run({"schmincke", "--n", "3", "--gamma", "0", "--variant", "sec3", "--s", "-0.6"}));
    CHECK(j["admissible"] == false);
    CHECK(j["K"].get<double>() == doctest::Approx((4 * -0.6 + 25.0 / 9.0) / 16.0));
    j = results(run({"schmincke", "--n", "3", "--gamma", "0", "--variant", "sec3", "--s", "-0.9"}));
    CHECK(j["K"].is_null());
  }

  TEST_CASE("logrefine") {
    Run r = run({"logrefine", "--ineq", "3.48a", "--n", "4", "--gamma", "0", "--N", "1", "--R", "1", "--eta", "auto",
                 "--profile", "bump:0.2,0.8", "--mode", "0"});
    CHECK(r.code == 0);
    r = run({"logrefine", "--ineq", "3.48a", "--n", "4", "--gamma", "0", "--N", "2", "--eta", "auto", "--profile", "bump:0.2,0.8"});
    CHECK(results(r)["eta"].get<double>() == doctest::Approx(2.718281828459045).epsilon(1e-15));
    r = run({"logrefine", "--ineq", "3.48a", "--n", "4", "--gamma", "0", "--profile", "bump:0.2,1.5"});
    CHECK(r.code == 2);
    r = run({"logrefine", "--ineq", "4.31", "--n", "4", "--gamma", "0", "--N", "2", "--eta", "2", "--profile", "bump:0.2,0.8"});
    CHECK(r.code == 2);
  }

  TEST_CASE("csv and json agree to full precision") {
    const std::vector<std::string> base = {"verify", "--ineq", "3.69a", "--n", "4", "--gamma", "0.5", "--profile", "poly:3,4,0.3,2", "--mode", "1"};
    const auto j = results(run(base));
    auto csv_args = base;
    csv_args.insert(csv_args.end(), {"--format", "csv"});
    const auto m = csv_pairs(run(csv_args).out);
    for (const char* k : {"lhs", "rhs", "margin", "ratio", "constant_used"})
      CHECK(std::stod(m.at(k)) == j[k].get<double>());
    const auto s = results(run({"sharpness", "--n", "5", "--gamma", "0", "--eps-steps", "2"}));
    const std::string table = run({"sharpness", "--n", "5", "--gamma", "0", "--eps-steps", "2", "--format", "csv"}).out;
    std::istringstream in(table);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "epsilon,hardy_rellich_q,rellich_q");
    const auto c1 = row.find(','), c2 = row.find(',', c1 + 1);
    CHECK(std::stod(row.substr(c1 + 1, c2 - c1 - 1)) == s["rows"][0]["hardy_rellich_q"].get<double>());
  }

  TEST_CASE("repeated runs are byte-identical") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"constants", "--n", "7", "--gamma", "-1.25", "--which", "hardy,rellich,hardy-rellich,alpha:3"},
             {"verify", "--ineq", "3.1", "--n", "6", "--gamma", "1", "--alpha", "0.3", "--beta", "-2", "--tau", "-0.5",
              "--profile", "poly:19,6,0.2,3", "--mode", "1,4", "--profile2", "poly:20,2,1,2"},
             {"sharpness", "--n", "4", "--gamma", "2", "--eps-steps", "3", "--target", "C"},
             {"oracle", "--n", "3", "--gamma", "-1", "--j", "2", "--quotient", "rellich", "--points", "600"},
             {"schmincke", "--n", "6", "--gamma", "1", "--variant", "sec3", "--s", "2"},
             {"logrefine", "--ineq", "4.31", "--n", "5", "--gamma", "0", "--N", "2", "--profile", "poly:5,3,0.1,0.9", "--mode", "2"}}) {
      const Run a = run(args), b = run(args);
      CHECK(a.out == b.out);
      CHECK(a.code == b.code);
      CHECK_FALSE(a.out.empty());
    }
  }
}
