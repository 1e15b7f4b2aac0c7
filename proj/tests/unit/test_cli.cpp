#include <sstream>

#include "doctest.h"
#include "toricflip/cli.hpp"
#include "toricflip/error.hpp"

using namespace toricflip;

namespace {

struct Outcome {
  int status;
  std::string out, err;
};

Outcome run_job(const JobSpec& job) {
  std::ostringstream out, err;
  int status = run(job, out, err);
  return {status, out.str(), err.str()};
}

JobSpec job_for(const std::string& command) {
  JobSpec job;
  job.command = command;
  return job;
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<HypersurfaceGerm> sample_germs() {
  std::vector<HypersurfaceGerm> gs{HypersurfaceGerm::xyz_t(), HypersurfaceGerm::smooth()};
  for (long r = 2; r <= 9; ++r)
    for (long a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      gs.push_back(HypersurfaceGerm::xy_t(r, a));
      for (int n = 1; n <= 3; ++n) gs.push_back(HypersurfaceGerm::moderate_binomial(r, a, n));
    }
  SparsePoly f(2);
  f.add_term({3, 0}, 1);
  f.add_term({0, 2}, -1);
  f.add_term({1, 1}, Rational(1, 2));
  gs.push_back(HypersurfaceGerm::xy_f(5, 2, f));
  return gs;
}

}  // namespace

TEST_CASE("germ descriptors round-trip through JSON text") {
  for (const auto& g : sample_germs()) {
    Json j = germ_to_json(g);
    HypersurfaceGerm back = germ_from_json(Json::parse(j.dump()));
    CHECK(back == g);
    CHECK(germ_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("shorthand descriptors") {
  CHECK(germ_from_json(Json::parse(R"({"family": "xy_t", "r": 5, "a": 2})")) == HypersurfaceGerm::xy_t(5, 2));
  CHECK(germ_from_json(Json::parse(R"({"family": "moderate_binomial", "r": 4, "a": 1, "n": 3})")) ==
        HypersurfaceGerm::moderate_binomial(4, 1, 3));
  CHECK_THROWS_AS(germ_from_json(Json::parse(R"({"r": 5})")), InvalidInput);
  CHECK_THROWS_AS(germ_from_json(Json::parse(R"({"family": "xy_f_zr_t", "r": 5})")), InvalidInput);
  CHECK_THROWS_AS(germ_from_json(Json::parse("[1, 2]")), InvalidInput);
}

TEST_CASE("large integers survive as strings") {
  Integer big("123456789012345678901234567890");
  CHECK(integer_json(big).is_string());
  CHECK(integer_from_json(integer_json(big)) == big);
  CHECK(integer_json(Integer(-7)).is_number_integer());
  CHECK_THROWS_AS(integer_from_json(Json("12x")), InvalidInput);
}

TEST_CASE("resolution tree JSON and DOT agree with the tree") {
  for (long r = 2; r <= 12; ++r)
    for (long a = 1; a < r; ++a) {
      if (std::gcd(a, r) != 1) continue;
      ResolutionTree t = resolve(HypersurfaceGerm::moderate_binomial(r, a, 2));
      Json j = Json::parse(tree_to_json(t).dump());
      CHECK(j["blowups"].get<std::size_t>() == t.blowup_count());
      CHECK(j["nodes"].size() == t.nodes.size());
      CHECK(germ_from_json(j["root"]) == t.root().germ);
      std::string dot = tree_to_dot(t);
      CHECK(count(dot, "shape=box") == t.blowup_count());
      CHECK(count(dot, "[style=dashed]") == t.nodes.size() - 1);
      for (const auto& n : j["nodes"])
        if (!n["step"].is_null()) CHECK(n["step"]["fiber_mult"] == 1);
    }
}

TEST_CASE("classify through the job runner") {
  JobSpec job = job_for("classify");
  job.family = "xy_t";
  job.r = 3;
  job.a = 1;
  auto o = run_job(job);
  REQUIRE(o.status == 0);
  Json j = Json::parse(o.out);
  CHECK(j["case"] == "2.7.2");
  CHECK(j["moderate"] == "3.4.2");
  CHECK(j["index"] == 3);
  CHECK(o.err.empty());
}

TEST_CASE("error kinds map to exit codes") {
  JobSpec bad = job_for("classify");
  bad.family = "xy_t";
  bad.r = 6;
  bad.a = 2;
  auto o = run_job(bad);
  CHECK(o.status == 1);
  CHECK(Json::parse(o.err)["error"] == "domain_error");

  JobSpec missing = job_for("classify");
  o = run_job(missing);
  CHECK(o.status == 2);
  CHECK(Json::parse(o.err)["error"] == "invalid_input");

  JobSpec unknown = job_for("frobnicate");
  CHECK(run_job(unknown).status == 2);

  JobSpec wrong_format = job_for("hj");
  wrong_format.r = 5;
  wrong_format.a = 2;
  wrong_format.format = "dot";
  CHECK(run_job(wrong_format).status == 2);

  JobSpec not_moderate = job_for("resolve");
  not_moderate.germ = germ_to_json(sample_germs().back());
  o = run_job(not_moderate);
  CHECK(o.status == 1);
  CHECK(o.out.empty());
}

TEST_CASE("hj and reduce outputs") {
  JobSpec hj = job_for("hj");
  hj.r = 5;
  hj.a = 2;
  CHECK(run_job(hj).out == "[3, 2]\n");
  hj.format = "json";
  Json j = Json::parse(run_job(hj).out);
  CHECK(j["determinant"] == 5);
  CHECK(j["negative_definite"] == true);

  JobSpec red = job_for("reduce");
  red.d = 6;
  red.n = {2, 4};
  j = Json::parse(run_job(red).out);
  CHECK(j["e"] == 2);
  CHECK(j["triangulation"]["certificate"]["ok"] == true);

  JobSpec plan = job_for("reduce");
  plan.germ = germ_to_json(sample_germs().back());
  auto o = run_job(plan);
  REQUIRE(o.status == 0);
  j = Json::parse(o.out);
  CHECK(j["certificates"]["reduced_fiber"] == true);
  for (const auto& g : j["moderate_germs"]) CHECK(is_moderate(germ_from_json(g)));
}

TEST_CASE("job files parse into the same job as flags") {
  JobSpec job = job_from_json(Json::parse(R"({"command": "scan", "max_r": 5, "n": [1, 2], "workers": 3})"));
  CHECK(job.command == "scan");
  CHECK(job.max_r == 5);
  CHECK(job.n == std::vector<std::int64_t>{1, 2});
  CHECK(job.workers == 3u);
  CHECK(job_from_json(Json::parse(R"({"command": "reduce", "n": 4})")).n == std::vector<std::int64_t>{4});
  CHECK_THROWS_AS(job_from_json(Json::parse(R"({"r": 3})")), InvalidInput);
  CHECK_THROWS_AS(job_from_json(Json::parse(R"({"command": "hj", "r": "three"})")), InvalidInput);
}

TEST_CASE("scan output does not depend on the worker count") {
  const std::string serial = scan_table(scan(12, {1, 2}, 1));
  CHECK(scan_table(scan(12, {1, 2}, 4)) == serial);
  CHECK(scan_table(scan(12, {1, 2}, 0)) == serial);
  for (const auto& row : scan(12, {1, 2}, 3)) {
    CHECK(row.certified());
    REQUIRE(!row.discrepancies.empty());
    CHECK(row.discrepancies.front() == Rational(1, row.r));
  }
}
