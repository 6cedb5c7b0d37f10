#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "verify.hpp"

using namespace bsdgeo;

TEST_CASE("ke check passes on registered domains and fails on a wrong genus") {
  const auto disc = DomainSpec::disc();
  CheckOptions opts;
  opts.samples = 20;
  const auto r = check_kahler_einstein(disc, opts);
  CHECK(r.passed);
  CHECK(r.max_residual <= 1e-4);
  CHECK(r.statement_id == "ke-einstein");

  // negative control: typeI genus deliberately mis-set by +1
  const auto t22 = DomainSpec::type_i(2, 2);
  CheckOptions small;
  small.samples = 5;
  const auto bad = check_kahler_einstein(t22, small, 1);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_residual >= 10.0 * bad.tolerance);
  CHECK(bad.status == "failed");
}

TEST_CASE("rigidity check") {
  const auto p3 = DomainSpec::polydisc(3, 1.0);
  const auto r = check_rigidity(p3, ko_potential(p3, {}), {});
  CHECK(r.passed);
  CHECK(r.expected == doctest::Approx(6.0));
  CHECK(r.mean_value == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(r.sample_count == 100);

  const auto b2 = DomainSpec::ball(2, 2.0);
  const auto rb = check_rigidity(b2, ko_potential(b2, {}), {});
  CHECK(rb.passed);
  CHECK(rb.mean_value == doctest::Approx(1.5).epsilon(1e-9));

  // negative control: the standard polydisc potential has varying length
  const auto p2 = DomainSpec::polydisc(2, 1.0);
  const auto bad = check_rigidity(p2, standard_potential(p2), {});
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_residual > 10.0 * bad.tolerance);
}

TEST_CASE("lower bound check semantics") {
  // standard ball potential: pointwise law holds, sampled max falls short
  const auto b2 = DomainSpec::ball(2, 1.0);
  const auto r = check_lower_bound(b2, standard_potential(b2), {});
  CHECK(r.passed);
  CHECK(r.status == "inconclusive");
  CHECK(r.max_residual <= 1e-6);
  CHECK(r.mean_value < r.expected);

  // ko potential: equality case, confirmed
  const auto rko = check_lower_bound(b2, ko_potential(b2, {}), {});
  CHECK(rko.passed);
  CHECK(rko.status == "confirmed");
  CHECK(std::abs(rko.mean_value - rko.expected) <= 1e-5);
}

TEST_CASE("disc curvature check") {
  const auto p4 = DomainSpec::polydisc(4, 1.0);
  const MetricField m(p4, standard_potential(p4));
  const auto r = check_disc_curvature(diagonal_disc(4, 3), m, -1.0 / 3.0, {});
  CHECK(r.passed);
  CHECK(r.max_residual <= 1e-6);

  // wrong expected value fails
  const auto bad = check_disc_curvature(diagonal_disc(4, 3), m, -1.0, {});
  CHECK_FALSE(bad.passed);
}

TEST_CASE("gradient identity checks and the perturbed negative control") {
  const auto p2 = DomainSpec::polydisc(2, 1.0);
  const auto good = check_gradient_identities(p2, ko_potential(p2, {}), true, {});
  REQUIRE(good.size() == 2);
  CHECK(good[0].statement_id == "gradient-covariant-identity");
  CHECK(good[0].passed);
  CHECK(good[1].statement_id == "constant-length-identity");
  CHECK(good[1].passed);

  // pluriharmonic perturbation: identity 1 still holds, identity 2 fails
  const auto perturbed =
      potential_from_selector(p2, "ko-perturbed", {}, "0.3,0:2,0");
  const auto mixed = check_gradient_identities(p2, perturbed, true, {});
  REQUIRE(mixed.size() == 2);
  CHECK(mixed[0].passed);
  CHECK_FALSE(mixed[1].passed);
  CHECK(mixed[1].max_residual > 10.0 * mixed[1].tolerance);
}

TEST_CASE("flow foliation check") {
  const auto p2 = DomainSpec::polydisc(2, 1.0);
  const auto rs = check_flow_foliation(p2, ko_potential(p2, {}), {});
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].statement_id == "flow-diagonal-spread");
  CHECK(rs[0].passed);
  CHECK(rs[0].max_residual <= 1e-8);
  CHECK(rs[1].statement_id == "flow-curvature");
  CHECK(rs[1].passed);
  CHECK(rs[1].expected == doctest::Approx(-0.5));  // -2K/L^2 = -K/n
}

TEST_CASE("schwarz-pick and bochner and dc checks") {
  CHECK(check_schwarz_pick({}).passed);

  const auto disc = DomainSpec::disc();
  const auto rb = check_bochner(disc, standard_potential(disc), {});
  CHECK(rb.passed);

  const auto rdc = check_dc_relation(disc, standard_potential(disc), {});
  CHECK(rdc.passed);
  CHECK(rdc.max_residual == 0.0);
  CHECK(rdc.tolerance == 0.0);
}

TEST_CASE("suite runs, sorts, and is reproducible") {
  SuiteConfig cfg;
  cfg.checks = {"rigidity", "schwarz-pick", "dc"};
  cfg.seed = 42;
  const auto a = run_suite(cfg);
  CHECK(a.size() >= 9);  // 6 rigidity + 1 schwarz + 2 dc
  CHECK(all_passed(a));

  // sorted by statement id then domain
  for (std::size_t i = 1; i < a.size(); ++i) {
    CHECK(std::tie(a[i - 1].statement_id, a[i - 1].domain) <=
          std::tie(a[i].statement_id, a[i].domain));
  }

  // reproducible up to runtimes
  const auto b = run_suite(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].statement_id == b[i].statement_id);
    CHECK(a[i].domain == b[i].domain);
    CHECK(a[i].max_residual == b[i].max_residual);
    CHECK(a[i].mean_value == b[i].mean_value);
    CHECK(a[i].seed == b[i].seed);
  }
}

TEST_CASE("suite negative control: only the ke reports fail") {
  SuiteConfig cfg;
  cfg.checks = {"ke", "rigidity"};
  cfg.samples_override = 5;
  cfg.type_i_genus_offset = 1;
  const auto reports = run_suite(cfg);
  for (const auto& r : reports) {
    if (r.statement_id == "ke-einstein" && r.domain.rfind("typeI", 0) == 0) {
      CHECK_FALSE(r.passed);
    } else {
      CHECK(r.passed);
    }
  }
}

TEST_CASE("tolerance overrides apply by statement id") {
  SuiteConfig cfg;
  cfg.checks = {"schwarz-pick"};
  cfg.tolerance_overrides["schwarz-pick"] = 1e-30;  // force a failure
  const auto reports = run_suite(cfg);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].tolerance == 1e-30);
  CHECK_FALSE(reports[0].passed);
}

TEST_CASE("report serialization") {
  CheckReport r;
  r.statement_id = "demo";
  r.domain = "disc";
  r.sample_count = 3;
  r.max_residual = 0.5;
  r.mean_value = 1.25;
  r.expected = 2.0;
  r.tolerance = 1e-3;
  r.passed = false;
  r.status = "failed";
  r.seed = 7;
  r.runtime_ms = 12;

  const auto j = nlohmann::json::parse(report_to_json(r));
  CHECK(j["statement_id"] == "demo");
  CHECK(j["sample_count"] == 3);
  CHECK(j["passed"] == false);
  CHECK(j["seed"] == 7);

  // ndjson: one object per line
  const auto nd = reports_to_ndjson({r, r});
  CHECK(std::count(nd.begin(), nd.end(), '\n') == 2);

  // csv: header + rows, faithful columns
  const auto csv = reports_to_csv({r});
  CHECK(csv.find("statement_id,domain,sample_count,") == 0);
  CHECK(csv.find("demo,disc,3,") != std::string::npos);
}

TEST_CASE("run_config drives single checks and suites") {
  const auto single = run_config(
      R"({"command":"check","check":"rigidity","domain":"polydisc:2","K":1,
          "potential":"ko","samples":20,"seed":7})");
  REQUIRE(single.size() == 1);
  CHECK(single[0].statement_id == "rigidity-constant-length");
  CHECK(single[0].sample_count == 20);
  CHECK(single[0].seed == 7);
  CHECK(single[0].passed);

  const auto empty = run_config(R"({"command":"suite","checks":["nothing-real"]})");
  CHECK(empty.empty());

  CHECK_THROWS_AS(run_config("{not json"), Error);
  CHECK_THROWS_AS(run_config(R"({"command":"check","check":"nope","domain":"disc"})"),
                  Error);
  CHECK_THROWS_AS(run_config(R"({"command":"check","check":"ke"})"), Error);
}

TEST_CASE("perturbation parsing") {
  const auto coeffs = parse_perturbation("0.1,0:2,0;0,-1:1,1", 2);
  REQUIRE(coeffs.size() == 2);
  CHECK(coeffs[0].first == std::vector<int>{2, 0});
  CHECK(coeffs[0].second == Complex(0.1, 0.0));
  CHECK(coeffs[1].first == std::vector<int>{1, 1});
  CHECK(coeffs[1].second == Complex(0.0, -1.0));

  CHECK_THROWS_AS(parse_perturbation("nonsense", 2), Error);
  CHECK_THROWS_AS(parse_perturbation("0.1,0:2", 2), Error);     // missing exponent
  CHECK_THROWS_AS(parse_perturbation("0.1,0:2,-1", 2), Error);  // negative exponent
}
