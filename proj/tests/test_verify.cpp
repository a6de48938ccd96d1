#include "tropwdvv/verify.hpp"

#include <doctest.h>

using namespace tropwdvv;
using Cells = std::map<std::pair<int, int>, CountValue>;

TEST_CASE("published table reproduces exactly") {
  MemoTable memo;
  const auto report = verify_paper_tables(PaperTable::published(), memo);
  CHECK(report.checks.size() == 40);
  CHECK(report.passed() == 40);
  CHECK(report.all_passed());
  CHECK(PaperTable::published().at(8, 4) == CountValue("397306608405248"));
  CHECK(PaperTable::published().at(5, 3) == 1531200);
  CHECK_THROWS_AS(PaperTable::published().at(9, 1), std::out_of_range);
}

TEST_CASE("a corrupted table value is pinpointed") {
  auto rows = PaperTable::published().rows();
  rows[{6, 2}] += 1;
  MemoTable memo;
  const auto report = verify_paper_tables(PaperTable(rows), memo);
  REQUIRE(report.failed() == 1);
  for (const auto& c : report.checks) {
    if (!c.pass) {
      CHECK(c.name == "T1 d=06 l=02");
      CHECK(c.actual == CountValue("266578272"));
    }
  }
}

TEST_CASE("incomplete or oversized tables are rejected") {
  auto rows = PaperTable::published().rows();
  rows.erase({3, 3});
  CHECK_THROWS_AS(PaperTable{rows}, std::invalid_argument);
  CHECK_THROWS_AS(PaperTable{Cells{}}, std::invalid_argument);
  rows = PaperTable::published().rows();
  rows[{9, 1}] = 0;
  CHECK_THROWS_AS(PaperTable{rows}, std::invalid_argument);
}

TEST_CASE("table verification is deterministic") {
  MemoTable a, b;
  const auto first = verify_paper_tables(PaperTable::published(), a);
  const auto second = verify_paper_tables(PaperTable::published(), b);
  REQUIRE(first.checks.size() == second.checks.size());
  for (std::size_t i = 0; i < first.checks.size(); ++i) {
    CHECK(first.checks[i].name == second.checks[i].name);
    CHECK(first.checks[i].actual == second.checks[i].actual);
  }
}

TEST_CASE("WDVV balance suite") {
  MemoTable memo;
  const auto full = verify_wdvv_balance(12, 6, memo);
  CHECK(full.checks.size() == 72);
  CHECK(full.all_passed());
  const auto trivial = verify_wdvv_balance(1, 1, memo);
  REQUIRE(trivial.checks.size() == 1);
  CHECK(trivial.checks[0].expected == 0);
  CHECK(trivial.checks[0].actual == 0);
  const auto three = verify_wdvv_balance(3, 1, memo);
  CHECK(three.checks.back().expected == 40);
  CHECK(three.checks.back().actual == 40);
  CHECK_THROWS_AS(verify_wdvv_balance(0, 1, memo), std::invalid_argument);
}

TEST_CASE("quadratic fit in l") {
  MemoTable memo;
  auto fit = fit_quadratic_in_l(2, memo);
  CHECK(fit.alpha == 1);
  CHECK(fit.beta == 1);
  CHECK(fit(3) == 12);
  CHECK(fit(4) == 20);
  CHECK(fit(5) == 30);
  fit = fit_quadratic_in_l(3, memo);
  CHECK(fit.alpha == 12);
  CHECK(fit.beta == 24);
  CHECK(fit(5) == 420);
  CHECK_THROWS_AS(fit_quadratic_in_l(1, memo), std::invalid_argument);
  for (int d = 2; d <= 10; ++d) CHECK(verify_quadratic_in_l(d, 8, memo).all_passed());
  CHECK_THROWS_AS(verify_quadratic_in_l(2, 2, memo), std::invalid_argument);
}

TEST_CASE("oracle suite") {
  MemoTable memo;
  const auto lines = verify_oracle(1, 3, {}, memo);
  CHECK(lines.checks.size() == 3);
  for (const auto& c : lines.checks) CHECK(c.actual == 1);
  OracleOptions options;
  options.seed = 9;
  options.jobs = 2;
  const auto conics = verify_oracle(2, 2, options, memo);
  CHECK(conics.checks.size() == 2);
  CHECK(conics.all_passed());
  CHECK_THROWS_AS(verify_oracle(2, 0, {}, memo), std::invalid_argument);
  CHECK_THROWS_AS(verify_oracle(3, 1, {}, memo), LongRunningRefused);
}

TEST_CASE("oracle results do not depend on the seed") {
  for (std::uint64_t seed : {2u, 31u, 977u}) {
    OracleOptions options;
    options.seed = seed;
    CHECK(verify_oracle(1, 2, options).all_passed());
  }
}

TEST_CASE("geometric Bezout and multiplicity invariance suites") {
  const auto bezout = verify_bezout(2, 4);
  CHECK(bezout.checks.size() == 3);
  CHECK(bezout.all_passed());
  const auto invariance = verify_multiplicity_invariance(120, 8);
  CHECK(invariance.checks.size() == 120);
  CHECK(invariance.all_passed());
  CHECK_THROWS_AS(verify_bezout(3, 1), std::invalid_argument);
}

TEST_CASE("report JSON and merging") {
  VerificationReport a{"a", {}}, b{"b", {}};
  a.add("zeta", 1, 1);
  b.add("alpha", CountValue("123456789012345678901234567890"), 2);
  const auto merged = VerificationReport::merge("all", {a, b});
  REQUIRE(merged.checks.size() == 2);
  CHECK(merged.checks[0].name == "alpha");
  CHECK(merged.failed() == 1);
  const auto json = merged.to_json();
  CHECK(json["suite"] == "all");
  CHECK(json["failed"] == 1);
  CHECK(json["checks"][0]["expected"] == "123456789012345678901234567890");
  CHECK(parse_decimal(json["checks"][0]["expected"].get<std::string>()) == merged.checks[0].expected);
  CHECK(json["checks"][0]["pass"] == false);
}
