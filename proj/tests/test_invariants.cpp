#include "tropwdvv/invariants.hpp"

#include <doctest.h>

#include <map>
#include <thread>
#include <vector>

using namespace tropwdvv;

namespace {

// Pascal's triangle, independent of the library's binomial.
std::vector<std::vector<CountValue>> pascal(int rows) {
  std::vector<std::vector<CountValue>> t(rows + 1);
  for (int n = 0; n <= rows; ++n) {
    t[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
  }
  return t;
}

// The tangency recursion written out directly over a caller-supplied
// sequence nd[k] = n_k (nd[0] unused). Test-only; shares nothing with the
// library apart from mpz arithmetic.
CountValue tangency_from(const std::vector<CountValue>& nd, int d, int l) {
  const auto tri = pascal(3 * d);
  auto choose = [&](int n, int k) -> CountValue {
    if (n < 0 || k < 0 || k > n) return 0;
    return tri[n][k];
  };
  CountValue total = 0;
  for (int d1 = 1; d1 < d; ++d1) {
    const int d2 = d - d1;
    const CountValue term_a = choose(3 * d - 4, 3 * d1 - 2) * (l * d1) * (l * d2) * d1 * d2 * nd[d1] * nd[d2];
    const CountValue pair = CountValue(l * d1) * (l * d1 - 1) * nd[d1];
    const CountValue term_b = choose(3 * d - 4, 3 * d2 - 3) * d1 * d2 * pair * nd[d2];
    total += term_a - term_b;
  }
  return total;
}

// n_2..n_7 read off the published l = 1 tangency row: t1(d+1, 1) is affine
// in n_d once n_1..n_{d-1} are known, so two evaluations pin it down.
std::vector<CountValue> kontsevich_from_tangency_row(const std::vector<CountValue>& row, int max_d) {
  std::vector<CountValue> nd{0, 1};
  for (int d = 2; d <= max_d; ++d) {
    nd.push_back(0);
    const CountValue at0 = tangency_from(nd, d + 1, 1);
    nd[d] = 1;
    const CountValue slope = tangency_from(nd, d + 1, 1) - at0;
    const CountValue numerator = row[d] - at0;  // row[d] = t1(d+1, 1)
    REQUIRE(slope != 0);
    REQUIRE(numerator % slope == 0);
    nd[d] = numerator / slope;
  }
  return nd;
}

}  // namespace

TEST_CASE("binomial examples and out-of-range convention") {
  CHECK(binomial(5, 1) == 5);
  CHECK(binomial(2, -1) == 0);
  CHECK(binomial(2, 0) == 1);
  CHECK(binomial(2, 3) == 0);
  CHECK(binomial(-1, 0) == 0);
  CHECK(binomial(-3, -5) == 0);
}

TEST_CASE("binomial matches Pascal's triangle and is symmetric up to n = 200") {
  const auto tri = pascal(200);
  for (int n = 0; n <= 200; ++n) {
    for (int k = 0; k <= n; ++k) {
      REQUIRE(binomial(n, k) == tri[n][k]);
      REQUIRE(binomial(n, k) == binomial(n, n - k));
    }
  }
}

TEST_CASE("kontsevich numbers agree with values forced by the published tangency row") {
  // t1(d, 1) for d = 1..8 as published; index d-1 -> shift so row[d] = t1(d+1, 1)
  const std::vector<CountValue> row{0,         2,           36,          2184, 335792, 106976160,
                                    61739450304_mpz, 58749399019136_mpz};
  std::vector<CountValue> shifted{0};
  for (std::size_t i = 1; i < row.size(); ++i) shifted.push_back(row[i]);
  const auto derived = kontsevich_from_tangency_row(shifted, 7);
  MemoTable memo;
  for (int d = 1; d <= 7; ++d) CHECK(kontsevich(d, memo) == derived[d]);

  // frozen from the derivation above
  CHECK(derived[2] == 1);
  CHECK(derived[3] == 12);
  CHECK(derived[4] == 620);
  CHECK(derived[5] == 87304);
  CHECK(derived[6] == 26312976);
  CHECK(derived[7] == 14616808192_mpz);
}

TEST_CASE("kontsevich examples and errors") {
  MemoTable memo;
  CHECK(kontsevich(1, memo) == 1);
  CHECK(kontsevich(2, memo) == 1);
  CHECK(kontsevich(3, memo) == 12);
  CHECK(kontsevich(4, memo) == 620);
  CHECK_THROWS_AS(kontsevich(0, memo), std::invalid_argument);
  CHECK_THROWS_AS(kontsevich(-2, memo), std::invalid_argument);
  // exceeds 64 bits well before d = 12
  CHECK(kontsevich(12, memo) > CountValue("18446744073709551615"));
}

TEST_CASE("kontsevich_step reproduces the memoized recursion") {
  MemoTable memo;
  std::vector<CountValue> lower;
  for (int d = 1; d <= 15; ++d) {
    CHECK(kontsevich_step(d, lower) == kontsevich(d, memo));
    lower.push_back(kontsevich(d, memo));
  }
  CHECK_THROWS_AS(kontsevich_step(5, {1, 1}), std::invalid_argument);
}

TEST_CASE("t0 cases") {
  MemoTable memo;
  CHECK(t0(2, 3, 0, memo) == 6);
  CHECK(t0(3, 7, 1, memo) == 12);
  CHECK(t0(5, 2, 2, memo) == 0);
  CHECK(t0(5, 2, 9, memo) == 0);
  CHECK_THROWS_AS(t0(1, 1, -1, memo), std::invalid_argument);
  CHECK_THROWS_AS(t0(1, 0, 0, memo), std::invalid_argument);
  for (int l = 1; l <= 6; ++l) CHECK(t0(4, l, 1, memo) == kontsevich(4, memo));
}

TEST_CASE("t0_pt is n_d") {
  CHECK(t0_pt(1) == 1);
  CHECK(t0_pt(2) == 1);
  CHECK(t0_pt(4) == 620);
}

TEST_CASE("t0t0 examples") {
  CHECK(t0t0(1, 1) == 0);
  CHECK(t0t0(2, 1) == 2);
  CHECK(t0t0(2, 2) == 12);
  CHECK_THROWS_AS(t0t0(0, 1), std::invalid_argument);
}

TEST_CASE("t1 examples from the published tables") {
  MemoTable memo;
  CHECK(t1(1, 1, memo) == 0);
  CHECK(t1(2, 1, memo) == 2);
  CHECK(t1(3, 1, memo) == 36);
  CHECK(t1(2, 2, memo) == 6);
  CHECK(t1(8, 5, memo) == CountValue("564262015643520"));
  for (int l = 1; l <= 20; ++l) CHECK(t1(1, l, memo) == 0);
  CHECK_THROWS_AS(t1(0, 1, memo), std::invalid_argument);
  CHECK_THROWS_AS(t1(2, 0, memo), std::invalid_argument);
}

TEST_CASE("t1 agrees with the directly written recursion") {
  MemoTable memo;
  std::vector<CountValue> nd{0};
  for (int d = 1; d <= 12; ++d) nd.push_back(kontsevich(d, memo));
  for (int d = 1; d <= 12; ++d) {
    for (int l = 1; l <= 6; ++l) CHECK(t1(d, l, memo) == tangency_from(nd, d, l));
  }
}

TEST_CASE("negative tangency count is a consistency error") {
  MemoTable memo;
  memo.store(InvariantKey::kontsevich(1), 1);
  memo.store(InvariantKey::kontsevich(2), -1);
  CHECK_THROWS_AS(t1(3, 1, memo), ConsistencyError);
}

TEST_CASE("memo table rejects a conflicting store") {
  MemoTable memo;
  memo.store(InvariantKey::kontsevich(3), 12);
  CHECK_NOTHROW(memo.store(InvariantKey::kontsevich(3), 12));
  CHECK_THROWS_AS(memo.store(InvariantKey::kontsevich(3), 13), ConsistencyError);
}

TEST_CASE("only kontsevich numbers are memoized") {
  MemoTable memo;
  t1(6, 3, memo);
  for (const auto& [key, value] : memo.snapshot()) CHECK(key.kind == InvariantKind::Kontsevich);
  CHECK(memo.size() == 5);  // n_1..n_5 feed t1(6, .)
}

TEST_CASE("degree_sides examples") {
  MemoTable memo;
  auto s = degree_sides(1, 3, memo);
  CHECK(s.lhs == 0);
  CHECK(s.rhs == 0);
  s = degree_sides(2, 1, memo);
  CHECK(s.lhs == 2);
  CHECK(s.rhs == 2);
  s = degree_sides(3, 1, memo);
  CHECK(s.lhs == 40);
  CHECK(s.rhs == 40);
}

TEST_CASE("WDVV sides balance for d <= 12, l <= 6") {
  MemoTable memo;
  for (int d = 1; d <= 12; ++d) {
    for (int l = 1; l <= 6; ++l) {
      const auto s = degree_sides(d, l, memo);
      CHECK(s.lhs == s.rhs);
      CHECK(t1(d, l, memo) == s.rhs - reducible_pair_sum(d, l, memo));
    }
  }
}

TEST_CASE("t1 is quadratic in l without constant term") {
  MemoTable memo;
  std::vector<CountValue> nd{0};
  for (int d = 1; d <= 10; ++d) nd.push_back(kontsevich(d, memo));
  for (int d = 2; d <= 10; ++d) {
    // every term carries a factor l or l^2
    CHECK(tangency_from(nd, d, 0) == 0);
    const CountValue second = t1(d, 3, memo) - 2 * t1(d, 2, memo) + t1(d, 1, memo);
    for (int l = 1; l <= 6; ++l) {
      CHECK(t1(d, l + 2, memo) - 2 * t1(d, l + 1, memo) + t1(d, l, memo) == second);
    }
  }
}

TEST_CASE("split-point sum over ordered splits is symmetric") {
  MemoTable memo;
  for (int d = 2; d <= 12; ++d) {
    for (int l = 1; l <= 4; ++l) {
      auto term = [&](int d1) -> CountValue {
        const int d2 = d - d1;
        return binomial(3 * d - 4, 3 * d1 - 2) * (l * d1) * (l * d2) * d1 * d2 * t0_pt(d1, memo) * t0_pt(d2, memo);
      };
      CountValue unordered = 0;
      for (int d1 = 1; 2 * d1 < d; ++d1) {
        CHECK(term(d1) == term(d - d1));
        unordered += term(d1);
      }
      CountValue expected = 2 * unordered;
      if (d % 2 == 0) expected += term(d / 2);
      CHECK(split_point_sum(d, l, memo) == expected);
    }
  }
}

TEST_CASE("warm and cold memo tables agree") {
  MemoTable warm;
  for (int d = 1; d <= 14; ++d) kontsevich(d, warm);
  for (int d = 1; d <= 14; ++d) {
    for (int l = 1; l <= 5; ++l) {
      MemoTable cold;
      CHECK(t1(d, l, warm) == t1(d, l, cold));
    }
  }
  for (const auto& [key, value] : warm.snapshot()) {
    MemoTable cold;
    CHECK(kontsevich(key.d, cold) == value);
  }
}

TEST_CASE("concurrent readers and writers see the same values") {
  MemoTable shared;
  std::vector<std::vector<CountValue>> seen(8);
  {
    std::vector<std::jthread> threads;
    for (int i = 0; i < 8; ++i) {
      threads.emplace_back([&, i] {
        for (int d = 20; d >= 1; --d) seen[i].push_back(t1(d, 1 + i % 5, shared) + kontsevich(d, shared));
      });
    }
  }
  MemoTable cold;
  for (int i = 0; i < 8; ++i) {
    for (int d = 20, k = 0; d >= 1; --d, ++k) CHECK(seen[i][k] == t1(d, 1 + i % 5, cold) + kontsevich(d, cold));
  }
}

TEST_CASE("t1 grows with l") {
  MemoTable memo;
  for (int d = 2; d <= 8; ++d) {
    for (int l = 1; l <= 4; ++l) CHECK(t1(d, l + 1, memo) > t1(d, l, memo));
  }
}

TEST_CASE("decimal serialization") {
  const CountValue big = kontsevich(20);
  CHECK(parse_decimal(to_decimal(big)) == big);
  CHECK(parse_decimal(to_decimal(-big)) == -big);
  CHECK(to_decimal(CountValue(0)) == "0");
  CHECK_THROWS_AS(parse_decimal(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal("1e5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal(" 12"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal("+3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal("-"), std::invalid_argument);
}

TEST_CASE("invariant keys validate their parameters") {
  CHECK_THROWS_AS(InvariantKey::kontsevich(0), std::invalid_argument);
  CHECK_THROWS_AS(InvariantKey::t0(1, 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(InvariantKey::t0t0(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(InvariantKey::t1(0, 1), std::invalid_argument);
  CHECK(InvariantKey::t0(2, 3, 0).n == 0);
  CHECK_FALSE(InvariantKey::kontsevich(2).l.has_value());
}
