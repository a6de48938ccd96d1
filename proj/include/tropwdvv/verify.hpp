#pragma once

#include "tropwdvv/enumerate.hpp"
#include "tropwdvv/invariants.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tropwdvv {

struct Check {
  std::string name;
  CountValue expected;
  CountValue actual;
  bool pass = false;
  std::chrono::nanoseconds elapsed{0};
};

/// Outcome of a verification suite. A check passes iff expected == actual.
struct VerificationReport {
  std::string suite;
  std::vector<Check> checks;

  void add(std::string name, CountValue expected, CountValue actual,
           std::chrono::nanoseconds elapsed = std::chrono::nanoseconds{0});
  std::size_t passed() const;
  std::size_t failed() const;
  bool all_passed() const { return failed() == 0; }
  void sort_by_name();

  /// {"suite", "passed", "failed", "checks": [{"name", "expected", "actual",
  /// "pass", "elapsed_ns"}]}; counts are decimal strings.
  nlohmann::json to_json() const;

  /// Concatenation of all checks, sorted by name.
  static VerificationReport merge(std::string suite, std::vector<VerificationReport> parts);
};

/// Published N_d^{T1}(l) values for d = 1..8, l = 1..5.
class PaperTable {
 public:
  static constexpr int max_degree = 8;
  static constexpr int max_line_degree = 5;

  /// Throws std::invalid_argument unless `rows` covers exactly the 40 cells.
  explicit PaperTable(std::map<std::pair<int, int>, CountValue> rows);

  static const PaperTable& published();

  const CountValue& at(int d, int l) const;
  const std::map<std::pair<int, int>, CountValue>& rows() const { return rows_; }

 private:
  std::map<std::pair<int, int>, CountValue> rows_;
};

VerificationReport verify_paper_tables(const PaperTable& table, MemoTable& memo);
VerificationReport verify_paper_tables();

/// Both WDVV sides agree for every 1 <= d <= d_max, 1 <= l <= l_max.
VerificationReport verify_wdvv_balance(int d_max, int l_max, MemoTable& memo);
VerificationReport verify_wdvv_balance(int d_max, int l_max);

/// t1(d, l) = alpha l^2 + beta l, fitted from l = 1, 2.
struct QuadraticFit {
  CountValue alpha;
  CountValue beta;

  CountValue operator()(int l) const { return alpha * l * l + beta * l; }
};

/// Throws std::invalid_argument for d < 2 or when both values vanish, and
/// ConsistencyError when alpha would not be an integer.
QuadraticFit fit_quadratic_in_l(int d, MemoTable& memo);

/// Checks the fitted model against t1(d, l) for 3 <= l <= l_max.
VerificationReport verify_quadratic_in_l(int d, int l_max, MemoTable& memo);
VerificationReport verify_quadratic_in_l(int d, int l_max);

/// Too many non-generic samples in a row.
class ResampleBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool allow_long = false;
  std::optional<std::chrono::milliseconds> budget;
  unsigned resample_budget = 16;
};

/// Seed actually used for trial `trial` after `attempt` rejected samples.
std::uint64_t oracle_seed(std::uint64_t base, int trial, unsigned attempt);

/// Brute-force tropical count on `trials` generic configurations versus
/// kontsevich(d).
VerificationReport verify_oracle(int d, int trials, const OracleOptions& options, MemoTable& memo);
VerificationReport verify_oracle(int d, int trials, const OracleOptions& options = {});

/// For every 1 <= d1 <= d2 <= max_degree, enumerates one generic curve of
/// each degree and checks that their crossings add up to d1 * d2.
VerificationReport verify_bezout(int max_degree, std::uint64_t seed, unsigned resample_budget = 16);

/// For `samples` random trivalent types, compares ev_multiplicity across all
/// root vertices, a shuffled bounded-edge order and relabeled markings.
VerificationReport verify_multiplicity_invariance(int samples, std::uint64_t seed);

}  // namespace tropwdvv
