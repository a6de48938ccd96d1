#include "tropwdvv/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace tropwdvv {

namespace {

using Clock = std::chrono::steady_clock;

std::string padded(int value, int width = 2) {
  char buffer[24];
  std::snprintf(buffer, sizeof buffer, "%0*d", width, value);
  return buffer;
}

std::chrono::nanoseconds since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
}

}  // namespace

void VerificationReport::add(std::string name, CountValue expected, CountValue actual,
                             std::chrono::nanoseconds elapsed) {
  const bool pass = expected == actual;
  checks.push_back({std::move(name), std::move(expected), std::move(actual), pass, elapsed});
}

std::size_t VerificationReport::passed() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }));
}

std::size_t VerificationReport::failed() const { return checks.size() - passed(); }

void VerificationReport::sort_by_name() {
  std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json out;
  out["suite"] = suite;
  out["passed"] = passed();
  out["failed"] = failed();
  out["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    out["checks"].push_back({{"name", c.name},
                             {"expected", to_decimal(c.expected)},
                             {"actual", to_decimal(c.actual)},
                             {"pass", c.pass},
                             {"elapsed_ns", c.elapsed.count()}});
  }
  return out;
}

VerificationReport VerificationReport::merge(std::string suite, std::vector<VerificationReport> parts) {
  VerificationReport merged{std::move(suite), {}};
  for (auto& part : parts) {
    for (auto& c : part.checks) merged.checks.push_back(std::move(c));
  }
  merged.sort_by_name();
  return merged;
}

PaperTable::PaperTable(std::map<std::pair<int, int>, CountValue> rows) : rows_(std::move(rows)) {
  for (int d = 1; d <= max_degree; ++d) {
    for (int l = 1; l <= max_line_degree; ++l) {
      if (!rows_.count({d, l})) {
        throw std::invalid_argument("table is missing d=" + std::to_string(d) + ", l=" + std::to_string(l));
      }
    }
  }
  if (rows_.size() != static_cast<std::size_t>(max_degree * max_line_degree)) {
    throw std::invalid_argument("table has cells outside d = 1..8, l = 1..5");
  }
}

const PaperTable& PaperTable::published() {
  // N_d^{T1}(l): rational degree-d curves tangent to a general degree-l curve
  // through 3d-2 general points.
  static const PaperTable table = [] {
    const char* values[PaperTable::max_line_degree][PaperTable::max_degree] = {
        {"0", "2", "36", "2184", "335792", "106976160", "61739450304", "58749399019136"},
        {"0", "6", "96", "5608", "846192", "266578272", "152712516992", "144550300093056"},
        {"0", "12", "180", "10272", "1531200", "478806336", "272919200064", "257402703221760"},
        {"0", "20", "288", "16176", "2390816", "743660352", "422359499520", "397306608405248"},
        {"0", "30", "420", "23320", "3425040", "1061140320", "601033415360", "564262015643520"},
    };
    std::map<std::pair<int, int>, CountValue> rows;
    for (int l = 1; l <= PaperTable::max_line_degree; ++l) {
      for (int d = 1; d <= PaperTable::max_degree; ++d) rows[{d, l}] = parse_decimal(values[l - 1][d - 1]);
    }
    return PaperTable(std::move(rows));
  }();
  return table;
}

const CountValue& PaperTable::at(int d, int l) const {
  auto it = rows_.find({d, l});
  if (it == rows_.end()) throw std::out_of_range("no table entry for d=" + std::to_string(d) + ", l=" + std::to_string(l));
  return it->second;
}

VerificationReport verify_paper_tables(const PaperTable& table, MemoTable& memo) {
  VerificationReport report{"tables", {}};
  for (const auto& [key, expected] : table.rows()) {
    const auto [d, l] = key;
    const auto start = Clock::now();
    CountValue actual = t1(d, l, memo);
    report.add("T1 d=" + padded(d) + " l=" + padded(l), expected, std::move(actual), since(start));
  }
  report.sort_by_name();
  return report;
}

VerificationReport verify_paper_tables() { return verify_paper_tables(PaperTable::published(), default_memo()); }

VerificationReport verify_wdvv_balance(int d_max, int l_max, MemoTable& memo) {
  if (d_max < 1 || l_max < 1) throw std::invalid_argument("d_max and l_max must be >= 1");
  VerificationReport report{"wdvv", {}};
  for (int d = 1; d <= d_max; ++d) {
    for (int l = 1; l <= l_max; ++l) {
      const auto start = Clock::now();
      auto sides = degree_sides(d, l, memo);
      report.add("WDVV d=" + padded(d) + " l=" + padded(l), std::move(sides.rhs), std::move(sides.lhs), since(start));
    }
  }
  report.sort_by_name();
  return report;
}

VerificationReport verify_wdvv_balance(int d_max, int l_max) { return verify_wdvv_balance(d_max, l_max, default_memo()); }

QuadraticFit fit_quadratic_in_l(int d, MemoTable& memo) {
  if (d < 2) throw std::invalid_argument("quadratic fit needs d >= 2 (t1 vanishes for d = 1)");
  const CountValue f1 = t1(d, 1, memo);
  const CountValue f2 = t1(d, 2, memo);
  if (f1 == 0 && f2 == 0) throw std::invalid_argument("degenerate fit: t1(d,1) = t1(d,2) = 0");
  // f1 = alpha + beta, f2 = 4 alpha + 2 beta
  const CountValue twice_alpha = f2 - 2 * f1;
  if (!mpz_even_p(twice_alpha.get_mpz_t())) throw ConsistencyError("quadratic fit has a non-integer alpha");
  QuadraticFit fit;
  fit.alpha = twice_alpha / 2;
  fit.beta = f1 - fit.alpha;
  return fit;
}

VerificationReport verify_quadratic_in_l(int d, int l_max, MemoTable& memo) {
  if (l_max < 3) throw std::invalid_argument("l_max must be >= 3");
  const QuadraticFit fit = fit_quadratic_in_l(d, memo);
  VerificationReport report{"quadratic", {}};
  for (int l = 3; l <= l_max; ++l) {
    const auto start = Clock::now();
    CountValue actual = t1(d, l, memo);
    report.add("quadratic d=" + padded(d) + " l=" + padded(l), fit(l), std::move(actual), since(start));
  }
  return report;
}

VerificationReport verify_quadratic_in_l(int d, int l_max) { return verify_quadratic_in_l(d, l_max, default_memo()); }

std::uint64_t oracle_seed(std::uint64_t base, int trial, unsigned attempt) {
  return base * 1'000'003ULL + static_cast<std::uint64_t>(trial) * 1'009ULL + attempt;
}

VerificationReport verify_oracle(int d, int trials, const OracleOptions& options, MemoTable& memo) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  EnumerationOptions enumeration{options.jobs, options.allow_long, options.budget};
  VerificationReport report{"oracle", {}};
  const CountValue expected = kontsevich(d, memo);
  for (int trial = 0; trial < trials; ++trial) {
    for (unsigned attempt = 0;; ++attempt) {
      if (attempt > options.resample_budget) {
        throw ResampleBudgetExceeded("no generic configuration after " + std::to_string(attempt) + " samples");
      }
      const std::uint64_t seed = oracle_seed(options.seed, trial, attempt);
      const auto points = PointConfiguration::sample(static_cast<std::size_t>(3 * d - 1), seed);
      const auto start = Clock::now();
      try {
        CountValue actual = count_through_points(d, points, enumeration);
        report.add("oracle d=" + padded(d) + " trial=" + padded(trial, 4), expected, std::move(actual), since(start));
        break;
      } catch (const NonGenericConfiguration&) {
        continue;
      }
    }
  }
  return report;
}

VerificationReport verify_oracle(int d, int trials, const OracleOptions& options) {
  return verify_oracle(d, trials, options, default_memo());
}

VerificationReport verify_bezout(int max_degree, std::uint64_t seed, unsigned resample_budget) {
  if (max_degree < 1 || max_degree > 2) throw std::invalid_argument("geometric Bezout check supports degrees 1 and 2");
  std::map<std::pair<int, std::uint64_t>, PlaneTropicalCurve> enumerated;
  auto generic_curve = [&](int d, std::uint64_t base) -> const PlaneTropicalCurve& {
    if (auto it = enumerated.find({d, base}); it != enumerated.end()) return it->second;
    for (unsigned attempt = 0; attempt <= resample_budget; ++attempt) {
      const auto points = PointConfiguration::sample(static_cast<std::size_t>(3 * d - 1), oracle_seed(base, d, attempt));
      try {
        auto found = enumerate_curves(d, points);
        if (!found.curves.empty()) return enumerated.emplace(std::pair{d, base}, found.curves.front().curve).first->second;
      } catch (const NonGenericConfiguration&) {
      }
    }
    throw ResampleBudgetExceeded("no generic degree-" + std::to_string(d) + " curve found");
  };

  VerificationReport report{"bezout", {}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> offset(-1'000'000, 1'000'000);
  for (int d1 = 1; d1 <= max_degree; ++d1) {
    for (int d2 = d1; d2 <= max_degree; ++d2) {
      const auto start = Clock::now();
      const auto& first = generic_curve(d1, seed);
      const auto& second = generic_curve(d2, seed + 7919);
      std::optional<CountValue> total;
      for (unsigned attempt = 0; attempt <= resample_budget && !total; ++attempt) {
        // shifting by a random rational vector puts the two curves in general relative position
        const long dx = offset(rng), dy = offset(rng);
        Point2 shift{Rational(dx, 7), Rational(dy, 11)};
        shift.x.canonicalize();
        shift.y.canonicalize();
        try {
          total = intersection_multiplicity_sum(first, second.translated(shift));
        } catch (const NonGenericConfiguration&) {
        }
      }
      if (!total) throw ResampleBudgetExceeded("curves stayed in special position");
      report.add("bezout d1=" + padded(d1) + " d2=" + padded(d2), bezout_total(d1, d2), *total, since(start));
    }
  }
  return report;
}

VerificationReport verify_multiplicity_invariance(int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> ends(3, 6);
  VerificationReport report{"multiplicity", {}};
  for (int sample = 0; sample < samples; ++sample) {
    const auto start = Clock::now();
    const CombinatorialType type = random_trivalent_type(ends(rng), rng);
    const CountValue base = ev_multiplicity(type, 0);

    std::vector<CountValue> variants;
    for (std::size_t root = 1; root < type.vertex_count(); ++root) variants.push_back(ev_multiplicity(type, root));

    auto edges = type.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    for (auto& e : edges) {
      if (rng() & 1) e = {e.head, e.tail, -e.direction};
    }
    auto shuffled_ends = type.ends();
    std::vector<std::size_t> labels(type.marking_count());
    std::iota(labels.begin(), labels.end(), 0);
    std::shuffle(labels.begin(), labels.end(), rng);
    for (auto& end : shuffled_ends) {
      if (end.marking) end.marking = labels[*end.marking];
    }
    const CombinatorialType permuted(type.vertex_count(), std::move(edges), std::move(shuffled_ends));
    variants.push_back(ev_multiplicity(permuted, 0));

    // report the first disagreeing variant, if any
    CountValue actual = base;
    for (const auto& v : variants) {
      if (v != base) {
        actual = v;
        break;
      }
    }
    report.add("multiplicity sample=" + padded(sample, 5), base, actual, since(start));
  }
  report.sort_by_name();
  return report;
}

}  // namespace tropwdvv
