// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on failure.
#include "tropwdvv/cli.hpp"
#include "tropwdvv/verify.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

using namespace tropwdvv;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

bool criterion(int number, const std::string& title, std::chrono::milliseconds limit,
               const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome outcome{false, ""};
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  const bool in_time = elapsed <= limit;
  const bool pass = outcome.ok && in_time;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " (" << elapsed.count()
            << " ms, limit " << limit.count() << " ms)";
  if (!outcome.detail.empty()) std::cout << " - " << outcome.detail;
  if (outcome.ok && !in_time) std::cout << " - over time limit";
  std::cout << std::endl;
  return pass;
}

Outcome from_report(const VerificationReport& report) {
  std::string detail = std::to_string(report.passed()) + "/" + std::to_string(report.checks.size()) + " checks";
  for (const auto& c : report.checks) {
    if (!c.pass) {
      detail += "; first failure " + c.name + " expected " + to_decimal(c.expected) + " got " + to_decimal(c.actual);
      break;
    }
  }
  return {report.all_passed() && !report.checks.empty(), detail};
}

std::string capture(const std::vector<std::string>& args, MemoTable& memo, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err, memo);
  return out.str();
}

}  // namespace

int main() {
  using std::chrono::milliseconds;
  using std::chrono::minutes;
  using std::chrono::seconds;
  bool all = true;

  all &= criterion(1, "T1 table reproduction, d=1..8, l=1..5", seconds(1), [] {
    MemoTable memo;
    const auto report = verify_paper_tables(PaperTable::published(), memo);
    return Outcome{report.checks.size() == 40 && report.all_passed(), from_report(report).detail};
  });

  all &= criterion(2, "extended l=1 row", seconds(1), [] {
    MemoTable memo;
    const std::vector<CountValue> row{0,         2,          36,          2184,
                                      335792,    106976160,  CountValue("61739450304"),
                                      CountValue("58749399019136")};
    VerificationReport report{"row", {}};
    for (int d = 1; d <= 8; ++d) report.add("d=" + std::to_string(d), row[d - 1], t1(d, 1, memo));
    return from_report(report);
  });

  all &= criterion(3, "WDVV balance, d<=12, l<=6", seconds(1), [] {
    MemoTable memo;
    const auto report = verify_wdvv_balance(12, 6, memo);
    return Outcome{report.checks.size() == 72 && report.all_passed(), from_report(report).detail};
  });

  all &= criterion(4, "quadratic in l, d=2..8", seconds(1), [] {
    MemoTable memo;
    VerificationReport report{"quadratic", {}};
    for (int d = 2; d <= 8; ++d) {
      const auto fit = fit_quadratic_in_l(d, memo);
      for (int l = 3; l <= 5; ++l) {
        const std::string name = "d=" + std::to_string(d) + " l=" + std::to_string(l);
        report.add(name + " fit", t1(d, l, memo), fit(l));
        report.add(name + " table", PaperTable::published().at(d, l), fit(l));
      }
    }
    return from_report(report);
  });

  all &= criterion(5, "brute-force oracle d=1, two configurations", seconds(1), [] {
    OracleOptions options;
    options.seed = 11;
    return from_report(verify_oracle(1, 2, options));
  });

  all &= criterion(5, "brute-force oracle d=2, two configurations", minutes(5), [] {
    OracleOptions options;
    options.seed = 23;
    options.jobs = std::max(1u, std::thread::hardware_concurrency());
    return from_report(verify_oracle(2, 2, options));
  });

  all &= criterion(6, "geometric Bezout, d1,d2<=2", minutes(1), [] { return from_report(verify_bezout(2, 5)); });

  all &= criterion(7, "multiplicity invariance on 150 random types", seconds(10),
                   [] { return from_report(verify_multiplicity_invariance(150, 99)); });

  all &= criterion(8, "byte-identical table output, warm and cold memo", seconds(10), [] {
    const std::vector<std::string> args{"table", "1..8", "1..5", "--format", "csv"};
    MemoTable shared, fresh;
    int c1 = -1, c2 = -1, c3 = -1;
    const auto cold = capture(args, shared, c1);
    const auto warm = capture(args, shared, c2);
    const auto again = capture(args, fresh, c3);
    const bool ok = c1 == 0 && c2 == 0 && c3 == 0 && !cold.empty() && cold == warm && cold == again;
    return Outcome{ok, std::to_string(cold.size()) + " bytes"};
  });

  std::cout << (all ? "acceptance: all criteria passed" : "acceptance: FAILED") << std::endl;
  return all ? 0 : 1;
}
