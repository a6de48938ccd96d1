#include "tropwdvv/cli.hpp"

#include "tropwdvv/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

namespace tropwdvv {

namespace {

using nlohmann::json;

struct Range {
  int first = 1;
  int last = 1;
};

// "a..b" or a single integer "a"
Range parse_range(const std::string& text) {
  auto to_int = [&](const std::string& part) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("range", "bad range '" + text + "'");
    }
    if (used != part.size()) throw CLI::ValidationError("range", "bad range '" + text + "'");
    return value;
  };
  Range range;
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    range.first = range.last = to_int(text);
  } else {
    range.first = to_int(text.substr(0, dots));
    range.last = to_int(text.substr(dots + 2));
  }
  if (range.first < 1) throw CLI::ValidationError("range", "range '" + text + "' must start at 1 or more");
  if (range.first > range.last) throw CLI::ValidationError("range", "range '" + text + "' is empty");
  return range;
}

json record(const std::string& kind, int d, std::optional<int> l, const CountValue& value) {
  json r{{"kind", kind}, {"d", d}};
  if (l) r["l"] = *l;
  r["value"] = to_decimal(value);
  return r;
}

void print_json(std::ostream& out, const json& document) { out << document.dump(2) << '\n'; }

void print_report(std::ostream& out, const VerificationReport& report, const std::string& format) {
  if (format == "json") {
    print_json(out, report.to_json());
    return;
  }
  if (format == "csv") {
    out << "name,expected,actual,pass,elapsed_ns\n";
    for (const auto& c : report.checks) {
      out << c.name << ',' << to_decimal(c.expected) << ',' << to_decimal(c.actual) << ','
          << (c.pass ? "true" : "false") << ',' << c.elapsed.count() << '\n';
    }
    return;
  }
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "  expected=" << to_decimal(c.expected)
        << " actual=" << to_decimal(c.actual) << '\n';
  }
  out << report.suite << ": " << report.passed() << " passed, " << report.failed() << " failed\n";
}

std::optional<std::chrono::milliseconds> budget_from_seconds(double seconds) {
  if (seconds <= 0) return std::nullopt;
  return std::chrono::milliseconds(static_cast<long long>(seconds * 1000));
}

}  // namespace

std::size_t load_cache(const std::string& path, MemoTable& memo) {
  std::ifstream in(path);
  if (!in) return 0;
  json document;
  try {
    in >> document;
  } catch (const json::exception& e) {
    throw std::runtime_error("cache " + path + " is not valid JSON: " + e.what());
  }
  if (!document.is_object() || !document.contains("kontsevich") || !document["kontsevich"].is_object()) {
    throw std::runtime_error("cache " + path + " has no \"kontsevich\" object");
  }
  std::map<int, CountValue> loaded;
  for (const auto& [key, value] : document["kontsevich"].items()) {
    if (!value.is_string()) throw std::runtime_error("cache value for d=" + key + " is not a decimal string");
    int d = 0;
    try {
      std::size_t used = 0;
      d = std::stoi(key, &used);
      if (used != key.size() || d < 1) throw std::invalid_argument(key);
      loaded[d] = parse_decimal(value.get<std::string>());
    } catch (const std::exception&) {
      throw std::runtime_error("cache entry '" + key + "' is malformed");
    }
  }
  if (loaded.empty()) return 0;
  const int top = loaded.rbegin()->first;
  if (static_cast<int>(loaded.size()) != top) throw std::runtime_error("cache does not cover d = 1.." + std::to_string(top));

  std::vector<CountValue> lower;
  for (int d = 1; d < top; ++d) lower.push_back(loaded[d]);
  if (loaded[1] != 1 || kontsevich_step(top, lower) != loaded[top]) {
    throw std::runtime_error("cache " + path + " is stale: recomputing d=" + std::to_string(top) + " disagrees");
  }
  for (const auto& [d, value] : loaded) memo.store(InvariantKey::kontsevich(d), value);
  return loaded.size();
}

void save_cache(const std::string& path, const MemoTable& memo) {
  json document;
  document["kontsevich"] = json::object();
  for (const auto& [key, value] : memo.snapshot()) {
    if (key.kind == InvariantKind::Kontsevich) document["kontsevich"][std::to_string(key.d)] = to_decimal(value);
  }
  const std::string temporary = path + ".tmp";
  {
    std::ofstream out(temporary);
    if (!out) throw std::runtime_error("cannot write cache " + temporary);
    out << document.dump(2) << '\n';
  }
  std::filesystem::rename(temporary, path);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, MemoTable& memo) {
  CLI::App app{"Exact tropical characteristic numbers: Kontsevich numbers and tangency counts via WDVV",
               "tropwdvv"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string format = "plain";
  std::string cache_path;
  unsigned jobs = 1;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--cache", cache_path, std::string("Kontsevich memo cache file (default: $") +
                                            kCacheEnvironmentVariable + ")");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  int kontsevich_max = 0;
  auto* kontsevich_cmd = app.add_subcommand("kontsevich", "Print n_1 .. n_dmax");
  kontsevich_cmd->add_option("d_max", kontsevich_max, "Largest degree")->required()->check(CLI::PositiveNumber);

  int tangency_d = 0, tangency_l = 0;
  auto* tangency_cmd = app.add_subcommand("tangency", "Print N_d^{T1}(l)");
  tangency_cmd->add_option("d", tangency_d, "Curve degree")->required()->check(CLI::PositiveNumber);
  tangency_cmd->add_option("l", tangency_l, "Degree of the fixed curve")->required()->check(CLI::PositiveNumber);

  std::string d_range_text, l_range_text;
  auto* table_cmd = app.add_subcommand("table", "Print the N_d^{T1}(l) grid");
  table_cmd->add_option("d_range", d_range_text, "Degrees, e.g. 1..8")->required();
  table_cmd->add_option("l_range", l_range_text, "Fixed-curve degrees, e.g. 1..5")->required();

  std::string suite;
  std::optional<int> verify_d;
  int trials = 2, d_max = 12, l_max = 6;
  std::uint64_t seed = 1;
  bool allow_long = false;
  double budget_seconds = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", suite, "tables | wdvv | quadratic | oracle | all")
      ->required()
      ->check(CLI::IsMember({"tables", "wdvv", "quadratic", "oracle", "all"}));
  verify_cmd->add_option("--d", verify_d, "Degree for the quadratic and oracle suites")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--trials", trials, "Oracle configurations per degree")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--d-max", d_max, "WDVV suite: largest degree")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--l-max", l_max, "WDVV/quadratic suites: largest l")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed, "Base seed for point configurations");
  verify_cmd->add_flag("--allow-long", allow_long, "Permit brute force for degree >= 3");
  verify_cmd->add_option("--budget-seconds", budget_seconds, "Time budget per enumeration (0 = none)");

  int enumerate_d = 0;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Brute-force tropical curve count through random points");
  enumerate_cmd->add_option("--degree", enumerate_d, "Curve degree")->required()->check(CLI::PositiveNumber);
  enumerate_cmd->add_option("--seed", seed, "Seed for the point configuration");
  enumerate_cmd->add_flag("--allow-long", allow_long, "Permit degree >= 3");
  enumerate_cmd->add_option("--budget-seconds", budget_seconds, "Time budget (0 = none)");

  Range d_range, l_range;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (table_cmd->parsed()) {
      d_range = parse_range(d_range_text);
      l_range = parse_range(l_range_text);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (cache_path.empty()) {
    if (const char* env = std::getenv(kCacheEnvironmentVariable)) cache_path = env;
  }
  if (!cache_path.empty()) {
    try {
      load_cache(cache_path, memo);
    } catch (const std::exception& e) {
      err << "warning: ignoring cache: " << e.what() << '\n';
    }
  }

  int status = kExitOk;
  try {
    if (kontsevich_cmd->parsed()) {
      if (format == "json") {
        json records = json::array();
        for (int d = 1; d <= kontsevich_max; ++d) records.push_back(record("kontsevich", d, std::nullopt, kontsevich(d, memo)));
        print_json(out, {{"records", records}});
      } else {
        if (format == "csv") out << "d,value\n";
        for (int d = 1; d <= kontsevich_max; ++d) {
          if (format == "csv") out << d << ',';
          out << to_decimal(kontsevich(d, memo)) << '\n';
        }
      }
    } else if (tangency_cmd->parsed()) {
      const CountValue value = t1(tangency_d, tangency_l, memo);
      if (format == "json") {
        print_json(out, {{"records", json::array({record("T1", tangency_d, tangency_l, value)})}});
      } else if (format == "csv") {
        out << "d,l,value\n" << tangency_d << ',' << tangency_l << ',' << to_decimal(value) << '\n';
      } else {
        out << to_decimal(value) << '\n';
      }
    } else if (table_cmd->parsed()) {
      if (format == "json") {
        json records = json::array();
        for (int d = d_range.first; d <= d_range.last; ++d) {
          for (int l = l_range.first; l <= l_range.last; ++l) records.push_back(record("T1", d, l, t1(d, l, memo)));
        }
        print_json(out, {{"records", records}});
      } else if (format == "csv") {
        out << 'd';
        for (int l = l_range.first; l <= l_range.last; ++l) out << ',' << l;
        out << '\n';
        for (int d = d_range.first; d <= d_range.last; ++d) {
          out << d;
          for (int l = l_range.first; l <= l_range.last; ++l) out << ',' << to_decimal(t1(d, l, memo));
          out << '\n';
        }
      } else {
        std::vector<std::vector<std::string>> cells;
        std::size_t width = 2;
        for (int d = d_range.first; d <= d_range.last; ++d) {
          auto& row = cells.emplace_back();
          for (int l = l_range.first; l <= l_range.last; ++l) {
            row.push_back(to_decimal(t1(d, l, memo)));
            width = std::max(width, row.back().size());
          }
        }
        out << std::setw(3) << "d\\l";
        for (int l = l_range.first; l <= l_range.last; ++l) out << ' ' << std::setw(static_cast<int>(width)) << l;
        out << '\n';
        for (int d = d_range.first; d <= d_range.last; ++d) {
          out << std::setw(3) << d;
          for (const auto& cell : cells[d - d_range.first]) out << ' ' << std::setw(static_cast<int>(width)) << cell;
          out << '\n';
        }
      }
    } else if (verify_cmd->parsed()) {
      OracleOptions oracle{seed, jobs, allow_long, budget_from_seconds(budget_seconds)};
      if ((suite == "oracle" || suite == "all") && verify_d && *verify_d >= 3 && !allow_long) {
        err << "error: the brute-force oracle for degree " << *verify_d
            << " is long-running; pass --allow-long (and optionally --budget-seconds)\n";
        return kExitUsage;
      }
      std::vector<std::function<VerificationReport()>> tasks;
      if (suite == "tables" || suite == "all") {
        tasks.push_back([&] { return verify_paper_tables(PaperTable::published(), memo); });
      }
      if (suite == "wdvv" || suite == "all") {
        tasks.push_back([&] { return verify_wdvv_balance(d_max, l_max, memo); });
      }
      if (suite == "quadratic" || suite == "all") {
        const int first = verify_d.value_or(2), last = verify_d.value_or(8);
        const int quadratic_l = std::max(l_max, 3);
        for (int d = first; d <= last; ++d) {
          tasks.push_back([&memo, d, quadratic_l] { return verify_quadratic_in_l(d, quadratic_l, memo); });
        }
      }
      if (suite == "oracle" || suite == "all") {
        const int first = verify_d.value_or(1), last = verify_d.value_or(2);
        for (int d = first; d <= last; ++d) {
          tasks.push_back([&memo, &oracle, d, trials] { return verify_oracle(d, trials, oracle, memo); });
        }
      }
      // populate the memo before any concurrent reads
      kontsevich(std::max(d_max, PaperTable::max_degree), memo);
      std::vector<VerificationReport> parts;
      if (jobs > 1 && tasks.size() > 1) {
        std::vector<std::future<VerificationReport>> futures;
        for (auto& task : tasks) futures.push_back(std::async(std::launch::async, task));
        for (auto& f : futures) parts.push_back(f.get());
      } else {
        for (auto& task : tasks) parts.push_back(task());
      }
      const VerificationReport report = parts.size() == 1 ? parts.front() : VerificationReport::merge(suite, std::move(parts));
      print_report(out, report, format);
      status = report.all_passed() ? kExitOk : kExitVerificationFailed;
    } else if (enumerate_cmd->parsed()) {
      EnumerationOptions options{jobs, allow_long, budget_from_seconds(budget_seconds)};
      std::optional<Enumeration> found;
      PointConfiguration points;
      for (unsigned attempt = 0; attempt <= 16 && !found; ++attempt) {
        points = PointConfiguration::sample(static_cast<std::size_t>(3 * enumerate_d - 1), oracle_seed(seed, 0, attempt));
        try {
          found = enumerate_curves(enumerate_d, points, options);
        } catch (const NonGenericConfiguration&) {
        }
      }
      if (!found) throw ResampleBudgetExceeded("no generic configuration found");
      if (format == "json") {
        json r = record("tropical_count", enumerate_d, std::nullopt, found->count);
        r["seed"] = points.genericity_seed;
        r["labeled_total"] = to_decimal(found->labeled_total);
        r["points"] = json::array();
        for (const auto& p : points.points) r["points"].push_back({to_string(p.x), to_string(p.y)});
        print_json(out, {{"records", json::array({r})}});
      } else if (format == "csv") {
        out << "d,seed,labeled_total,value\n"
            << enumerate_d << ',' << points.genericity_seed << ',' << to_decimal(found->labeled_total) << ','
            << to_decimal(found->count) << '\n';
      } else {
        out << to_decimal(found->count) << '\n';
      }
    }
  } catch (const LongRunningRefused& e) {
    err << "error: " << e.what() << " (use --allow-long)\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }

  if (!cache_path.empty()) {
    try {
      save_cache(cache_path, memo);
    } catch (const std::exception& e) {
      err << "warning: " << e.what() << '\n';
    }
  }
  return status;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run_cli(args, out, err, default_memo());
}

}  // namespace tropwdvv
