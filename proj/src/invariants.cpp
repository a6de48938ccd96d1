#include "tropwdvv/invariants.hpp"

#include <mutex>

namespace tropwdvv {

namespace {

void require_positive(int value, const char* name) {
  if (value < 1) {
    throw std::invalid_argument(std::string(name) + " must be >= 1, got " + std::to_string(value));
  }
}

CountValue require_nonnegative(CountValue value, const std::string& what) {
  if (value < 0) {
    throw ConsistencyError(what + " evaluated to a negative number: " + to_decimal(value));
  }
  return value;
}

}  // namespace

std::string to_string(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::Kontsevich: return "kontsevich";
    case InvariantKind::T0: return "T0";
    case InvariantKind::T0T0: return "T0T0";
    case InvariantKind::T1: return "T1";
  }
  return "unknown";
}

InvariantKey InvariantKey::kontsevich(int d) {
  require_positive(d, "d");
  return {InvariantKind::Kontsevich, d, std::nullopt, std::nullopt};
}

InvariantKey InvariantKey::t0(int d, int l, int n) {
  require_positive(d, "d");
  require_positive(l, "l");
  if (n < 0) throw std::invalid_argument("n must be >= 0, got " + std::to_string(n));
  return {InvariantKind::T0, d, l, n};
}

InvariantKey InvariantKey::t0t0(int d, int l) {
  require_positive(d, "d");
  require_positive(l, "l");
  return {InvariantKind::T0T0, d, l, std::nullopt};
}

InvariantKey InvariantKey::t1(int d, int l) {
  require_positive(d, "d");
  require_positive(l, "l");
  return {InvariantKind::T1, d, l, std::nullopt};
}

MemoTable::MemoTable(const MemoTable& other) : entries_(other.snapshot()) {}

MemoTable& MemoTable::operator=(const MemoTable& other) {
  if (this != &other) {
    auto copy = other.snapshot();
    std::unique_lock lock(mutex_);
    entries_ = std::move(copy);
  }
  return *this;
}

std::optional<CountValue> MemoTable::find(const InvariantKey& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void MemoTable::store(const InvariantKey& key, const CountValue& value) {
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(key, value);
  if (!inserted && it->second != value) {
    throw ConsistencyError("memo entry " + to_string(key.kind) + "(d=" + std::to_string(key.d) +
                           ") changed from " + to_decimal(it->second) + " to " + to_decimal(value));
  }
}

std::size_t MemoTable::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void MemoTable::clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

std::map<InvariantKey, CountValue> MemoTable::snapshot() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

MemoTable& default_memo() {
  static MemoTable table;
  return table;
}

CountValue binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  CountValue result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

CountValue kontsevich_step(int d, const std::vector<CountValue>& lower) {
  require_positive(d, "d");
  if (d == 1) return 1;
  if (lower.size() < static_cast<std::size_t>(d - 1)) {
    throw std::invalid_argument("kontsevich_step needs n_1..n_{d-1}");
  }
  CountValue sum = 0;
  for (int d1 = 1; d1 < d; ++d1) {
    const int d2 = d - d1;
    const CountValue bracket = CountValue(d1 * d1) * (d2 * d2) * binomial(3 * d - 4, 3 * d1 - 2) -
                               CountValue(d1 * d1 * d1) * d2 * binomial(3 * d - 4, 3 * d1 - 1);
    sum += lower[d1 - 1] * lower[d2 - 1] * bracket;
  }
  return sum;
}

CountValue kontsevich(int d, MemoTable& memo) {
  require_positive(d, "d");
  if (auto cached = memo.find(InvariantKey::kontsevich(d))) return *cached;

  std::vector<CountValue> values;
  values.reserve(d);
  for (int k = 1; k <= d; ++k) {
    const auto key = InvariantKey::kontsevich(k);
    if (auto cached = memo.find(key)) {
      values.push_back(*cached);
      continue;
    }
    CountValue next = require_nonnegative(kontsevich_step(k, values), "kontsevich(" + std::to_string(k) + ")");
    memo.store(key, next);
    values.push_back(std::move(next));
  }
  return values.back();
}

CountValue kontsevich(int d) { return kontsevich(d, default_memo()); }

CountValue t0(int d, int l, int n, MemoTable& memo) {
  InvariantKey::t0(d, l, n);
  if (n >= 2) return 0;
  const CountValue nd = kontsevich(d, memo);
  if (n == 1) return nd;
  return CountValue(l) * d * nd;
}

CountValue t0(int d, int l, int n) { return t0(d, l, n, default_memo()); }

CountValue t0_pt(int d, MemoTable& memo) { return t0(d, 1, 1, memo); }
CountValue t0_pt(int d) { return t0_pt(d, default_memo()); }

CountValue t0t0(int d, int l, MemoTable& memo) {
  InvariantKey::t0t0(d, l);
  const CountValue ld = CountValue(l) * d;
  return ld * (ld - 1) * kontsevich(d, memo);
}

CountValue t0t0(int d, int l) { return t0t0(d, l, default_memo()); }

CountValue split_point_sum(int d, int l, MemoTable& memo) {
  require_positive(d, "d");
  require_positive(l, "l");
  CountValue sum = 0;
  for (int d1 = 1; d1 < d; ++d1) {
    const int d2 = d - d1;
    sum += binomial(3 * d - 4, 3 * d1 - 2) * (CountValue(l) * d1) * (CountValue(l) * d2) * d1 * d2 *
           t0_pt(d1, memo) * t0_pt(d2, memo);
  }
  return sum;
}

CountValue reducible_pair_sum(int d, int l, MemoTable& memo) {
  require_positive(d, "d");
  require_positive(l, "l");
  CountValue sum = 0;
  for (int d1 = 1; d1 < d; ++d1) {
    const int d2 = d - d1;
    sum += binomial(3 * d - 4, 3 * d2 - 3) * d1 * d2 * t0t0(d1, l, memo) * kontsevich(d2, memo);
  }
  return sum;
}

CountValue t1(int d, int l, MemoTable& memo) {
  InvariantKey::t1(d, l);
  return require_nonnegative(split_point_sum(d, l, memo) - reducible_pair_sum(d, l, memo),
                             "t1(" + std::to_string(d) + ", " + std::to_string(l) + ")");
}

CountValue t1(int d, int l) { return t1(d, l, default_memo()); }

DegreeSides degree_sides(int d, int l, MemoTable& memo) {
  return {t1(d, l, memo) + reducible_pair_sum(d, l, memo), split_point_sum(d, l, memo)};
}

DegreeSides degree_sides(int d, int l) { return degree_sides(d, l, default_memo()); }

}  // namespace tropwdvv
