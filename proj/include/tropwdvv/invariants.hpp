#pragma once

#include "tropwdvv/count_value.hpp"

#include <compare>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropwdvv {

/// Raised when an invariant evaluates to something impossible (a negative
/// count, or a memo entry that disagrees with a recomputation). Always a bug
/// or a corrupted input, never a valid result.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class InvariantKind { Kontsevich, T0, T0T0, T1 };

std::string to_string(InvariantKind kind);

/// Parameters of one enumerative invariant. Build through the factories,
/// which enforce d >= 1, l >= 1 and n >= 0.
struct InvariantKey {
  InvariantKind kind = InvariantKind::Kontsevich;
  int d = 1;
  std::optional<int> l;
  std::optional<int> n;

  static InvariantKey kontsevich(int d);
  static InvariantKey t0(int d, int l, int n);
  static InvariantKey t0t0(int d, int l);
  static InvariantKey t1(int d, int l);

  auto operator<=>(const InvariantKey&) const = default;
};

/// Cache of computed invariants. Readers take a shared lock, writers an
/// exclusive one, so a table may be shared across threads at any time.
/// Storing a value that differs from an existing entry throws ConsistencyError.
class MemoTable {
 public:
  MemoTable() = default;
  MemoTable(const MemoTable& other);
  MemoTable& operator=(const MemoTable& other);

  std::optional<CountValue> find(const InvariantKey& key) const;
  void store(const InvariantKey& key, const CountValue& value);
  std::size_t size() const;
  void clear();
  std::map<InvariantKey, CountValue> snapshot() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<InvariantKey, CountValue> entries_;
};

/// Process-wide table used by the overloads without an explicit MemoTable.
MemoTable& default_memo();

/// C(n, k), zero outside 0 <= k <= n (including every n < 0).
CountValue binomial(long n, long k);

/// Number of rational degree-d plane curves through 3d-1 general points.
/// Only this invariant is stored in the memo table.
CountValue kontsevich(int d, MemoTable& memo);
CountValue kontsevich(int d);

/// One step of the Kontsevich recursion: n_d from the supplied n_1..n_{d-1}
/// (lower[k-1] = n_k). Used to audit cached values.
CountValue kontsevich_step(int d, const std::vector<CountValue>& lower);

/// Curves meeting a fixed degree-l curve transversally, with the extra
/// marking also constrained by the n-th power of the line class:
/// l*d*n_d for n = 0, n_d for n = 1, 0 for n >= 2.
CountValue t0(int d, int l, int n, MemoTable& memo);
CountValue t0(int d, int l, int n);

/// t0(d, l, 1): curves through a fixed point of the degree-l curve.
CountValue t0_pt(int d, MemoTable& memo);
CountValue t0_pt(int d);

/// Two markings on two distinct points of the degree-l curve: ld(ld-1) n_d.
CountValue t0t0(int d, int l, MemoTable& memo);
CountValue t0t0(int d, int l);

/// Sum over splits d1 + d2 = d of
///   C(3d-4, 3d1-2) (l d1)(l d2) d1 d2 t0_pt(d1) t0_pt(d2).
/// Degree of the WDVV map at the boundary point where the two fixed-curve
/// markings lie on different components.
CountValue split_point_sum(int d, int l, MemoTable& memo);

/// Sum over splits d1 + d2 = d of C(3d-4, 3d2-3) d1 d2 t0t0(d1, l) n_{d2}:
/// reducible curves with both fixed-curve markings on the degree-d1 part.
CountValue reducible_pair_sum(int d, int l, MemoTable& memo);

/// Rational degree-d curves tangent to a general degree-l curve through
/// 3d-2 general points. Throws ConsistencyError if the recursion yields a
/// negative number.
CountValue t1(int d, int l, MemoTable& memo);
CountValue t1(int d, int l);

/// Degrees of the WDVV map at the two boundary points of the four-point
/// moduli space. `lhs` = t1 + reducible_pair_sum, `rhs` = split_point_sum.
struct DegreeSides {
  CountValue lhs;
  CountValue rhs;
};

DegreeSides degree_sides(int d, int l, MemoTable& memo);
DegreeSides degree_sides(int d, int l);

}  // namespace tropwdvv
