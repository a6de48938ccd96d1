#pragma once

#include "tropwdvv/tropical.hpp"

#include <chrono>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tropwdvv {

/// Degree >= 3 requested without EnumerationOptions::allow_long.
class LongRunningRefused : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
  unsigned jobs = 1;
  bool allow_long = false;
  std::optional<std::chrono::milliseconds> budget;
};

/// Trivalent tree with leaves 0..leaves-1 and internal vertices
/// leaves..2*leaves-3.
struct LeafLabeledTree {
  std::size_t leaves = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// All (2n-5)!! trivalent trees on n >= 3 labeled leaves.
std::vector<LeafLabeledTree> trivalent_trees(std::size_t leaves);

struct RealizedCurve {
  PlaneTropicalCurve curve;
  CountValue multiplicity;
};

struct Enumeration {
  /// Every realized type with labeled unmarked ends, in enumeration order.
  std::vector<RealizedCurve> curves;
  /// Multiplicity sum over labeled-end types.
  CountValue labeled_total;
  /// labeled_total / (d!)^3, the count with unlabeled ends.
  CountValue count;
  std::size_t unmarked_types = 0;
};

/// Brute-force count of rational degree-d tropical curves through 3d-1
/// points, each weighted by its evaluation multiplicity. Throws
/// NonGenericConfiguration if the points turn out to be special,
/// LongRunningRefused for d >= 3 unless allowed, BudgetExceeded on timeout.
Enumeration enumerate_curves(int d, const PointConfiguration& points, const EnumerationOptions& options = {});

CountValue count_through_points(int d, const PointConfiguration& points, const EnumerationOptions& options = {});

}  // namespace tropwdvv

namespace tropwdvv {

/// Random balanced trivalent type with `unmarked_ends` unmarked ends
/// (random nonzero directions in [-3,3]^2 summing to zero) and
/// unmarked_ends - 1 markings, so that its evaluation matrix is square.
CombinatorialType random_trivalent_type(std::size_t unmarked_ends, std::mt19937_64& rng);

}  // namespace tropwdvv
