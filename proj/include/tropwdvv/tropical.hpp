#pragma once

#include "tropwdvv/count_value.hpp"
#include "tropwdvv/exact_linalg.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropwdvv {

/// Integer direction vector of a flag. The zero vector marks a contracted
/// edge: every marked end, and possibly a bounded edge.
struct Direction {
  std::int64_t x = 0;
  std::int64_t y = 0;

  bool is_zero() const { return x == 0 && y == 0; }
  Direction operator-() const { return {-x, -y}; }
  Direction operator+(const Direction& o) const { return {x + o.x, y + o.y}; }
  Direction& operator+=(const Direction& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  auto operator<=>(const Direction&) const = default;
};

/// det(u, v) = u.x v.y - u.y v.x
std::int64_t cross(const Direction& u, const Direction& v);

std::string to_string(const Direction& v);

struct Point2 {
  Rational x;
  Rational y;

  bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
};

/// Multiset of directions of the non-marked ends.
struct DegreeDelta {
  std::vector<Direction> directions;

  std::size_t size() const { return directions.size(); }
  Direction sum() const;
  /// Same multiset, ignoring order.
  bool same_multiset(const DegreeDelta& other) const;
};

/// d copies each of (-1,0), (0,-1), (1,1), in that order.
DegreeDelta standard_degree(int d);

/// A bounded edge. `direction` is the flag at `tail` pointing towards `head`;
/// the flag at `head` carries the opposite vector.
struct BoundedEdge {
  std::size_t tail = 0;
  std::size_t head = 0;
  Direction direction;
};

/// An unbounded end attached to `vertex`. Marked ends are contracted and
/// carry the zero direction.
struct End {
  std::size_t vertex = 0;
  std::optional<std::size_t> marking;
  Direction direction;

  static End marked(std::size_t vertex, std::size_t index) { return {vertex, index, {}}; }
  static End unmarked(std::size_t vertex, Direction direction) { return {vertex, std::nullopt, direction}; }
};

/// Marked graph with directions on all flags. The constructor checks only
/// structural well-formedness (indices, contracted markings, unique marking
/// labels); balancing and valence are separate queries.
class CombinatorialType {
 public:
  CombinatorialType(std::size_t vertex_count, std::vector<BoundedEdge> edges, std::vector<End> ends);

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<BoundedEdge>& edges() const { return edges_; }
  const std::vector<End>& ends() const { return ends_; }

  std::size_t marking_count() const;
  std::vector<std::size_t> valences() const;
  /// Connected with |edges| = |vertices| - 1.
  bool is_tree() const;
  bool is_trivalent() const;
  /// Directions of the unmarked ends.
  DegreeDelta degree() const;
  /// Sum of outgoing flag directions at `vertex`.
  Direction flag_sum(std::size_t vertex) const;

 private:
  std::size_t vertex_count_;
  std::vector<BoundedEdge> edges_;
  std::vector<End> ends_;
};

bool check_balancing(const CombinatorialType& type);

/// Sum over vertices of (valence - 3). Throws if some valence is below 3.
int codim(const CombinatorialType& type);

/// |delta| - 1 + n - codim(type). Throws std::invalid_argument if the type
/// does not have degree `delta` and `n` marked ends.
long moduli_dimension(const CombinatorialType& type, const DegreeDelta& delta, std::size_t n);

/// Linear map from cell coordinates (root position, bounded-edge lengths) to
/// marking positions. Two rows per marking in marking order.
struct EvaluationMatrix {
  RationalMatrix entries;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
};

/// Row pair of marking i is h(root) + sum of length(e) * v(e) along the path
/// from `root` to the vertex carrying the marking. Throws on non-trees.
EvaluationMatrix build_ev_matrix(const CombinatorialType& type, std::size_t root);

/// |det| of the evaluation matrix. Throws std::invalid_argument when the
/// matrix is not square.
CountValue ev_multiplicity(const CombinatorialType& type, std::size_t root = 0);

/// |det(u, v)|
CountValue local_intersection_multiplicity(const Direction& u, const Direction& v);

/// d1 * d2
CountValue bezout_total(int d1, int d2);

/// The points (or a derived incidence problem) are special: some exact
/// system became singular but consistent, a solution landed on a cell
/// boundary, or the coordinate certificate failed.
class NonGenericConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PointConfiguration {
  std::vector<Point2> points;
  std::uint64_t genericity_seed = 0;

  /// Pairwise distinct x coordinates and pairwise distinct y coordinates.
  bool has_genericity_certificate() const;

  /// `count` integer points drawn uniformly from [-radius, radius]^2 with a
  /// seeded generator, redrawn until the certificate holds.
  static PointConfiguration sample(std::size_t count, std::uint64_t seed, std::int64_t radius = 1'000'000);
};

/// A combinatorial type with cell coordinates: the root image and one
/// positive length per bounded edge (same order as type.edges()).
class PlaneTropicalCurve {
 public:
  PlaneTropicalCurve(CombinatorialType type, std::size_t root_vertex, Point2 root_position,
                     std::vector<Rational> lengths);

  const CombinatorialType& type() const { return type_; }
  std::size_t root_vertex() const { return root_vertex_; }
  const Point2& root_position() const { return root_position_; }
  const std::vector<Rational>& lengths() const { return lengths_; }

  const std::vector<Point2>& vertex_positions() const { return positions_; }
  /// Image of marking `index`.
  Point2 marking_position(std::size_t index) const;

  PlaneTropicalCurve translated(const Point2& offset) const;

 private:
  CombinatorialType type_;
  std::size_t root_vertex_;
  Point2 root_position_;
  std::vector<Rational> lengths_;
  std::vector<Point2> positions_;
};

/// Solves ev(root, lengths) = points for a trivalent balanced type. Returns
/// the curve iff the solution is unique with all lengths strictly positive.
/// Throws NonGenericConfiguration if the system is singular but consistent
/// or the points lack the coordinate certificate.
std::optional<PlaneTropicalCurve> solve_through_points(const CombinatorialType& type,
                                                       const PointConfiguration& points);

/// Sum of local intersection multiplicities over all crossings of the two
/// image curves. Throws NonGenericConfiguration if they meet at a vertex or
/// overlap along a segment.
CountValue intersection_multiplicity_sum(const PlaneTropicalCurve& a, const PlaneTropicalCurve& b);

}  // namespace tropwdvv
