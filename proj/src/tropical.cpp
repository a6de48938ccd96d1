#include "tropwdvv/tropical.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace tropwdvv {

namespace {

struct PathStep {
  std::size_t edge;
  Direction travel;
};

// For each vertex, the bounded edges crossed on the way from `root` and the
// direction of travel along each. Throws if the bounded edges do not form a
// spanning tree.
std::vector<std::vector<PathStep>> root_paths(const CombinatorialType& type, std::size_t root) {
  if (root >= type.vertex_count()) throw std::invalid_argument("root vertex out of range");
  if (!type.is_tree()) throw std::invalid_argument("combinatorial type is not a tree");

  std::vector<std::vector<std::pair<std::size_t, bool>>> incident(type.vertex_count());
  for (std::size_t e = 0; e < type.edges().size(); ++e) {
    incident[type.edges()[e].tail].push_back({e, true});
    incident[type.edges()[e].head].push_back({e, false});
  }

  std::vector<std::vector<PathStep>> paths(type.vertex_count());
  std::vector<bool> seen(type.vertex_count(), false);
  std::vector<std::size_t> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (auto [e, at_tail] : incident[v]) {
      const BoundedEdge& edge = type.edges()[e];
      const std::size_t next = at_tail ? edge.head : edge.tail;
      if (seen[next]) continue;
      seen[next] = true;
      paths[next] = paths[v];
      paths[next].push_back({e, at_tail ? edge.direction : -edge.direction});
      stack.push_back(next);
    }
  }
  return paths;
}

}  // namespace

std::int64_t cross(const Direction& u, const Direction& v) { return u.x * v.y - u.y * v.x; }

std::string to_string(const Direction& v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

Direction DegreeDelta::sum() const {
  Direction total;
  for (const auto& v : directions) total += v;
  return total;
}

bool DegreeDelta::same_multiset(const DegreeDelta& other) const {
  auto a = directions;
  auto b = other.directions;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

DegreeDelta standard_degree(int d) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  DegreeDelta delta;
  for (const Direction v : {Direction{-1, 0}, Direction{0, -1}, Direction{1, 1}}) {
    delta.directions.insert(delta.directions.end(), static_cast<std::size_t>(d), v);
  }
  return delta;
}

CombinatorialType::CombinatorialType(std::size_t vertex_count, std::vector<BoundedEdge> edges,
                                     std::vector<End> ends)
    : vertex_count_(vertex_count), edges_(std::move(edges)), ends_(std::move(ends)) {
  if (vertex_count_ == 0) throw std::invalid_argument("combinatorial type without vertices");
  for (const auto& e : edges_) {
    if (e.tail >= vertex_count_ || e.head >= vertex_count_) {
      throw std::invalid_argument("bounded edge refers to a missing vertex");
    }
    if (e.tail == e.head) throw std::invalid_argument("bounded edge is a loop");
  }
  std::set<std::size_t> labels;
  for (const auto& end : ends_) {
    if (end.vertex >= vertex_count_) throw std::invalid_argument("end refers to a missing vertex");
    if (end.marking) {
      if (!end.direction.is_zero()) throw std::invalid_argument("marked end must be contracted");
      if (!labels.insert(*end.marking).second) throw std::invalid_argument("duplicate marking label");
    } else if (end.direction.is_zero()) {
      throw std::invalid_argument("unmarked end with zero direction");
    }
  }
}

std::size_t CombinatorialType::marking_count() const {
  return static_cast<std::size_t>(
      std::count_if(ends_.begin(), ends_.end(), [](const End& e) { return e.marking.has_value(); }));
}

std::vector<std::size_t> CombinatorialType::valences() const {
  std::vector<std::size_t> valence(vertex_count_, 0);
  for (const auto& e : edges_) {
    ++valence[e.tail];
    ++valence[e.head];
  }
  for (const auto& end : ends_) ++valence[end.vertex];
  return valence;
}

bool CombinatorialType::is_tree() const {
  if (edges_.size() + 1 != vertex_count_) return false;
  // union-find; with |E| = |V| - 1, acyclic is equivalent to connected
  std::vector<std::size_t> parent(vertex_count_);
  for (std::size_t i = 0; i < vertex_count_; ++i) parent[i] = i;
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : edges_) {
    const auto a = find(e.tail);
    const auto b = find(e.head);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool CombinatorialType::is_trivalent() const {
  const auto valence = valences();
  return std::all_of(valence.begin(), valence.end(), [](std::size_t v) { return v == 3; });
}

DegreeDelta CombinatorialType::degree() const {
  DegreeDelta delta;
  for (const auto& end : ends_) {
    if (!end.marking) delta.directions.push_back(end.direction);
  }
  return delta;
}

Direction CombinatorialType::flag_sum(std::size_t vertex) const {
  Direction total;
  for (const auto& e : edges_) {
    if (e.tail == vertex) total += e.direction;
    if (e.head == vertex) total += -e.direction;
  }
  for (const auto& end : ends_) {
    if (end.vertex == vertex) total += end.direction;
  }
  return total;
}

bool check_balancing(const CombinatorialType& type) {
  for (std::size_t v = 0; v < type.vertex_count(); ++v) {
    if (!type.flag_sum(v).is_zero()) return false;
  }
  return true;
}

int codim(const CombinatorialType& type) {
  int total = 0;
  for (std::size_t valence : type.valences()) {
    if (valence < 3) throw std::invalid_argument("vertex of valence " + std::to_string(valence));
    total += static_cast<int>(valence) - 3;
  }
  return total;
}

long moduli_dimension(const CombinatorialType& type, const DegreeDelta& delta, std::size_t n) {
  if (!type.degree().same_multiset(delta)) throw std::invalid_argument("type has a different degree");
  if (type.marking_count() != n) throw std::invalid_argument("type has a different number of markings");
  return static_cast<long>(delta.size()) - 1 + static_cast<long>(n) - codim(type);
}

EvaluationMatrix build_ev_matrix(const CombinatorialType& type, std::size_t root) {
  const auto paths = root_paths(type, root);

  std::vector<const End*> marked;
  for (const auto& end : type.ends()) {
    if (end.marking) marked.push_back(&end);
  }
  std::sort(marked.begin(), marked.end(), [](const End* a, const End* b) { return *a->marking < *b->marking; });

  const std::size_t cols = 2 + type.edges().size();
  EvaluationMatrix ev{RationalMatrix(2 * marked.size(), cols), {}, {}};
  ev.column_labels = {"root.x", "root.y"};
  for (std::size_t e = 0; e < type.edges().size(); ++e) ev.column_labels.push_back("length[" + std::to_string(e) + "]");

  for (std::size_t i = 0; i < marked.size(); ++i) {
    const std::string name = "x" + std::to_string(*marked[i]->marking);
    ev.row_labels.push_back(name + ".x");
    ev.row_labels.push_back(name + ".y");
    ev.entries(2 * i, 0) = 1;
    ev.entries(2 * i + 1, 1) = 1;
    for (const auto& step : paths[marked[i]->vertex]) {
      ev.entries(2 * i, 2 + step.edge) = step.travel.x;
      ev.entries(2 * i + 1, 2 + step.edge) = step.travel.y;
    }
  }
  return ev;
}

CountValue ev_multiplicity(const CombinatorialType& type, std::size_t root) {
  const auto ev = build_ev_matrix(type, root);
  if (!ev.entries.square()) {
    throw std::invalid_argument("evaluation matrix is " + std::to_string(ev.entries.rows()) + "x" +
                                std::to_string(ev.entries.cols()) + ", wrong number of markings");
  }
  const Rational det = determinant(ev.entries);
  if (det.get_den() != 1) throw std::logic_error("integer matrix with a fractional determinant");
  return abs(det.get_num());
}

CountValue local_intersection_multiplicity(const Direction& u, const Direction& v) {
  const CountValue det = CountValue(static_cast<long>(u.x)) * static_cast<long>(v.y) -
                         CountValue(static_cast<long>(u.y)) * static_cast<long>(v.x);
  return abs(det);
}

CountValue bezout_total(int d1, int d2) {
  if (d1 < 1 || d2 < 1) throw std::invalid_argument("degrees must be >= 1");
  return CountValue(d1) * d2;
}

bool PointConfiguration::has_genericity_certificate() const {
  std::set<Rational> xs;
  std::set<Rational> ys;
  for (const auto& p : points) {
    if (!xs.insert(p.x).second || !ys.insert(p.y).second) return false;
  }
  return true;
}

PointConfiguration PointConfiguration::sample(std::size_t count, std::uint64_t seed, std::int64_t radius) {
  if (radius < static_cast<std::int64_t>(count)) throw std::invalid_argument("sampling grid too small");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coordinate(-radius, radius);
  PointConfiguration config;
  config.genericity_seed = seed;
  do {
    config.points.clear();
    for (std::size_t i = 0; i < count; ++i) {
      config.points.push_back({Rational(static_cast<long>(coordinate(rng))), Rational(static_cast<long>(coordinate(rng)))});
    }
  } while (!config.has_genericity_certificate());
  return config;
}

PlaneTropicalCurve::PlaneTropicalCurve(CombinatorialType type, std::size_t root_vertex, Point2 root_position,
                                       std::vector<Rational> lengths)
    : type_(std::move(type)),
      root_vertex_(root_vertex),
      root_position_(std::move(root_position)),
      lengths_(std::move(lengths)) {
  if (lengths_.size() != type_.edges().size()) throw std::invalid_argument("one length per bounded edge required");
  for (const auto& len : lengths_) {
    if (len <= 0) throw std::invalid_argument("bounded edge lengths must be positive");
  }
  // On a tree each vertex position is a single path sum, so h is well defined.
  const auto paths = root_paths(type_, root_vertex_);
  positions_.resize(type_.vertex_count());
  for (std::size_t v = 0; v < type_.vertex_count(); ++v) {
    Point2 p = root_position_;
    for (const auto& step : paths[v]) {
      p.x += lengths_[step.edge] * static_cast<long>(step.travel.x);
      p.y += lengths_[step.edge] * static_cast<long>(step.travel.y);
    }
    positions_[v] = p;
  }
  for (std::size_t e = 0; e < type_.edges().size(); ++e) {
    const auto& edge = type_.edges()[e];
    const Point2& a = positions_[edge.tail];
    const Point2& b = positions_[edge.head];
    if (b.x - a.x != lengths_[e] * static_cast<long>(edge.direction.x) ||
        b.y - a.y != lengths_[e] * static_cast<long>(edge.direction.y)) {
      throw std::logic_error("inconsistent vertex positions");
    }
  }
}

Point2 PlaneTropicalCurve::marking_position(std::size_t index) const {
  for (const auto& end : type_.ends()) {
    if (end.marking == index) return positions_[end.vertex];
  }
  throw std::out_of_range("no marking " + std::to_string(index));
}

PlaneTropicalCurve PlaneTropicalCurve::translated(const Point2& offset) const {
  Point2 root{root_position_.x + offset.x, root_position_.y + offset.y};
  return PlaneTropicalCurve(type_, root_vertex_, root, lengths_);
}

std::optional<PlaneTropicalCurve> solve_through_points(const CombinatorialType& type,
                                                       const PointConfiguration& points) {
  if (!type.is_trivalent() || !check_balancing(type)) {
    throw std::invalid_argument("solve_through_points needs a trivalent balanced type");
  }
  const std::size_t n = points.points.size();
  if (type.marking_count() != n) throw std::invalid_argument("marking count differs from point count");
  for (const auto& end : type.ends()) {
    if (end.marking && *end.marking >= n) throw std::invalid_argument("marking labels must be 0..n-1");
  }
  if (moduli_dimension(type, type.degree(), n) != static_cast<long>(2 * n)) {
    throw std::invalid_argument("moduli dimension differs from the number of point conditions");
  }
  if (!points.has_genericity_certificate()) {
    throw NonGenericConfiguration("points share a coordinate");
  }

  const std::size_t root = 0;
  const auto ev = build_ev_matrix(type, root);
  std::vector<Rational> rhs;
  for (const auto& p : points.points) {
    rhs.push_back(p.x);
    rhs.push_back(p.y);
  }
  const auto solved = solve_exact(ev.entries, rhs);
  switch (solved.status) {
    case SolveStatus::Inconsistent:
      return std::nullopt;
    case SolveStatus::SingularConsistent:
      throw NonGenericConfiguration("evaluation system is singular but consistent");
    case SolveStatus::Unique:
      break;
  }
  std::vector<Rational> lengths(solved.solution.begin() + 2, solved.solution.end());
  for (const auto& len : lengths) {
    if (len <= 0) return std::nullopt;
  }
  return PlaneTropicalCurve(type, root, Point2{solved.solution[0], solved.solution[1]}, std::move(lengths));
}

namespace {

// Image piece: start + s * direction for s in [0, extent], or s >= 0 for a ray.
struct ImagePiece {
  Point2 start;
  Direction direction;
  std::optional<Rational> extent;
};

std::vector<ImagePiece> image_pieces(const PlaneTropicalCurve& curve) {
  std::vector<ImagePiece> pieces;
  const auto& pos = curve.vertex_positions();
  for (std::size_t e = 0; e < curve.type().edges().size(); ++e) {
    const auto& edge = curve.type().edges()[e];
    if (!edge.direction.is_zero()) pieces.push_back({pos[edge.tail], edge.direction, curve.lengths()[e]});
  }
  for (const auto& end : curve.type().ends()) {
    if (!end.marking) pieces.push_back({pos[end.vertex], end.direction, std::nullopt});
  }
  return pieces;
}

// -1 outside, 0 on the boundary, 1 strictly inside
int classify(const Rational& s, const std::optional<Rational>& extent) {
  if (s < 0) return -1;
  if (s == 0) return 0;
  if (!extent) return 1;
  if (s > *extent) return -1;
  return s == *extent ? 0 : 1;
}

}  // namespace

CountValue intersection_multiplicity_sum(const PlaneTropicalCurve& a, const PlaneTropicalCurve& b) {
  const auto pieces_a = image_pieces(a);
  const auto pieces_b = image_pieces(b);
  CountValue total = 0;
  for (const auto& p : pieces_a) {
    for (const auto& q : pieces_b) {
      const Rational dx = q.start.x - p.start.x;
      const Rational dy = q.start.y - p.start.y;
      const long ux = static_cast<long>(p.direction.x), uy = static_cast<long>(p.direction.y);
      const long wx = static_cast<long>(q.direction.x), wy = static_cast<long>(q.direction.y);
      const long c = ux * wy - uy * wx;
      if (c == 0) {
        if (dx * uy - dy * ux != 0) continue;  // parallel, disjoint lines
        // collinear: compare parameter ranges along p
        const Rational norm = Rational(ux * ux + uy * uy);
        const Rational q0 = (dx * ux + dy * uy) / norm;
        const Rational scale = Rational(wx * ux + wy * uy) / norm;
        // q covers [lo, hi] along p, either end possibly infinite
        std::optional<Rational> lo, hi;
        if (q.extent) {
          const Rational q1 = q0 + *q.extent * scale;
          lo = q0 < q1 ? q0 : q1;
          hi = q0 < q1 ? q1 : q0;
        } else if (scale > 0) {
          lo = q0;
        } else {
          hi = q0;
        }
        const bool below = hi && *hi < 0;
        const bool above = lo && p.extent && *lo > *p.extent;
        if (!below && !above) throw NonGenericConfiguration("image curves overlap along a segment");
        continue;
      }
      const Rational s = (dx * wy - dy * wx) / Rational(c);
      const Rational t = (dx * uy - dy * ux) / Rational(c);
      const int in_p = classify(s, p.extent);
      const int in_q = classify(t, q.extent);
      if (in_p < 0 || in_q < 0) continue;
      if (in_p == 0 || in_q == 0) throw NonGenericConfiguration("image curves meet at a vertex");
      total += local_intersection_multiplicity(p.direction, q.direction);
    }
  }
  return total;
}

}  // namespace tropwdvv
