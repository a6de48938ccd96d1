#include "tropwdvv/enumerate.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace tropwdvv {

std::vector<LeafLabeledTree> trivalent_trees(std::size_t leaves) {
  if (leaves < 3) throw std::invalid_argument("a trivalent tree needs at least three leaves");
  // Grow by inserting leaf k into every edge of each tree on leaves 0..k-1.
  // Internal vertices are renumbered at the end so that they follow the leaves.
  struct Partial {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::size_t next_internal;
  };
  const std::size_t first_internal = leaves;
  std::vector<Partial> current{{{{0, first_internal}, {1, first_internal}, {2, first_internal}}, first_internal + 1}};
  for (std::size_t leaf = 3; leaf < leaves; ++leaf) {
    std::vector<Partial> grown;
    grown.reserve(current.size() * (2 * leaf - 3));
    for (const auto& tree : current) {
      for (std::size_t e = 0; e < tree.edges.size(); ++e) {
        Partial next = tree;
        const auto [a, b] = tree.edges[e];
        const std::size_t middle = tree.next_internal;
        next.edges[e] = {a, middle};
        next.edges.push_back({middle, b});
        next.edges.push_back({leaf, middle});
        next.next_internal = middle + 1;
        grown.push_back(std::move(next));
      }
    }
    current = std::move(grown);
  }
  std::vector<LeafLabeledTree> trees;
  trees.reserve(current.size());
  for (auto& tree : current) trees.push_back({leaves, std::move(tree.edges)});
  return trees;
}

namespace {

struct OrientedEdge {
  std::size_t from = 0;  // endpoint nearer the root (always internal)
  std::size_t to = 0;
  Direction direction;   // from -> to
  bool to_leaf = false;
  std::size_t column = 0;  // length column, bounded edges only
  std::vector<std::pair<std::size_t, Direction>> path;  // (column, travel) root -> from
};

struct EchelonRow {
  std::vector<CountValue> coef;
  CountValue rhs;
  std::size_t pivot = 0;
};

void normalize(EchelonRow& row) {
  CountValue g = abs(row.rhs);
  for (const auto& c : row.coef) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1) {
    for (auto& c : row.coef) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(row.rhs.get_mpz_t(), row.rhs.get_mpz_t(), g.get_mpz_t());
  }
}

class TreeRealizer {
 public:
  TreeRealizer(const LeafLabeledTree& tree, const DegreeDelta& delta, const PointConfiguration& points,
               std::chrono::steady_clock::time_point deadline, bool has_deadline)
      : tree_(tree), points_(points), deadline_(deadline), has_deadline_(has_deadline) {
    orient(delta);
  }

  bool has_contracted_edge() const { return contracted_; }

  std::vector<RealizedCurve> run() {
    if (contracted_) return {};
    assignment_.assign(points_.points.size(), 0);
    place(0);
    return std::move(found_);
  }

 private:
  void orient(const DegreeDelta& delta) {
    const std::size_t n = tree_.leaves;
    const std::size_t vertices = 2 * n - 2;
    std::vector<std::vector<std::size_t>> adjacent(vertices);
    for (const auto& [a, b] : tree_.edges) {
      adjacent[a].push_back(b);
      adjacent[b].push_back(a);
    }
    const std::size_t root = n;
    std::vector<std::size_t> parent(vertices, vertices), order{root};
    parent[root] = root;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t next : adjacent[order[i]]) {
        if (parent[next] != vertices) continue;
        parent[next] = order[i];
        order.push_back(next);
      }
    }
    // outgoing direction into each subtree = sum of its leaf directions
    std::vector<Direction> subtree(vertices);
    for (std::size_t leaf = 0; leaf < n; ++leaf) subtree[leaf] = delta.directions[leaf];
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (*it != root) subtree[parent[*it]] += subtree[*it];
    }

    std::vector<std::size_t> column_of(vertices, 0);
    std::vector<std::vector<std::pair<std::size_t, Direction>>> path_to(vertices);
    std::size_t column = 2;
    for (std::size_t v : order) {
      if (v == root) continue;
      OrientedEdge edge;
      edge.from = parent[v];
      edge.to = v;
      edge.direction = subtree[v];
      edge.to_leaf = v < n;
      edge.path = path_to[parent[v]];
      if (!edge.to_leaf) {
        if (edge.direction.is_zero()) contracted_ = true;
        edge.column = column++;
        path_to[v] = edge.path;
        path_to[v].push_back({edge.column, edge.direction});
      }
      edges_.push_back(std::move(edge));
    }
    columns_ = column;

    // A point p on edge e satisfies cross(v_e, p - h(from)) = 0.
    for (const auto& edge : edges_) {
      std::vector<CountValue> row(columns_, 0);
      const Direction& v = edge.direction;
      row[0] = -static_cast<long>(v.y);
      row[1] = static_cast<long>(v.x);
      for (const auto& [col, travel] : edge.path) row[col] = static_cast<long>(cross(v, travel));
      edge_rows_.push_back(std::move(row));
    }
  }

  EchelonRow condition(std::size_t marking, std::size_t edge) const {
    const Direction& v = edges_[edge].direction;
    const Point2& p = points_.points[marking];
    const Rational rhs = p.y * static_cast<long>(v.x) - p.x * static_cast<long>(v.y);
    EchelonRow row{edge_rows_[edge], rhs.get_num(), 0};
    if (rhs.get_den() != 1) {
      for (auto& c : row.coef) c *= rhs.get_den();
    }
    return row;
  }

  // Reduces `row` against the current echelon. Returns false for a dependent row.
  bool reduce(EchelonRow& row) const {
    for (const auto& pivot_row : echelon_) {
      const CountValue& b = row.coef[pivot_row.pivot];
      if (b == 0) continue;
      const CountValue a = pivot_row.coef[pivot_row.pivot];
      const CountValue factor = b;
      for (std::size_t c = 0; c < columns_; ++c) row.coef[c] = a * row.coef[c] - factor * pivot_row.coef[c];
      row.rhs = a * row.rhs - factor * pivot_row.rhs;
      normalize(row);
    }
    for (std::size_t c = 0; c < columns_; ++c) {
      if (row.coef[c] != 0) {
        row.pivot = c;
        return true;
      }
    }
    return false;
  }

  void place(std::size_t marking) {
    if (has_deadline_ && (++visited_ & 0xfff) == 0 && std::chrono::steady_clock::now() > deadline_) {
      throw BudgetExceeded("enumeration time budget exhausted");
    }
    if (marking == points_.points.size()) {
      realize();
      return;
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      EchelonRow row = condition(marking, e);
      if (!reduce(row)) {
        if (row.rhs != 0) continue;
        throw NonGenericConfiguration("point conditions are dependent but consistent");
      }
      assignment_[marking] = e;
      echelon_.push_back(std::move(row));
      place(marking + 1);
      echelon_.pop_back();
    }
  }

  void realize() {
    const std::size_t m = points_.points.size();
    RationalMatrix a(m, columns_);
    std::vector<Rational> b;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& edge = edges_[assignment_[i]];
      for (std::size_t c = 0; c < columns_; ++c) a(i, c) = edge_rows_[assignment_[i]][c];
      const Point2& p = points_.points[i];
      b.push_back(p.y * static_cast<long>(edge.direction.x) - p.x * static_cast<long>(edge.direction.y));
    }
    const auto solved = solve_exact(a, b);
    if (solved.status != SolveStatus::Unique) throw std::logic_error("full-rank echelon without a unique solution");
    const auto& x = solved.solution;

    for (std::size_t c = 2; c < columns_; ++c) {
      if (x[c] == 0) throw NonGenericConfiguration("solution has a zero edge length");
      if (x[c] < 0) return;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const auto& edge = edges_[assignment_[i]];
      Point2 start{x[0], x[1]};
      for (const auto& [col, travel] : edge.path) {
        start.x += x[col] * static_cast<long>(travel.x);
        start.y += x[col] * static_cast<long>(travel.y);
      }
      const Point2& p = points_.points[i];
      const long vx = static_cast<long>(edge.direction.x), vy = static_cast<long>(edge.direction.y);
      const Rational t = ((p.x - start.x) * vx + (p.y - start.y) * vy) / Rational(vx * vx + vy * vy);
      if (t == 0 || (!edge.to_leaf && t == x[edge.column])) {
        throw NonGenericConfiguration("point lies on a vertex of a candidate curve");
      }
      if (t < 0 || (!edge.to_leaf && t > x[edge.column])) return;
    }

    const CombinatorialType type = marked_type();
    auto curve = solve_through_points(type, points_);
    if (!curve) throw std::logic_error("reduced system realized a curve the evaluation system rejects");
    CountValue multiplicity = ev_multiplicity(type, curve->root_vertex());
    if (multiplicity != abs(bareiss_determinant(integer_rows()))) {
      throw std::logic_error("evaluation multiplicity differs from the reduced determinant");
    }
    found_.push_back({std::move(*curve), std::move(multiplicity)});
  }

  IntMatrix integer_rows() const {
    const std::size_t m = points_.points.size();
    IntMatrix rows(m, columns_);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < columns_; ++c) rows(i, c) = edge_rows_[assignment_[i]][c];
    }
    return rows;
  }

  // Tree with each marking subdividing its edge. Tree internal vertex
  // leaves+k becomes vertex k; marking i becomes vertex (leaves - 2) + i.
  CombinatorialType marked_type() const {
    const std::size_t n = tree_.leaves;
    const std::size_t m = points_.points.size();
    std::vector<std::optional<std::size_t>> marking_on(edges_.size());
    for (std::size_t i = 0; i < m; ++i) marking_on[assignment_[i]] = i;

    std::vector<BoundedEdge> bounded;
    std::vector<End> ends;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& edge = edges_[e];
      const std::size_t from = edge.from - n;
      std::size_t attach = from;
      if (marking_on[e]) {
        const std::size_t mv = (n - 2) + *marking_on[e];
        bounded.push_back({from, mv, edge.direction});
        ends.push_back(End::marked(mv, *marking_on[e]));
        attach = mv;
      }
      if (edge.to_leaf) {
        ends.push_back(End::unmarked(attach, edge.direction));
      } else {
        bounded.push_back({attach, edge.to - n, edge.direction});
      }
    }
    return CombinatorialType((n - 2) + m, std::move(bounded), std::move(ends));
  }

  const LeafLabeledTree& tree_;
  const PointConfiguration& points_;
  std::chrono::steady_clock::time_point deadline_;
  bool has_deadline_;

  std::vector<OrientedEdge> edges_;
  std::vector<std::vector<CountValue>> edge_rows_;
  std::size_t columns_ = 0;
  bool contracted_ = false;

  std::vector<std::size_t> assignment_;
  std::vector<EchelonRow> echelon_;
  std::vector<RealizedCurve> found_;
  std::size_t visited_ = 0;
};

CountValue factorial(int n) {
  CountValue result;
  mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
  return result;
}

}  // namespace

Enumeration enumerate_curves(int d, const PointConfiguration& points, const EnumerationOptions& options) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  if (d >= 3 && !options.allow_long) {
    throw LongRunningRefused("brute-force enumeration for degree " + std::to_string(d) +
                             " is long-running; pass allow_long to proceed");
  }
  if (points.points.size() != static_cast<std::size_t>(3 * d - 1)) {
    throw std::invalid_argument("degree " + std::to_string(d) + " needs " + std::to_string(3 * d - 1) + " points");
  }
  if (!points.has_genericity_certificate()) throw NonGenericConfiguration("points share a coordinate");

  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + options.budget.value_or(std::chrono::milliseconds(0));
  const bool has_deadline = options.budget.has_value();

  const DegreeDelta delta = standard_degree(d);
  const auto trees = trivalent_trees(delta.size());

  std::vector<std::vector<RealizedCurve>> per_tree(trees.size());
  std::vector<char> usable(trees.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= trees.size()) return;
      try {
        if (has_deadline && std::chrono::steady_clock::now() > deadline) {
          throw BudgetExceeded("enumeration time budget exhausted");
        }
        TreeRealizer realizer(trees[i], delta, points, deadline, has_deadline);
        usable[i] = !realizer.has_contracted_edge();
        per_tree[i] = realizer.run();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
    }
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  Enumeration result;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    result.unmarked_types += usable[i] ? 1 : 0;
    for (auto& realized : per_tree[i]) {
      result.labeled_total += realized.multiplicity;
      result.curves.push_back(std::move(realized));
    }
  }
  const CountValue labelings = [&] {
    const CountValue f = factorial(d);
    return CountValue(f * f * f);
  }();
  if (!mpz_divisible_p(result.labeled_total.get_mpz_t(), labelings.get_mpz_t())) {
    throw std::logic_error("labeled count " + to_decimal(result.labeled_total) + " is not divisible by (d!)^3");
  }
  result.count = result.labeled_total / labelings;
  return result;
}

CountValue count_through_points(int d, const PointConfiguration& points, const EnumerationOptions& options) {
  return enumerate_curves(d, points, options).count;
}

}  // namespace tropwdvv

namespace tropwdvv {

CombinatorialType random_trivalent_type(std::size_t unmarked_ends, std::mt19937_64& rng) {
  if (unmarked_ends < 2) throw std::invalid_argument("need at least two unmarked ends");
  const std::size_t k = unmarked_ends;
  const std::size_t n = 2 * k - 1;  // leaves: k unmarked, then k - 1 markings

  std::uniform_int_distribution<int> coordinate(-3, 3);
  std::vector<Direction> directions;
  do {
    directions.clear();
    Direction total;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      Direction v;
      while (v.is_zero()) v = {coordinate(rng), coordinate(rng)};
      directions.push_back(v);
      total += v;
    }
    directions.push_back(-total);
  } while (directions.back().is_zero());

  // random leaf insertion, leaves 0..n-1, internal n..
  std::vector<std::pair<std::size_t, std::size_t>> edges{{0, n}, {1, n}, {2, n}};
  std::size_t next_internal = n + 1;
  for (std::size_t leaf = 3; leaf < n; ++leaf) {
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    const std::size_t e = pick(rng);
    const auto [a, b] = edges[e];
    edges[e] = {a, next_internal};
    edges.push_back({next_internal, b});
    edges.push_back({leaf, next_internal});
    ++next_internal;
  }

  const std::size_t vertices = next_internal;
  std::vector<std::vector<std::size_t>> adjacent(vertices);
  for (const auto& [a, b] : edges) {
    adjacent[a].push_back(b);
    adjacent[b].push_back(a);
  }
  std::vector<std::size_t> parent(vertices, vertices), order{n};
  parent[n] = n;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t next : adjacent[order[i]]) {
      if (parent[next] != vertices) continue;
      parent[next] = order[i];
      order.push_back(next);
    }
  }
  std::vector<Direction> subtree(vertices);
  for (std::size_t leaf = 0; leaf < k; ++leaf) subtree[leaf] = directions[leaf];
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != n) subtree[parent[*it]] += subtree[*it];
  }

  std::vector<BoundedEdge> bounded;
  std::vector<End> ends;
  for (std::size_t v : order) {
    if (v == n) continue;
    const std::size_t from = parent[v] - n;
    if (v < k) {
      ends.push_back(End::unmarked(from, subtree[v]));
    } else if (v < n) {
      ends.push_back(End::marked(from, v - k));
    } else {
      bounded.push_back({from, v - n, subtree[v]});
    }
  }
  return CombinatorialType(vertices - n, std::move(bounded), std::move(ends));
}

}  // namespace tropwdvv
