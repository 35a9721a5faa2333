#include "tropmarg/constraints.hpp"

#include <deque>
#include <stdexcept>

namespace tropmarg {

std::string to_string(const VarId& v) {
  return "v" + std::to_string(v.tag) + "[" + std::to_string(v.row + 1) + "," +
         std::to_string(v.col + 1) + "]";
}

void ConstraintSystem::add_sum_ge(VarId u, VarId v, Scalar bound) {
  sum_ge_.push_back({u, v, std::move(bound)});
}

void ConstraintSystem::add_sum_eq(VarId u, VarId v, Scalar bound) {
  sum_eq_.push_back({u, v, std::move(bound)});
}

void ConstraintSystem::set_lower_bound(VarId v, Scalar bound) {
  lower_bounds_.insert_or_assign(v, std::move(bound));
}

namespace {

// Edge from -> to with weight w encodes t[to] - t[from] <= w.
struct Edge {
  std::size_t from;
  std::size_t to;
  mpq_class weight;
};

// Node 0 is the origin pinned at t = 0. Variables on side 1 are stored
// negated (t = -value); every sum constraint then becomes a difference.
struct DifferenceGraph {
  std::vector<VarId> vars;
  std::map<VarId, std::size_t> node;
  std::vector<int> side;
  std::vector<Edge> edges;

  std::size_t size() const { return vars.size() + 1; }
};

DifferenceGraph build_graph(const ConstraintSystem& system) {
  DifferenceGraph g;
  for (const auto& [var, bound] : system.lower_bounds()) {
    if (!bound.is_finite()) {
      throw std::invalid_argument("lower bound of " + to_string(var) + " must be finite");
    }
    g.node.emplace(var, g.vars.size() + 1);
    g.vars.push_back(var);
  }

  std::vector<std::vector<std::size_t>> adjacent(g.size());
  auto index_of = [&g](const VarId& v) {
    auto it = g.node.find(v);
    if (it == g.node.end()) throw std::invalid_argument(to_string(v) + " has no lower bound");
    return it->second;
  };
  auto link = [&](const SumConstraint& c) {
    if (!c.bound.is_finite()) throw std::invalid_argument("constraint constants must be finite");
    const std::size_t a = index_of(c.u);
    const std::size_t b = index_of(c.v);
    if (a == b) throw std::invalid_argument("constraint pairs " + to_string(c.u) + " with itself");
    adjacent[a].push_back(b);
    adjacent[b].push_back(a);
  };
  for (const auto& c : system.sum_ge()) link(c);
  for (const auto& c : system.sum_eq()) link(c);

  // Two-colour each component starting from its smallest variable.
  g.side.assign(g.size(), -1);
  g.side[0] = 0;
  for (std::size_t start = 1; start < g.size(); ++start) {
    if (g.side[start] != -1) continue;
    g.side[start] = 0;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      for (std::size_t next : adjacent[cur]) {
        if (g.side[next] == -1) {
          g.side[next] = 1 - g.side[cur];
          queue.push_back(next);
        } else if (g.side[next] == g.side[cur]) {
          throw std::invalid_argument("constraint graph is not bipartite at " +
                                      to_string(g.vars[next - 1]));
        }
      }
    }
  }

  auto add_sum = [&](const SumConstraint& c, bool equality) {
    std::size_t x = g.node.at(c.u);
    std::size_t y = g.node.at(c.v);
    if (g.side[x] == 1) std::swap(x, y);
    // x + y >= c  <=>  t[x] - t[y] >= c  <=>  t[y] - t[x] <= -c
    g.edges.push_back({x, y, -c.bound.value()});
    if (equality) g.edges.push_back({y, x, c.bound.value()});
  };
  for (const auto& c : system.sum_ge()) add_sum(c, false);
  for (const auto& c : system.sum_eq()) add_sum(c, true);

  for (const auto& [var, bound] : system.lower_bounds()) {
    const std::size_t v = g.node.at(var);
    if (g.side[v] == 0) {
      g.edges.push_back({v, 0, -bound.value()});  // t[0] - t[v] <= -lb
    } else {
      g.edges.push_back({0, v, -bound.value()});  // t[v] - t[0] <= -lb
    }
  }
  return g;
}

// Bellman-Ford from a virtual source joined to every node by a 0 edge.
// Returns potentials, or nullopt on a negative cycle.
std::optional<std::vector<mpq_class>> potentials(const DifferenceGraph& g) {
  std::vector<mpq_class> dist(g.size(), mpq_class(0));
  for (std::size_t round = 0; round <= g.size(); ++round) {
    bool changed = false;
    for (const Edge& e : g.edges) {
      mpq_class candidate = dist[e.from] + e.weight;
      if (candidate < dist[e.to]) {
        dist[e.to] = std::move(candidate);
        changed = true;
      }
    }
    if (!changed) return dist;
  }
  return std::nullopt;
}

Assignment to_assignment(const DifferenceGraph& g, const std::vector<mpq_class>& t) {
  Assignment out;
  for (std::size_t n = 1; n < g.size(); ++n) {
    out.emplace(g.vars[n - 1], g.side[n] == 0 ? t[n] : mpq_class(-t[n]));
  }
  return out;
}

}  // namespace

std::optional<Assignment> solve_feasible(const ConstraintSystem& system) {
  const DifferenceGraph g = build_graph(system);
  auto dist = potentials(g);
  if (!dist) return std::nullopt;
  std::vector<mpq_class> t(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) t[n] = (*dist)[n] - (*dist)[0];
  Assignment out = to_assignment(g, t);
  if (!satisfies(system, out)) throw std::logic_error("solver produced an infeasible point");
  return out;
}

std::optional<Assignment> solve_feasible_min(const ConstraintSystem& system) {
  const DifferenceGraph g = build_graph(system);
  if (!potentials(g)) return std::nullopt;

  // Least side-0 values: t[v] = -(shortest path v -> origin). Every side-0
  // node has an edge to the origin, so these are finite.
  std::vector<std::optional<mpq_class>> to_origin(g.size());
  to_origin[0] = mpq_class(0);
  for (std::size_t round = 0; round < g.size(); ++round) {
    bool changed = false;
    for (const Edge& e : g.edges) {
      if (!to_origin[e.to]) continue;
      mpq_class candidate = e.weight + *to_origin[e.to];
      if (!to_origin[e.from] || candidate < *to_origin[e.from]) {
        to_origin[e.from] = std::move(candidate);
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::vector<mpq_class> t(g.size());
  for (std::size_t n = 1; n < g.size(); ++n) {
    if (g.side[n] == 0) t[n] = -*to_origin[n];
  }
  // Side-1 nodes only have edges to side 0 and the origin, so with side 0
  // fixed the largest t (least value) is the tightest incoming bound.
  std::vector<std::optional<mpq_class>> cap(g.size());
  for (const Edge& e : g.edges) {
    if (e.to == 0 || g.side[e.to] != 1) continue;
    mpq_class candidate = t[e.from] + e.weight;
    if (!cap[e.to] || candidate < *cap[e.to]) cap[e.to] = std::move(candidate);
  }
  for (std::size_t n = 1; n < g.size(); ++n) {
    if (g.side[n] == 1) t[n] = *cap[n];
  }

  Assignment out = to_assignment(g, t);
  if (!satisfies(system, out)) throw std::logic_error("solver produced an infeasible point");
  return out;
}

bool satisfies(const ConstraintSystem& system, const Assignment& assignment) {
  auto value = [&assignment](const VarId& v) -> const mpq_class* {
    auto it = assignment.find(v);
    return it == assignment.end() ? nullptr : &it->second;
  };
  for (const auto& [var, bound] : system.lower_bounds()) {
    const mpq_class* x = value(var);
    if (x == nullptr || Scalar(*x) < bound) return false;
  }
  for (const auto& c : system.sum_ge()) {
    const mpq_class* u = value(c.u);
    const mpq_class* v = value(c.v);
    if (u == nullptr || v == nullptr || Scalar(mpq_class(*u + *v)) < c.bound) return false;
  }
  for (const auto& c : system.sum_eq()) {
    const mpq_class* u = value(c.u);
    const mpq_class* v = value(c.v);
    if (u == nullptr || v == nullptr || Scalar(mpq_class(*u + *v)) != c.bound) return false;
  }
  return true;
}

}  // namespace tropmarg
