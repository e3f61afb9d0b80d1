#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tiling/core.hpp"

namespace tiling {

// The successor permutation walks the corners glued around one tiling vertex.
// With j the partner of the looked-up edge, the four transition rules are
//
//   from i+ via pair (i, j, +):   next is (j+1)+
//   from i+ via pair (i, j, -):   next is  j-
//   from i- via pair (i-1, j, -): next is (j+1)+
//   from i- via pair (i-1, j, +): next is  j-
//
// Reversing a successor cycle and flipping every sign yields another cycle of
// the permutation (the same vertex read in the opposite direction).

inline DecoratedCorner successor(const PlanarDiagram& d, DecoratedCorner c) {
  const int n = d.n();
  const int edge = c.sign == Sign::plus ? c.corner : mod_n(c.corner - 1, n);
  const int j = d.partner(edge);
  const Sign s = d.pair_sign(edge);
  const bool to_plus = (c.sign == Sign::plus) == (s == Sign::plus);
  return to_plus ? DecoratedCorner{mod_n(j + 1, n), Sign::plus}
                 : DecoratedCorner{j, Sign::minus};
}

/// The full permutation on all 2n decorated corners.
class SuccessorTable {
 public:
  explicit SuccessorTable(const PlanarDiagram& d)
      : n_(d.n()), table_(static_cast<size_t>(2 * d.n())) {
    for (int c = 0; c < n_; ++c) {
      table_[state_index({c, Sign::plus})] = successor(d, {c, Sign::plus});
      table_[state_index({c, Sign::minus})] = successor(d, {c, Sign::minus});
    }
  }

  DecoratedCorner next(DecoratedCorner c) const {
    return table_[state_index(c)];
  }

  static size_t state_index(DecoratedCorner c) {
    return static_cast<size_t>(2 * c.corner +
                               (c.sign == Sign::minus ? 1 : 0));
  }

 private:
  int n_;
  std::vector<DecoratedCorner> table_;
};

/// Partitions the corners into vertices by tracing successor cycles, always
/// starting from the + decoration of the smallest unassigned corner.
inline VertexSet vertices_of(const PlanarDiagram& d) {
  const int n = d.n();
  std::vector<char> assigned(static_cast<size_t>(n), 0);
  std::vector<Vertex> vertices;
  for (int start = 0; start < n; ++start) {
    if (assigned[static_cast<size_t>(start)]) continue;
    std::vector<DecoratedCorner> cycle;
    DecoratedCorner c{start, Sign::plus};
    do {
      if (assigned[static_cast<size_t>(c.corner)])
        fail(Errc::internal, "successor cycle revisits corner " +
                                 std::to_string(c.corner));
      assigned[static_cast<size_t>(c.corner)] = 1;
      cycle.push_back(c);
      c = successor(d, c);
    } while (!(c.corner == start && c.sign == Sign::plus));
    vertices.emplace_back(std::move(cycle));
  }
  return VertexSet(n, std::move(vertices));
}

namespace detail {

// Edge pair induced by two corners adjacent around a vertex.
inline EdgePair pair_of_adjacency(int n, DecoratedCorner x, DecoratedCorner y) {
  const bool xp = x.sign == Sign::plus;
  const bool yp = y.sign == Sign::plus;
  if (xp && yp) return {x.corner, mod_n(y.corner - 1, n), Sign::plus};
  if (xp && !yp) return {x.corner, y.corner, Sign::minus};
  if (!xp && yp)
    return {mod_n(x.corner - 1, n), mod_n(y.corner - 1, n), Sign::minus};
  return {mod_n(x.corner - 1, n), y.corner, Sign::plus};
}

// Of the four successor transitions belonging to one pair, two are mirror
// images of the other two. Given one adjacency slot of a pair, this returns
// the slot that is not its mirror.
inline std::pair<DecoratedCorner, DecoratedCorner> complement_adjacency(
    int n, const EdgePair& p, DecoratedCorner x) {
  const int a = p.a;
  const int b = p.b;
  if (p.sign == Sign::plus) {
    // Slots: (a+, (b+1)+) <-> (b+, (a+1)+); mirrors lead with minus signs.
    if (x.sign == Sign::plus) {
      const int other = x.corner == a ? b : a;
      return {{other, Sign::plus}, {mod_n((x.corner == a ? a : b) + 1, n),
                                    Sign::plus}};
    }
    // x is ((a+1)-, b-) or ((b+1)-, a-): complement is the other minus slot.
    const int xa = mod_n(x.corner - 1, n);
    const int other = xa == a ? b : a;
    return {{mod_n(other + 1, n), Sign::minus},
            {xa == a ? a : b, Sign::minus}};
  }
  // Twisted: slots (a+, b-) <-> ((a+1)-, (b+1)+) and the a<->b swaps.
  if (x.sign == Sign::plus) {
    const int other = x.corner == a ? b : a;
    return {{mod_n(x.corner + 1, n), Sign::minus},
            {mod_n(other + 1, n), Sign::plus}};
  }
  const int xa = mod_n(x.corner - 1, n);
  const int other = xa == a ? b : a;
  return {{other, Sign::plus}, {xa, Sign::minus}};
}

}  // namespace detail

/// Recovers the diagram a vertex set came from. Each of the n adjacencies
/// around the cycles induces one signed edge pair; a valid vertex set induces
/// every pair exactly twice.
inline PlanarDiagram diagram_of(const VertexSet& vs) {
  const int n = vs.n();
  std::vector<int> partner(static_cast<size_t>(n), -1);
  std::vector<Sign> sign(static_cast<size_t>(n), Sign::plus);
  std::map<EdgePair, int> count;
  for (const Vertex& v : vs.vertices()) {
    const auto& cyc = v.cycle();
    for (size_t i = 0; i < cyc.size(); ++i) {
      const DecoratedCorner x = cyc[i];
      const DecoratedCorner y = cyc[(i + 1) % cyc.size()];
      const EdgePair p = detail::pair_of_adjacency(n, x, y);
      if (p.a == p.b)
        fail(Errc::inconsistent,
             "adjacency induces edge " + std::to_string(p.a) +
                 " glued to itself");
      for (int e : {p.a, p.b}) {
        const int other = e == p.a ? p.b : p.a;
        if (partner[static_cast<size_t>(e)] == -1) {
          partner[static_cast<size_t>(e)] = other;
          sign[static_cast<size_t>(e)] = p.sign;
        } else if (partner[static_cast<size_t>(e)] != other ||
                   sign[static_cast<size_t>(e)] != p.sign) {
          fail(Errc::inconsistent,
               "edge " + std::to_string(e) + " induced with two gluings");
        }
      }
      ++count[p];
    }
  }
  std::vector<EdgePair> pairs;
  for (const auto& [p, c] : count) {
    if (c != 2)
      fail(Errc::not_two_to_one,
           "pair " + std::to_string(p.a) + "-" + std::to_string(p.b) +
               " induced " + std::to_string(c) + " times");
    pairs.push_back(p);
  }
  return PlanarDiagram(n, std::move(pairs));
}

/// Outcome of checking a candidate partition against the vertex-set
/// conditions, in check order:
///   a: every cycle has at least three corners
///   b: no adjacency i+,(i+1)+ (nor its mirror (i+1)-,i-)
///   d: no adjacency i+,(i+2)+ (implied by b and c, but cheap and reported
///      independently; it doubles as an enumeration pruning rule)
///   c: every adjacency's induced pair has its complementary adjacency present
struct ValidationReport {
  enum class Condition { none, a, b, d, c };
  bool ok = true;
  Condition first_violation = Condition::none;
  std::string detail;
};

inline const char* condition_name(ValidationReport::Condition c) {
  switch (c) {
    case ValidationReport::Condition::none: return "none";
    case ValidationReport::Condition::a: return "a (degree >= 3)";
    case ValidationReport::Condition::b: return "b (no i,(i+1) adjacency)";
    case ValidationReport::Condition::d: return "d (no i,(i+2) adjacency)";
    case ValidationReport::Condition::c: return "c (closure)";
  }
  return "?";
}

inline ValidationReport validate_vertex_set(const VertexSet& vs) {
  const int n = vs.n();
  ValidationReport report;
  auto violate = [&](ValidationReport::Condition cond, std::string detail) {
    report.ok = false;
    report.first_violation = cond;
    report.detail = std::move(detail);
    return report;
  };

  for (const Vertex& v : vs.vertices())
    if (v.degree() < 3)
      return violate(ValidationReport::Condition::a,
                     "vertex of degree " + std::to_string(v.degree()));

  // Adjacencies of every cycle in both presentations (as stored, and
  // sign-flipped reversed), encoded as x*2n + y over state indices.
  auto state = [](DecoratedCorner c) {
    return 2 * c.corner + (c.sign == Sign::minus ? 1 : 0);
  };
  std::unordered_set<int> adj;
  std::vector<std::pair<DecoratedCorner, DecoratedCorner>> listed;
  for (const Vertex& v : vs.vertices()) {
    const auto& cyc = v.cycle();
    for (size_t i = 0; i < cyc.size(); ++i) {
      const DecoratedCorner x = cyc[i];
      const DecoratedCorner y = cyc[(i + 1) % cyc.size()];
      listed.emplace_back(x, y);
      adj.insert(state(x) * 2 * n + state(y));
      adj.insert(state(flip(y)) * 2 * n + state(flip(x)));
    }
  }
  auto present = [&](DecoratedCorner x, DecoratedCorner y) {
    return adj.count(state(x) * 2 * n + state(y)) > 0;
  };

  for (int i = 0; i < n; ++i)
    if (present({i, Sign::plus}, {mod_n(i + 1, n), Sign::plus}))
      return violate(ValidationReport::Condition::b,
                     "corners " + std::to_string(i) + "," +
                         std::to_string(mod_n(i + 1, n)) + " adjacent");
  for (int i = 0; i < n; ++i)
    if (present({i, Sign::plus}, {mod_n(i + 2, n), Sign::plus}))
      return violate(ValidationReport::Condition::d,
                     "corners " + std::to_string(i) + "," +
                         std::to_string(mod_n(i + 2, n)) + " adjacent");

  for (const auto& [x, y] : listed) {
    const EdgePair p = detail::pair_of_adjacency(n, x, y);
    const auto [cx, cy] = detail::complement_adjacency(n, p, x);
    if (!present(cx, cy))
      return violate(
          ValidationReport::Condition::c,
          "adjacency " + std::to_string(x.corner) + sign_char(x.sign) +
              "," + std::to_string(y.corner) + sign_char(y.sign) +
              " lacks its complement");
  }
  return report;
}

/// Euler number, orientability, surface name and degree multiset of the
/// tiling a diagram defines.
inline TilingSummary classify(const PlanarDiagram& d) {
  const VertexSet vs = vertices_of(d);
  TilingSummary s;
  s.n = d.n();
  s.e = d.edge_count();
  s.v = vs.vertex_count();
  s.chi = s.v - s.e + 1;
  s.orientable = d.orientable();
  for (const Vertex& v : vs.vertices()) s.degree_multiset.push_back(v.degree());
  std::sort(s.degree_multiset.begin(), s.degree_multiset.end());
  s.degree_too_small = !s.degree_multiset.empty() && s.degree_multiset[0] < 3;

  // -2n*chi == sum over vertices of ((k-2)n - 2k) must hold identically.
  long long lhs = -2LL * s.n * s.chi;
  long long rhs = 0;
  for (int k : s.degree_multiset) rhs += (static_cast<long long>(k) - 2) * s.n - 2LL * k;
  if (lhs != rhs)
    fail(Errc::internal, "degree identity violated for diagram");

  s.surface_name = surface_class(s.n, s.v, s.orientable).second;
  return s;
}

}  // namespace tiling
