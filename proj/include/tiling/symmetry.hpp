#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "tiling/core.hpp"
#include "tiling/trace.hpp"

namespace tiling {

// The dihedral group of order 2n acts on corner labels by i -> c+i
// (rotations) and i -> c-i (reflections). Edges inherit the action from
// their endpoints: edge i -> i+c under a rotation and i -> c-i-1 under a
// reflection. Signs are never changed.

struct DihedralElement {
  enum class Kind { rotation, reflection };
  Kind kind = Kind::rotation;
  int c = 0;

  static DihedralElement identity() { return {Kind::rotation, 0}; }
  static DihedralElement rotation(int c) { return {Kind::rotation, c}; }
  static DihedralElement reflection(int c) { return {Kind::reflection, c}; }

  DihedralElement inverse(int n) const {
    if (kind == Kind::reflection) return *this;
    return {Kind::rotation, mod_n(n - c, n)};
  }

  int apply_to_corner(int i, int n) const {
    return kind == Kind::rotation ? mod_n(i + c, n) : mod_n(c - i, n);
  }

  int apply_to_edge(int i, int n) const {
    return kind == Kind::rotation ? mod_n(i + c, n) : mod_n(c - i - 1, n);
  }

  friend bool operator==(const DihedralElement&,
                         const DihedralElement&) = default;
};

inline std::vector<DihedralElement> dihedral_elements(int n) {
  std::vector<DihedralElement> out;
  out.reserve(static_cast<size_t>(2 * n));
  for (int c = 0; c < n; ++c) out.push_back(DihedralElement::rotation(c));
  for (int c = 0; c < n; ++c) out.push_back(DihedralElement::reflection(c));
  return out;
}

inline PlanarDiagram transform_diagram(const PlanarDiagram& d,
                                       DihedralElement g) {
  std::vector<EdgePair> pairs;
  pairs.reserve(d.pairs().size());
  for (const EdgePair& p : d.pairs())
    pairs.emplace_back(g.apply_to_edge(p.a, d.n()), g.apply_to_edge(p.b, d.n()),
                       p.sign);
  return PlanarDiagram(d.n(), std::move(pairs));
}

/// Rotations keep each cycle's circular order; reflections reverse every
/// cycle. Corner decorations are kept in both cases, which is what makes this
/// action commute with transform_diagram through the successor trace (the
/// reflected diagram's trace visits the mapped corners in reversed order with
/// unchanged signs). Cycles re-canonicalize on construction.
inline VertexSet transform_vertex_set(const VertexSet& vs, DihedralElement g) {
  const int n = vs.n();
  std::vector<Vertex> vertices;
  vertices.reserve(vs.vertices().size());
  for (const Vertex& v : vs.vertices()) {
    std::vector<DecoratedCorner> cycle;
    cycle.reserve(v.cycle().size());
    for (const DecoratedCorner& c : v.cycle())
      cycle.push_back({g.apply_to_corner(c.corner, n), c.sign});
    if (g.kind == DihedralElement::Kind::reflection)
      std::reverse(cycle.begin(), cycle.end());
    vertices.emplace_back(std::move(cycle));
  }
  return VertexSet(n, std::move(vertices));
}

/// Total order on a diagram's dihedral orbit. The code lists, for each edge
/// 0..n-1 in order, its partner label then its sign (with + < -); equal keys
/// mean equivalent diagrams.
struct CanonicalKey {
  int n = 0;
  std::vector<std::uint8_t> code;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

/// The (not yet minimized) encoding of a diagram as laid out in CanonicalKey.
inline std::vector<std::uint8_t> encode_diagram(const PlanarDiagram& d) {
  std::vector<std::uint8_t> code;
  code.reserve(static_cast<size_t>(2 * d.n()));
  for (int i = 0; i < d.n(); ++i) {
    code.push_back(static_cast<std::uint8_t>(d.partner(i)));
    code.push_back(static_cast<std::uint8_t>(d.pair_sign(i)));
  }
  return code;
}

inline PlanarDiagram decode_diagram(int n,
                                    const std::vector<std::uint8_t>& code) {
  std::vector<EdgePair> pairs;
  for (int i = 0; i < n; ++i) {
    const int j = code[static_cast<size_t>(2 * i)];
    if (j > i) continue;
    pairs.emplace_back(i, j,
                       static_cast<Sign>(code[static_cast<size_t>(2 * i + 1)]));
  }
  return PlanarDiagram(n, std::move(pairs));
}

struct CanonicalForm {
  CanonicalKey key;
  PlanarDiagram representative;
  /// Number of the 2n group elements fixing the diagram; divides 2n.
  int stabilizer_order = 1;
};

inline CanonicalForm canonical_form(const PlanarDiagram& d) {
  const int n = d.n();
  std::vector<std::uint8_t> self = encode_diagram(d);
  std::vector<std::uint8_t> best = self;
  int stabilizer = 0;
  std::vector<std::uint8_t> code;
  for (const DihedralElement& g : dihedral_elements(n)) {
    code.clear();
    for (int i = 0; i < n; ++i) {
      // Edge i of the transformed diagram comes from edge g^{-1}(i).
      const int src = g.kind == DihedralElement::Kind::rotation
                          ? mod_n(i - g.c, n)
                          : mod_n(g.c - i - 1, n);
      code.push_back(static_cast<std::uint8_t>(g.apply_to_edge(d.partner(src), n)));
      code.push_back(static_cast<std::uint8_t>(d.pair_sign(src)));
    }
    if (code == self) ++stabilizer;
    if (code < best) best = code;
  }
  return {CanonicalKey{n, best}, decode_diagram(n, best), stabilizer};
}

inline CanonicalKey canonical_key(const PlanarDiagram& d) {
  return canonical_form(d).key;
}

/// True when no dihedral transform of d has a smaller encoding.
inline bool is_canonical(const PlanarDiagram& d) {
  CanonicalForm f = canonical_form(d);
  return f.key.code == encode_diagram(d);
}

inline bool equivalent(const PlanarDiagram& a, const PlanarDiagram& b) {
  if (a.n() != b.n())
    fail(Errc::size_mismatch, "diagrams have polygon sizes " +
                                  std::to_string(a.n()) + " and " +
                                  std::to_string(b.n()));
  return canonical_key(a) == canonical_key(b);
}

inline bool equivalent(const VertexSet& a, const VertexSet& b) {
  if (a.n() != b.n())
    fail(Errc::size_mismatch, "vertex sets have corner counts " +
                                  std::to_string(a.n()) + " and " +
                                  std::to_string(b.n()));
  return canonical_key(diagram_of(a)) == canonical_key(diagram_of(b));
}

}  // namespace tiling
