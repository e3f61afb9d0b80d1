#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tiling {

/// Largest polygon size the library accepts. Encodings store edge labels in
/// one byte, and the search engine uses fixed-size state arrays.
inline constexpr int kMaxPolygonSize = 64;

enum class Errc {
  not_even,
  not_a_matching,
  self_pair,
  out_of_scope,
  inconsistent_orientability,
  inconsistent,
  not_two_to_one,
  not_partition,
  size_mismatch,
  filter_contradiction,
  too_large,
  syntax_error,
  count_mismatch,
  non_canonical_line,
  not_sorted,
  ambiguous,
  internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::not_even: return "NotEven";
    case Errc::not_a_matching: return "NotAMatching";
    case Errc::self_pair: return "SelfPair";
    case Errc::out_of_scope: return "OutOfScope";
    case Errc::inconsistent_orientability: return "InconsistentOrientability";
    case Errc::inconsistent: return "Inconsistent";
    case Errc::not_two_to_one: return "NotTwoToOne";
    case Errc::not_partition: return "NotPartition";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::filter_contradiction: return "FilterContradiction";
    case Errc::too_large: return "TooLarge";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::count_mismatch: return "CountMismatch";
    case Errc::non_canonical_line: return "NonCanonicalLine";
    case Errc::not_sorted: return "NotSorted";
    case Errc::ambiguous: return "Ambiguous";
    case Errc::internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

/// Least nonnegative residue of x modulo n.
constexpr int mod_n(int x, int n) {
  int r = x % n;
  return r < 0 ? r + n : r;
}

/// Identification sign of an edge pair: opposing (+) keeps the boundary
/// orientations aligned, twisted (-) reverses one side. The underlying values
/// fix the total order plus < minus used by every canonical encoding.
enum class Sign : std::uint8_t { plus = 0, minus = 1 };

constexpr Sign operator-(Sign s) {
  return s == Sign::plus ? Sign::minus : Sign::plus;
}

constexpr char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

/// A polygon corner together with an orientation sign. These are the 2n
/// states traversed by the successor permutation.
struct DecoratedCorner {
  int corner = 0;
  Sign sign = Sign::plus;

  friend constexpr auto operator<=>(const DecoratedCorner&,
                                    const DecoratedCorner&) = default;
};

inline DecoratedCorner flip(DecoratedCorner c) { return {c.corner, -c.sign}; }

/// An unordered pair of distinct edge labels plus a sign, stored with the
/// smaller label first.
struct EdgePair {
  int a = 0;
  int b = 0;
  Sign sign = Sign::plus;

  EdgePair() = default;
  EdgePair(int a_, int b_, Sign s) : a(a_), b(b_), sign(s) {
    if (a > b) std::swap(a, b);
  }

  friend constexpr auto operator<=>(const EdgePair&, const EdgePair&) = default;
};

/// A perfect matching of the n edge labels of an n-gon (n = 2e) into e signed
/// pairs. Pairs are kept sorted, giving every diagram a unique in-memory
/// normal form; equality is plain member comparison.
class PlanarDiagram {
 public:
  PlanarDiagram(int n, std::vector<EdgePair> pairs) : n_(n) {
    if (n < 4) fail(Errc::out_of_scope, "polygon size must be at least 4");
    if (n % 2 != 0)
      fail(Errc::not_even, "polygon size " + std::to_string(n) + " is odd");
    if (n > kMaxPolygonSize)
      fail(Errc::out_of_scope,
           "polygon size exceeds supported maximum " +
               std::to_string(kMaxPolygonSize));
    partner_.assign(static_cast<size_t>(n), -1);
    sign_.assign(static_cast<size_t>(n), Sign::plus);
    for (const EdgePair& p : pairs) {
      if (p.a == p.b)
        fail(Errc::self_pair, "edge " + std::to_string(p.a) +
                                  " cannot be glued to itself");
      if (p.a < 0 || p.b >= n)
        fail(Errc::not_a_matching,
             "edge label out of range: " + std::to_string(p.a < 0 ? p.a : p.b));
      for (int x : {p.a, p.b}) {
        if (partner_[static_cast<size_t>(x)] != -1)
          fail(Errc::not_a_matching,
               "edge " + std::to_string(x) + " appears in two pairs");
      }
      partner_[static_cast<size_t>(p.a)] = p.b;
      partner_[static_cast<size_t>(p.b)] = p.a;
      sign_[static_cast<size_t>(p.a)] = p.sign;
      sign_[static_cast<size_t>(p.b)] = p.sign;
    }
    for (int x = 0; x < n; ++x) {
      if (partner_[static_cast<size_t>(x)] == -1)
        fail(Errc::not_a_matching, "edge " + std::to_string(x) + " is unpaired");
    }
    pairs_ = std::move(pairs);
    std::sort(pairs_.begin(), pairs_.end());
  }

  int n() const { return n_; }
  int edge_count() const { return n_ / 2; }
  const std::vector<EdgePair>& pairs() const { return pairs_; }

  /// The edge glued to `edge`.
  int partner(int edge) const { return partner_[static_cast<size_t>(edge)]; }
  /// The sign of the pair containing `edge`.
  Sign pair_sign(int edge) const { return sign_[static_cast<size_t>(edge)]; }

  bool orientable() const {
    return std::all_of(pairs_.begin(), pairs_.end(),
                       [](const EdgePair& p) { return p.sign == Sign::plus; });
  }

  friend bool operator==(const PlanarDiagram& x, const PlanarDiagram& y) {
    return x.n_ == y.n_ && x.pairs_ == y.pairs_;
  }

 private:
  int n_;
  std::vector<EdgePair> pairs_;
  std::vector<int> partner_;
  std::vector<Sign> sign_;
};

inline PlanarDiagram new_diagram(
    int n, const std::vector<std::tuple<int, int, Sign>>& pairs) {
  std::vector<EdgePair> ps;
  ps.reserve(pairs.size());
  for (const auto& [a, b, s] : pairs) ps.emplace_back(a, b, s);
  return PlanarDiagram(n, std::move(ps));
}

/// One tiling vertex: a circularly ordered cycle of decorated corners. The
/// stored representative is the lexicographically least sequence among all
/// rotations of the cycle and all rotations of its sign-flipped reversal,
/// which are the two presentations of the same vertex.
class Vertex {
 public:
  explicit Vertex(std::vector<DecoratedCorner> cycle)
      : cycle_(canonical_cycle(std::move(cycle))) {}

  int degree() const { return static_cast<int>(cycle_.size()); }
  const std::vector<DecoratedCorner>& cycle() const { return cycle_; }

  friend auto operator<=>(const Vertex&, const Vertex&) = default;

  static std::vector<DecoratedCorner> canonical_cycle(
      std::vector<DecoratedCorner> c) {
    if (c.empty()) fail(Errc::not_partition, "empty vertex cycle");
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = i + 1; j < c.size(); ++j)
        if (c[i].corner == c[j].corner)
          fail(Errc::not_partition,
               "corner " + std::to_string(c[i].corner) + " repeated in cycle");
    std::vector<DecoratedCorner> reversed(c.rbegin(), c.rend());
    for (DecoratedCorner& d : reversed) d = flip(d);
    std::vector<DecoratedCorner> best = c;
    auto consider_rotations = [&](const std::vector<DecoratedCorner>& seq) {
      std::vector<DecoratedCorner> rot = seq;
      for (size_t k = 0; k < seq.size(); ++k) {
        if (rot < best) best = rot;
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      }
    };
    consider_rotations(c);
    consider_rotations(reversed);
    return best;
  }

 private:
  std::vector<DecoratedCorner> cycle_;
};

/// A partition of the n corners into vertices.
class VertexSet {
 public:
  VertexSet(int n, std::vector<Vertex> vertices) : n_(n) {
    if (n < 2 || n % 2 != 0)
      fail(Errc::not_even, "corner count " + std::to_string(n) + " is odd");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (const Vertex& v : vertices) {
      for (const DecoratedCorner& c : v.cycle()) {
        if (c.corner < 0 || c.corner >= n)
          fail(Errc::not_partition,
               "corner " + std::to_string(c.corner) + " out of range");
        if (seen[static_cast<size_t>(c.corner)])
          fail(Errc::not_partition,
               "corner " + std::to_string(c.corner) + " appears twice");
        seen[static_cast<size_t>(c.corner)] = 1;
      }
    }
    for (int c = 0; c < n; ++c)
      if (!seen[static_cast<size_t>(c)])
        fail(Errc::not_partition, "corner " + std::to_string(c) + " missing");
    vertices_ = std::move(vertices);
    std::sort(vertices_.begin(), vertices_.end());
  }

  int n() const { return n_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  friend bool operator==(const VertexSet& x, const VertexSet& y) {
    return x.n_ == y.n_ && x.vertices_ == y.vertices_;
  }

 private:
  int n_;
  std::vector<Vertex> vertices_;
};

/// Names the closed surface with the given Euler number. Orientable surfaces
/// are gT2 with chi = 2 - 2g, non-orientable ones kP2 with chi = 2 - k.
inline std::pair<int, std::string> surface_class(int n, int v,
                                                 bool all_signs_positive) {
  if (v < 1) fail(Errc::out_of_scope, "vertex count must be positive");
  if (n < 2 || n % 2 != 0)
    fail(Errc::not_even, "polygon size " + std::to_string(n) + " is odd");
  const int chi = v - n / 2 + 1;
  if (all_signs_positive) {
    if (mod_n(chi, 2) != 0)
      fail(Errc::inconsistent_orientability,
           "orientable surface cannot have odd Euler number " +
               std::to_string(chi));
    return {chi, std::to_string((2 - chi) / 2) + "T2"};
  }
  return {chi, std::to_string(2 - chi) + "P2"};
}

/// Derived invariants of a diagram: vertex count, Euler number, orientability,
/// surface name and the sorted vertex degrees.
struct TilingSummary {
  int n = 0;
  int e = 0;
  int v = 0;
  int chi = 0;
  bool orientable = true;
  std::string surface_name;
  std::vector<int> degree_multiset;
  /// Set when some vertex has degree < 3; such diagrams fall outside the
  /// standing minimum-degree assumption and are not counted as tilings.
  bool degree_too_small = false;
};

}  // namespace tiling
