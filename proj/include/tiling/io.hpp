#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iosfwd>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tiling/core.hpp"
#include "tiling/symmetry.hpp"
#include "tiling/trace.hpp"
#include "tiling/version.hpp"

namespace tiling {

namespace detail {

// Shared scanner for the diagram and vertex-set grammars. Whitespace is
// insignificant everywhere; ASCII '-' and U+2212 are interchangeable.
class TextCursor {
 public:
  explicit TextCursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  bool try_char(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_char(char c) {
    if (!try_char(c)) error(std::string("expected '") + c + "'");
  }

  bool try_dash() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      return true;
    }
    if (pos_ + 3 <= text_.size() && text_.substr(pos_, 3) == "\xe2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  bool try_sign(Sign* out) {
    skip_ws();
    if (try_char('+')) {
      *out = Sign::plus;
      return true;
    }
    if (try_dash()) {
      *out = Sign::minus;
      return true;
    }
    return false;
  }

  int parse_int() {
    skip_ws();
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      error("expected a number");
    long v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 100000) error("number too large");
      ++pos_;
    }
    return static_cast<int>(v);
  }

  int parse_digit() {
    skip_ws();
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      error("expected a digit");
    return text_[pos_++] - '0';
  }

  void expect_end() {
    if (!at_end()) error("trailing input");
  }

  [[noreturn]] void error(const std::string& what) {
    fail(Errc::syntax_error,
         what + " at position " + std::to_string(pos_) + " in \"" +
             std::string(text_) + "\"");
  }

  size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  size_t pos_ = 0;
};

inline int parse_header_n(TextCursor& cur) {
  cur.skip_ws();
  if (!cur.try_char('n') && !cur.try_char('N')) cur.error("expected 'n='");
  cur.expect_char('=');
  int n = cur.parse_int();
  cur.expect_char(':');
  return n;
}

}  // namespace detail

/// Grammar: `n=<N>: a-b<s> [, a-b<s>]*` with s in {+,-}; an omitted sign
/// means opposing (+).
inline PlanarDiagram parse_diagram(std::string_view text) {
  detail::TextCursor cur(text);
  const int n = detail::parse_header_n(cur);
  std::vector<EdgePair> pairs;
  do {
    const int a = cur.parse_int();
    if (!cur.try_dash()) cur.error("expected '-' between edge labels");
    const int b = cur.parse_int();
    Sign s = Sign::plus;
    cur.try_sign(&s);
    pairs.emplace_back(a, b, s);
  } while (cur.try_char(','));
  cur.expect_end();
  return PlanarDiagram(n, std::move(pairs));
}

inline std::string format_diagram(const PlanarDiagram& d) {
  std::string out = "n=" + std::to_string(d.n()) + ": ";
  bool first = true;
  for (const EdgePair& p : d.pairs()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(p.a) + "-" + std::to_string(p.b);
    if (p.sign == Sign::minus) out += '-';
  }
  return out;
}

/// Grammar: `n=<N>: ( c<s> [, c<s>]* ) ( ... )*`; an omitted sign means +.
inline VertexSet parse_vertex_set(std::string_view text) {
  detail::TextCursor cur(text);
  const int n = detail::parse_header_n(cur);
  std::vector<Vertex> vertices;
  while (cur.try_char('(')) {
    std::vector<DecoratedCorner> cycle;
    do {
      const int c = cur.parse_int();
      Sign s = Sign::plus;
      cur.try_sign(&s);
      cycle.push_back({c, s});
    } while (cur.try_char(','));
    cur.expect_char(')');
    vertices.emplace_back(std::move(cycle));
  }
  if (vertices.empty()) cur.error("expected '('");
  cur.expect_end();
  return VertexSet(n, std::move(vertices));
}

inline std::string format_vertex_set(const VertexSet& vs) {
  std::string out = "n=" + std::to_string(vs.n()) + ": ";
  for (const Vertex& v : vs.vertices()) {
    out += '(';
    bool first = true;
    for (const DecoratedCorner& c : v.cycle()) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(c.corner);
      if (c.sign == Sign::minus) out += '-';
    }
    out += ')';
  }
  return out;
}

/// Importer for the compact printed notation `(036,12(10)7(11),4589)`:
/// single digits are corners, parenthesized groups are multi-digit corners,
/// commas separate cycles; n is the total corner count.
///
/// Printed catalogs do not record which direction each cycle was traversed
/// in, and an undecorated cycle read backwards is the same vertex with all
/// signs flipped. When the input carries no signs, this importer tries the
/// two readings per cycle and returns the unique assignment under which the
/// cycles induce a diagram; explicit signs disable the search.
inline VertexSet parse_compact_vertex_set(std::string_view text) {
  detail::TextCursor cur(text);
  cur.expect_char('(');
  std::vector<std::vector<DecoratedCorner>> cycles(1);
  bool any_sign = false;
  int total = 0;
  for (;;) {
    cur.skip_ws();
    if (cur.try_char(')')) break;
    if (cur.try_char(',')) {
      if (cycles.back().empty()) cur.error("empty cycle");
      cycles.emplace_back();
      continue;
    }
    // Corners are juxtaposed: one digit each, multi-digit ones parenthesized.
    int corner;
    if (cur.try_char('(')) {
      corner = cur.parse_int();
      cur.expect_char(')');
    } else {
      corner = cur.parse_digit();
    }
    Sign s = Sign::plus;
    if (cur.try_sign(&s)) any_sign = true;
    cycles.back().push_back({corner, s});
    ++total;
  }
  cur.expect_end();
  if (cycles.back().empty()) cur.error("empty cycle");
  const int n = total;

  auto build = [&](unsigned flip_mask) {
    std::vector<Vertex> vertices;
    vertices.reserve(cycles.size());
    for (size_t k = 0; k < cycles.size(); ++k) {
      std::vector<DecoratedCorner> cyc = cycles[k];
      if (flip_mask & (1u << k))
        for (DecoratedCorner& c : cyc) c = flip(c);
      vertices.emplace_back(std::move(cyc));
    }
    return VertexSet(n, std::move(vertices));
  };

  if (any_sign) return build(0);

  // Fix the first cycle's direction; flipping every cycle at once gives the
  // same diagram back.
  std::vector<VertexSet> resolved;
  for (unsigned mask = 0; mask < (1u << (cycles.size() - 1)); ++mask) {
    try {
      VertexSet vs = build(mask << 1);
      diagram_of(vs);
      resolved.push_back(std::move(vs));
    } catch (const Error&) {
      continue;
    }
  }
  if (resolved.empty())
    fail(Errc::inconsistent,
         "no cycle orientation assignment induces a diagram: \"" +
             std::string(text) + "\"");
  if (resolved.size() > 1)
    fail(Errc::ambiguous,
         "multiple cycle orientation assignments induce diagrams: \"" +
             std::string(text) + "\"");
  return resolved.front();
}

/// Reads one entry in any supported notation. Lines starting with '(' use the
/// compact notation; otherwise `n=N:` introduces a vertex set when a '('
/// follows the colon and a diagram when it does not.
inline PlanarDiagram parse_entry(std::string_view text) {
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  if (i < text.size() && text[i] == '(')
    return diagram_of(parse_compact_vertex_set(text));
  const size_t colon = text.find(':', i);
  const size_t paren = text.find('(', i);
  if (colon != std::string_view::npos && paren != std::string_view::npos &&
      paren > colon)
    return diagram_of(parse_vertex_set(text));
  return parse_diagram(text);
}

// ---------------------------------------------------------------------------
// Catalog files: a fixed comment header followed by one self-canonical
// diagram per line, sorted by canonical key. Bit-stable output.

struct CatalogFile {
  std::string surface = "any";
  int n = 0;
  std::uint64_t count = 0;
  std::string tool;
  std::vector<PlanarDiagram> records;
};

inline void write_catalog(std::ostream& os, const std::string& surface, int n,
                          const std::vector<PlanarDiagram>& records) {
  std::vector<std::uint8_t> prev;
  for (const PlanarDiagram& d : records) {
    if (d.n() != n)
      fail(Errc::size_mismatch, "record has polygon size " +
                                    std::to_string(d.n()) + ", catalog has " +
                                    std::to_string(n));
    std::vector<std::uint8_t> code = encode_diagram(d);
    if (!is_canonical(d))
      fail(Errc::non_canonical_line,
           "record is not canonical: " + format_diagram(d));
    if (!prev.empty() && !(prev < code))
      fail(Errc::not_sorted, "records not in ascending key order");
    prev = std::move(code);
  }
  os << "# surface " << surface << "\n";
  os << "# n " << n << "\n";
  os << "# count " << records.size() << "\n";
  os << "# tool " << kToolName << " " << kToolVersion << "\n";
  for (const PlanarDiagram& d : records) os << format_diagram(d) << "\n";
}

inline void write_catalog(const std::string& path, const std::string& surface,
                          int n, const std::vector<PlanarDiagram>& records) {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(Errc::syntax_error, "cannot open " + path + " for writing");
  write_catalog(os, surface, n, records);
}

inline CatalogFile read_catalog(std::istream& is) {
  CatalogFile cat;
  bool have_n = false, have_count = false;
  std::string line;
  std::vector<std::uint8_t> prev;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "surface") {
        hs >> cat.surface;
      } else if (key == "n") {
        hs >> cat.n;
        have_n = true;
      } else if (key == "count") {
        hs >> cat.count;
        have_count = true;
      } else if (key == "tool") {
        std::getline(hs, cat.tool);
        if (!cat.tool.empty() && cat.tool[0] == ' ') cat.tool.erase(0, 1);
      }
      continue;
    }
    PlanarDiagram d = parse_diagram(line);
    if (have_n && d.n() != cat.n)
      fail(Errc::size_mismatch,
           "line " + std::to_string(line_no) + " has polygon size " +
               std::to_string(d.n()));
    if (!is_canonical(d))
      fail(Errc::non_canonical_line,
           "line " + std::to_string(line_no) + " is not canonical: " + line);
    std::vector<std::uint8_t> code = encode_diagram(d);
    if (!prev.empty() && !(prev < code))
      fail(Errc::not_sorted,
           "line " + std::to_string(line_no) + " out of order");
    prev = std::move(code);
    cat.records.push_back(std::move(d));
  }
  if (!have_n || !have_count)
    fail(Errc::syntax_error, "catalog header missing n or count");
  if (cat.records.size() != cat.count)
    fail(Errc::count_mismatch,
         "header count " + std::to_string(cat.count) + " but " +
             std::to_string(cat.records.size()) + " records");
  return cat;
}

inline CatalogFile read_catalog(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(Errc::syntax_error, "cannot open " + path);
  return read_catalog(is);
}

// ---------------------------------------------------------------------------
// SVG chord-diagram rendering. Corners 0..n-1 sit counterclockwise on a
// circle; each pair draws one chord between its edge midpoints, bowed toward
// the center. Opposing pairs are solid black, twisted pairs gray. Corner dots
// are colored by vertex class.

struct RenderOptions {
  double size = 440.0;
  bool corner_colors = true;
};

namespace detail {

inline std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline const std::vector<std::string>& class_palette() {
  static const std::vector<std::string> palette = {
      "#000000", "#d62728", "#1f77b4", "#8c8c8c", "#2ca02c",
      "#8c564b", "#9467bd", "#e377c2", "#17becf", "#bcbd22"};
  return palette;
}

}  // namespace detail

inline std::string render_svg(const PlanarDiagram& d, RenderOptions opt = {}) {
  const int n = d.n();
  const double s = opt.size;
  const double cx = s / 2, cy = s / 2;
  const double radius = s * 0.40;
  constexpr double kTau = 6.283185307179586;

  auto corner_pos = [&](double i) {
    const double th = kTau * i / n;
    return std::pair<double, double>{cx + radius * std::cos(th),
                                     cy - radius * std::sin(th)};
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         detail::fmt2(s) + "\" height=\"" + detail::fmt2(s) +
         "\" viewBox=\"0 0 " + detail::fmt2(s) + " " + detail::fmt2(s) +
         "\">\n";

  svg += "<polygon fill=\"none\" stroke=\"#000000\" stroke-width=\"1\" points=\"";
  for (int i = 0; i < n; ++i) {
    auto [x, y] = corner_pos(i);
    if (i) svg += ' ';
    svg += detail::fmt2(x) + "," + detail::fmt2(y);
  }
  svg += "\"/>\n";

  for (const EdgePair& p : d.pairs()) {
    auto [x1, y1] = corner_pos(p.a + 0.5);
    auto [x2, y2] = corner_pos(p.b + 0.5);
    const double mx = (x1 + x2) / 2, my = (y1 + y2) / 2;
    const double qx = cx + (mx - cx) * 0.45, qy = cy + (my - cy) * 0.45;
    svg += "<path fill=\"none\" stroke=\"";
    svg += p.sign == Sign::plus ? "#000000" : "#999999";
    svg += "\" stroke-width=\"1.5\" d=\"M " + detail::fmt2(x1) + " " +
           detail::fmt2(y1) + " Q " + detail::fmt2(qx) + " " +
           detail::fmt2(qy) + " " + detail::fmt2(x2) + " " + detail::fmt2(y2) +
           "\"/>\n";
  }

  std::vector<int> corner_class(static_cast<size_t>(n), 0);
  if (opt.corner_colors) {
    const VertexSet vs = vertices_of(d);
    for (size_t k = 0; k < vs.vertices().size(); ++k)
      for (const DecoratedCorner& c : vs.vertices()[k].cycle())
        corner_class[static_cast<size_t>(c.corner)] = static_cast<int>(k);
  }
  const auto& palette = detail::class_palette();
  for (int i = 0; i < n; ++i) {
    auto [x, y] = corner_pos(i);
    const std::string& color =
        opt.corner_colors
            ? palette[static_cast<size_t>(corner_class[static_cast<size_t>(i)]) %
                      palette.size()]
            : palette[0];
    svg += "<circle cx=\"" + detail::fmt2(x) + "\" cy=\"" + detail::fmt2(y) +
           "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    auto [lx, ly] = std::pair<double, double>{cx + (x - cx) * 0.90,
                                              cy + (y - cy) * 0.90};
    svg += "<text x=\"" + detail::fmt2(lx) + "\" y=\"" + detail::fmt2(ly + 4) +
           "\" font-size=\"12\" font-family=\"sans-serif\" "
           "text-anchor=\"middle\" fill=\"#444444\">" +
           std::to_string(i) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace tiling
