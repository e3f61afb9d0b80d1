#pragma once

#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tiling/core.hpp"
#include "tiling/io.hpp"
#include "tiling/symmetry.hpp"

namespace tiling {

/// One input line of a catalog under comparison, with its provenance.
struct CatalogEntry {
  int line_no = 0;
  std::string text;
  PlanarDiagram diagram;
  CanonicalKey key;
};

inline CatalogEntry make_entry(const std::string& text, int line_no = 0) {
  PlanarDiagram d = parse_entry(text);
  CanonicalKey key = canonical_key(d);
  return {line_no, text, std::move(d), std::move(key)};
}

inline CatalogEntry make_entry(const PlanarDiagram& d, int line_no = 0) {
  return {line_no, format_diagram(d), d, canonical_key(d)};
}

/// Reads entries from a line-oriented file; blank lines and '#' comments are
/// skipped. Each line may use the diagram grammar, the vertex-set grammar, or
/// the compact notation.
inline std::vector<CatalogEntry> read_entries(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(Errc::syntax_error, "cannot open " + path);
  std::vector<CatalogEntry> out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size() || line[i] == '#') continue;
    try {
      out.push_back(make_entry(line, line_no));
    } catch (const Error& e) {
      fail(e.code(),
           path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

struct DuplicateGroup {
  CanonicalKey key;
  std::vector<int> line_nos;
};

/// Differences between two catalogs up to equivalence: keys present on only
/// one side, and groups of same-side lines sharing one key. Textual
/// differences (rotations, reflections, rewritten cycles) never count.
struct ComparisonReport {
  std::vector<CanonicalKey> missing_from_b;  // keys only in A
  std::vector<CanonicalKey> missing_from_a;  // keys only in B
  std::vector<DuplicateGroup> duplicate_groups_a;
  std::vector<DuplicateGroup> duplicate_groups_b;
  std::size_t matched = 0;  // distinct keys present on both sides
};

inline ComparisonReport compare(const std::vector<CatalogEntry>& a,
                                const std::vector<CatalogEntry>& b) {
  auto index = [](const std::vector<CatalogEntry>& side) {
    std::map<CanonicalKey, std::vector<int>> by_key;
    for (const CatalogEntry& e : side) by_key[e.key].push_back(e.line_no);
    return by_key;
  };
  const auto ka = index(a);
  const auto kb = index(b);

  ComparisonReport report;
  for (const auto& [key, lines] : ka) {
    if (kb.count(key))
      ++report.matched;
    else
      report.missing_from_b.push_back(key);
    if (lines.size() > 1) report.duplicate_groups_a.push_back({key, lines});
  }
  for (const auto& [key, lines] : kb) {
    if (!ka.count(key)) report.missing_from_a.push_back(key);
    if (lines.size() > 1) report.duplicate_groups_b.push_back({key, lines});
  }
  return report;
}

}  // namespace tiling
