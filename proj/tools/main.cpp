#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tiling/tiling.hpp"

namespace {

using namespace tiling;

// Parses --diagram/--a/--b style inputs: a diagram, a vertex set, or a
// compact vertex set, always reduced to a diagram.
PlanarDiagram input_diagram(const std::string& text) { return parse_entry(text); }

void print_counts(const SurfaceCounts& counts, int n) {
  for (const auto& [surface, count] : counts.by_surface)
    std::cout << surface << " " << n << " " << count << "\n";
}

int cmd_bounds(int chi, std::optional<int> n) {
  auto line = [&](int nn) {
    TileBounds b = tile_count_bounds(nn, chi);
    std::string out = "f in (" + b.lower_exclusive.to_string() + ", " +
                      b.upper_inclusive.to_string() + "]";
    if (b.max_is_all_degree_three)
      out += "; f=" + std::to_string(b.upper_inclusive.num) +
             " attains max (all vertices degree 3)";
    return out;
  };
  if (n) {
    std::cout << line(*n) << "\n";
  } else {
    const int cap = 6 * (1 - chi);
    for (int nn = 7; nn <= cap; ++nn)
      std::cout << "n=" << nn << ": " << line(nn) << "\n";
  }
  return 0;
}

int cmd_admissible(int chi) {
  for (const auto& [n, fs] : admissible_tilings(chi)) {
    std::cout << "n=" << n << ": f=";
    for (size_t i = 0; i < fs.size(); ++i)
      std::cout << (i ? "," : "") << fs[i];
    std::cout << "\n";
  }
  return 0;
}

int cmd_classify(const std::string& text) {
  TilingSummary s = classify(input_diagram(text));
  std::cout << "n=" << s.n << " e=" << s.e << " v=" << s.v << " chi=" << s.chi
            << " orientable=" << (s.orientable ? "yes" : "no")
            << " surface=" << s.surface_name << " degrees=";
  for (size_t i = 0; i < s.degree_multiset.size(); ++i)
    std::cout << (i ? "," : "") << s.degree_multiset[i];
  if (s.degree_too_small) std::cout << " degree-too-small";
  std::cout << "\n";
  return 0;
}

int cmd_enumerate(const EnumerationRequest& req, const std::string& out_path,
                  bool count_only, bool naive) {
  if (naive) {
    NaiveResult r = enumerate_naive(req);
    print_counts(r.classes, req.n);
    return 0;
  }
  SurfaceCounts counts;
  if (count_only && out_path.empty()) {
    counts = enumerate_diagrams(req);
  } else {
    std::vector<PlanarDiagram> reps;
    counts = enumerate_diagrams(
        req, [&](const PlanarDiagram& d) { reps.push_back(d); });
    if (!out_path.empty()) {
      std::string surface = "any";
      if (req.filter.chi && req.filter.orientable)
        surface = surface_class(req.n, *req.filter.chi + req.n / 2 - 1,
                                *req.filter.orientable)
                      .second;
      write_catalog(out_path, surface, req.n, reps);
    } else {
      for (const PlanarDiagram& d : reps) std::cout << format_diagram(d) << "\n";
    }
  }
  print_counts(counts, req.n);
  return 0;
}

int cmd_compare(const std::string& path_a, const std::string& path_b) {
  const auto a = read_entries(path_a);
  const auto b = read_entries(path_b);
  ComparisonReport report = compare(a, b);
  std::cout << "a-entries " << a.size() << "\n";
  std::cout << "b-entries " << b.size() << "\n";
  std::cout << "matched " << report.matched << "\n";
  auto emit_missing = [](const char* tag, const std::vector<CanonicalKey>& keys) {
    for (const CanonicalKey& k : keys)
      std::cout << tag << " " << format_diagram(decode_diagram(k.n, k.code))
                << "\n";
  };
  emit_missing("missing-from-b", report.missing_from_b);
  emit_missing("missing-from-a", report.missing_from_a);
  auto emit_dups = [](const char* tag, const std::vector<DuplicateGroup>& gs) {
    for (const DuplicateGroup& g : gs) {
      std::cout << tag << " "
                << format_diagram(decode_diagram(g.key.n, g.key.code))
                << " lines";
      for (int ln : g.line_nos) std::cout << " " << ln;
      std::cout << "\n";
    }
  };
  emit_dups("duplicates-a", report.duplicate_groups_a);
  emit_dups("duplicates-b", report.duplicate_groups_b);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Census tool for edge-to-edge single-tile tilings of closed "
               "surfaces, represented as signed chord diagrams of a 2e-gon"};
  app.set_version_flag("--version", std::string(tiling::kToolName) + " " +
                                        std::string(tiling::kToolVersion));
  app.require_subcommand(1);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Tile-count bounds for n-gon tilings");
  int bounds_chi = -1;
  std::optional<int> bounds_n;
  bounds->add_option("--chi", bounds_chi, "Euler number (negative)")->required();
  bounds->add_option("--n", bounds_n, "polygon size (>= 7)");

  // admissible
  auto* admissible = app.add_subcommand("admissible", "Admissible (n, f) combinations");
  int adm_chi = -1;
  admissible->add_option("--chi", adm_chi, "Euler number (negative)")->required();

  // vertices / diagram / classify / canon
  auto* vertices = app.add_subcommand("vertices", "Vertex set of a diagram");
  std::string vert_in;
  vertices->add_option("--diagram", vert_in, "diagram text")->required();

  auto* diagram = app.add_subcommand("diagram", "Diagram of a vertex set");
  std::string diag_in;
  diagram->add_option("--vertex-set", diag_in, "vertex set text")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Surface invariants of a diagram");
  std::string cls_in;
  classify_cmd->add_option("--diagram", cls_in, "diagram text")->required();

  auto* canon = app.add_subcommand("canon", "Canonical representative of a diagram");
  std::string canon_in;
  canon->add_option("--diagram", canon_in, "diagram text")->required();

  // eq
  auto* eq = app.add_subcommand("eq", "Test equivalence of two diagrams or vertex sets");
  std::string eq_a, eq_b;
  eq->add_option("--a", eq_a, "first input")->required();
  eq->add_option("--b", eq_b, "second input")->required();

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate tiling classes at one polygon size");
  EnumerationRequest req;
  bool orientable_only = false, naive = false, count_only = false, long_ok = false,
       progress = false;
  std::optional<int> filter_chi;
  std::string surface_name, out_path;
  enumerate->add_option("--n", req.n, "polygon size (even, >= 8)")->required();
  enumerate->add_flag("--orientable-only", orientable_only, "opposing pairs only");
  auto* surf_opt = enumerate->add_option("--surface", surface_name, "surface filter, e.g. 2T2");
  auto* chi_opt = enumerate->add_option("--chi", filter_chi, "Euler number filter");
  surf_opt->excludes(chi_opt);
  enumerate->add_flag("--naive", naive, "unpruned oracle enumeration");
  enumerate->add_option("--out", out_path, "write catalog file");
  enumerate->add_flag("--count-only", count_only, "suppress catalog output");
  enumerate->add_flag("--long", long_ok, "permit runs beyond the node threshold");
  enumerate->add_option("--threads", req.threads, "worker threads (0 = hardware)");
  enumerate->add_flag("--progress", progress, "report node counts on stderr");

  // census
  auto* census_cmd = app.add_subcommand("census", "Full census row for a surface");
  std::string census_surface;
  bool census_long = false, census_progress = false;
  int census_threads = 1;
  census_cmd->add_option("--surface", census_surface, "surface name, e.g. 2T2")->required();
  census_cmd->add_flag("--long", census_long, "permit runs beyond the node threshold");
  census_cmd->add_option("--threads", census_threads, "worker threads (0 = hardware)");
  census_cmd->add_flag("--progress", census_progress, "report node counts on stderr");

  // render
  auto* render = app.add_subcommand("render", "Render a diagram as SVG");
  std::string render_in, render_out;
  RenderOptions render_opt;
  bool no_colors = false;
  render->add_option("--diagram", render_in, "diagram text")->required();
  render->add_option("--out", render_out, "output .svg path")->required();
  render->add_option("--size", render_opt.size, "image size in px");
  render->add_flag("--no-corner-colors", no_colors, "monochrome corner dots");

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Compare two catalogs up to equivalence");
  std::string cmp_a, cmp_b;
  compare_cmd->add_option("--a", cmp_a, "first catalog file")->required();
  compare_cmd->add_option("--b", cmp_b, "second catalog file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*bounds) return cmd_bounds(bounds_chi, bounds_n);
    if (*admissible) return cmd_admissible(adm_chi);
    if (*vertices) {
      std::cout << format_vertex_set(vertices_of(input_diagram(vert_in))) << "\n";
      return 0;
    }
    if (*diagram) {
      std::cout << format_diagram(input_diagram(diag_in)) << "\n";
      return 0;
    }
    if (*classify_cmd) return cmd_classify(cls_in);
    if (*canon) {
      CanonicalForm f = canonical_form(input_diagram(canon_in));
      std::cout << format_diagram(f.representative) << "\n";
      std::cout << "stabilizer " << f.stabilizer_order << " orbit "
                << 2 * f.representative.n() / f.stabilizer_order << "\n";
      return 0;
    }
    if (*eq) {
      PlanarDiagram a = input_diagram(eq_a);
      PlanarDiagram b = input_diagram(eq_b);
      std::cout << (equivalent(a, b) ? "equivalent" : "inequivalent") << "\n";
      return 0;
    }
    if (*enumerate) {
      if (orientable_only) req.mode = EnumMode::orientable_only;
      if (filter_chi) req.filter.chi = *filter_chi;
      if (!surface_name.empty()) {
        const auto [chi, orientable] = parse_surface_name(surface_name);
        req.filter.chi = chi;
        req.filter.orientable = orientable;
        if (orientable_only && !orientable)
          fail(Errc::filter_contradiction,
               "orientable-only enumeration cannot produce " + surface_name);
      }
      req.allow_long = long_ok;
      req.emit = count_only ? EmitMode::count_only : EmitMode::stream_catalog;
      if (progress)
        req.progress = [](std::uint64_t nodes) {
          std::fprintf(stderr, "nodes %lluM\n",
                       static_cast<unsigned long long>(nodes >> 20));
        };
      return cmd_enumerate(req, out_path, count_only, naive);
    }
    if (*census_cmd) {
      std::function<void(std::uint64_t)> cb;
      if (census_progress)
        cb = [](std::uint64_t nodes) {
          std::fprintf(stderr, "nodes %lluM\n",
                       static_cast<unsigned long long>(nodes >> 20));
        };
      CensusRow row = census(census_surface, census_threads, census_long, cb);
      for (const auto& [n, count] : row.counts)
        std::cout << row.surface << " " << n << " " << count << "\n";
      for (int n : row.skipped)
        std::cerr << "skipped n=" << n << " (raw search space "
                  << raw_search_space(n, row.surface.find('T') != std::string::npos
                                             ? EnumMode::orientable_only
                                             : EnumMode::all_signed)
                  << " nodes exceeds threshold; use --long)\n";
      return 0;
    }
    if (*render) {
      render_opt.corner_colors = !no_colors;
      std::ofstream os(render_out, std::ios::binary);
      if (!os) fail(Errc::syntax_error, "cannot open " + render_out);
      os << render_svg(input_diagram(render_in), render_opt);
      return 0;
    }
    if (*compare_cmd) return cmd_compare(cmp_a, cmp_b);
  } catch (const tiling::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
