#pragma once

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tiling/core.hpp"
#include "tiling/feasibility.hpp"
#include "tiling/symmetry.hpp"
#include "tiling/trace.hpp"

namespace tiling {

enum class EnumMode { orientable_only, all_signed };
enum class EmitMode { count_only, stream_catalog };

struct EnumFilter {
  std::optional<int> chi;
  std::optional<bool> orientable;
};

struct EnumerationRequest {
  int n = 8;
  EnumMode mode = EnumMode::all_signed;
  EnumFilter filter;
  int min_degree = 3;
  EmitMode emit = EmitMode::count_only;
  int threads = 1;
  /// Runs whose raw search space exceeds kLongRunThreshold refuse unless set.
  bool allow_long = false;
  /// Count every valid labeled diagram instead of one per equivalence class.
  /// Validation hook: the class counts must satisfy
  /// sum over classes of (2n / stabilizer) == labeled count.
  bool labeled = false;
  /// Disables the non-minimal-prefix pruning layer; results must not change.
  bool prefix_prune = true;
  /// Side channel; called with the cumulative node count every few million
  /// nodes. May be invoked from worker threads.
  std::function<void(std::uint64_t)> progress;
};

struct SurfaceCounts {
  std::map<std::string, std::uint64_t> by_surface;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& [name, c] : by_surface) t += c;
    return t;
  }
  std::uint64_t of(const std::string& name) const {
    auto it = by_surface.find(name);
    return it == by_surface.end() ? 0 : it->second;
  }
  friend bool operator==(const SurfaceCounts&, const SurfaceCounts&) = default;
};

inline constexpr double kLongRunThreshold = 1e9;

/// Size of the unpruned search space: (n-1)!! matchings, times 2^e sign
/// choices in all_signed mode.
inline double raw_search_space(int n, EnumMode mode) {
  double r = 1.0;
  for (int k = n - 1; k >= 1; k -= 2) r *= k;
  if (mode == EnumMode::all_signed) r = std::ldexp(r, n / 2);
  return r;
}

/// "2T2" -> (-2, orientable); "3P2" -> (-1, non-orientable).
inline std::pair<int, bool> parse_surface_name(const std::string& name) {
  size_t i = 0;
  while (i < name.size() && std::isdigit(static_cast<unsigned char>(name[i])))
    ++i;
  if (i == 0 || i + 2 != name.size() || name[i + 1] != '2' ||
      (name[i] != 'T' && name[i] != 'P'))
    fail(Errc::syntax_error,
         "surface name must look like 2T2 or 3P2, got \"" + name + "\"");
  const int k = std::stoi(name.substr(0, i));
  if (name[i] == 'T') return {2 - 2 * k, true};
  return {2 - k, false};
}

namespace detail {

// Depth-first search over signed perfect matchings of the edge labels,
// pairing the smallest free edge with every larger free edge. Three pruning
// layers, none of which correctness depends on (the naive oracle gates them):
//  - successor chains are maintained incrementally; a branch dies as soon as
//    a closed cycle is shorter than the minimum degree;
//  - with a chi filter, branches die when the closed vertex count overshoots
//    the target or provably cannot reach it;
//  - a placed pair whose label gap beats the first pair's (gap, sign) cannot
//    appear in a canonical diagram (some relabelling would move it to edge 0
//    and lower the encoding), so the branch dies.
// Complete diagrams are classified, filtered, and emitted only if
// self-canonical, so each equivalence class is produced exactly once.
class SearchEngine {
 public:
  static constexpr int kMaxE = kMaxPolygonSize / 2;
  static constexpr int kMaxStates = 2 * kMaxPolygonSize;

  SearchEngine(int n, EnumMode mode, const EnumFilter& filter, int min_degree)
      : n_(n), e_(n / 2), signed_mode_(mode == EnumMode::all_signed),
        min_degree_(min_degree), orientable_filter_(filter.orientable) {
    if (filter.chi) v_target_ = *filter.chi + e_ - 1;
    for (int i = 0; i < n_; ++i) partner_[i] = -1;
    for (int s = 0; s < 2 * n_; ++s) {
      succ_[s] = pred_[s] = -1;
      chain_start_[s] = chain_end_[s] = static_cast<std::int16_t>(s);
      chain_len_[s] = 1;
    }
    open_chains_ = 2 * n_;
    open_states_ = 2 * n_;
    for (auto& row : counts_by_v_) row.assign(static_cast<size_t>(e_) + 2, 0);
  }

  void set_collect(std::vector<std::vector<std::uint8_t>>* out) { reps_ = out; }
  void set_labeled(bool labeled) { labeled_ = labeled; }
  void set_prefix_prune(bool on) { prefix_prune_ = on; }
  void set_progress(std::atomic<std::uint64_t>* total,
                    const std::function<void(std::uint64_t)>* cb) {
    progress_total_ = total;
    progress_cb_ = cb;
  }

  /// Runs the subtree with first pair (0, p, sign) fixed.
  void run_branch(int p, Sign sign) {
    fp_gap_ = p;
    fp_sign_ = static_cast<int>(sign);
    PairUndo u;
    const bool dead = place_pair(0, p, static_cast<int>(sign), u);
    if (!dead) search(1);
    undo_pair(u);
  }

  std::uint64_t nodes() const { return nodes_; }

  /// Labeled-vs-orbit counts, keyed by (orientable, vertex count).
  const std::vector<std::uint64_t>& counts_row(bool orientable) const {
    return counts_by_v_[orientable ? 1 : 0];
  }

 private:
  struct TransitionUndo {
    std::int16_t x = -1, y = -1;
    std::int16_t sx = -1, ey = -1;
    std::int16_t old_len = 0;
    bool closed = false;
  };
  struct PairUndo {
    int a = -1, b = -1, s = 0;
    TransitionUndo t[4];
  };

  static constexpr int state(int corner, int signbit) {
    return 2 * corner + signbit;
  }

  int inc(int x) const { return x + 1 == n_ ? 0 : x + 1; }

  bool add_transition(int x, int y, TransitionUndo& t) {
    t.x = static_cast<std::int16_t>(x);
    t.y = static_cast<std::int16_t>(y);
    succ_[x] = static_cast<std::int16_t>(y);
    pred_[y] = static_cast<std::int16_t>(x);
    const int sx = chain_start_[x];
    if (sx == y) {
      t.closed = true;
      ++closed_cycles_;
      --open_chains_;
      open_states_ -= chain_len_[y];
      return chain_len_[y] < min_degree_;
    }
    t.closed = false;
    const int ey = chain_end_[y];
    t.sx = static_cast<std::int16_t>(sx);
    t.ey = static_cast<std::int16_t>(ey);
    t.old_len = chain_len_[sx];
    chain_start_[ey] = static_cast<std::int16_t>(sx);
    chain_end_[sx] = static_cast<std::int16_t>(ey);
    chain_len_[sx] = static_cast<std::int16_t>(t.old_len + chain_len_[y]);
    --open_chains_;
    return false;
  }

  void undo_transition(const TransitionUndo& t) {
    succ_[t.x] = -1;
    pred_[t.y] = -1;
    if (t.closed) {
      --closed_cycles_;
      ++open_chains_;
      open_states_ += chain_len_[t.y];
    } else {
      chain_start_[t.ey] = t.y;
      chain_end_[t.sx] = t.x;
      chain_len_[t.sx] = t.old_len;
      ++open_chains_;
    }
  }

  // Places pair (a, b, s) and its four successor transitions. Returns true
  // when the branch is dead (short cycle or vertex-count bound violated).
  bool place_pair(int a, int b, int s, PairUndo& u) {
    ++nodes_;
    if (progress_total_ && (nodes_ & 0x3FFFFF) == 0) report_progress();
    u.a = a;
    u.b = b;
    u.s = s;
    partner_[a] = static_cast<std::int16_t>(b);
    partner_[b] = static_cast<std::int16_t>(a);
    psign_[a] = psign_[b] = static_cast<std::int8_t>(s);
    twisted_ += s;
    ++pairs_placed_;
    bool dead = false;
    if (s == 0) {
      dead |= add_transition(state(a, 0), state(inc(b), 0), u.t[0]);
      dead |= add_transition(state(b, 0), state(inc(a), 0), u.t[1]);
      dead |= add_transition(state(inc(a), 1), state(b, 1), u.t[2]);
      dead |= add_transition(state(inc(b), 1), state(a, 1), u.t[3]);
    } else {
      dead |= add_transition(state(a, 0), state(b, 1), u.t[0]);
      dead |= add_transition(state(b, 0), state(a, 1), u.t[1]);
      dead |= add_transition(state(inc(a), 1), state(inc(b), 0), u.t[2]);
      dead |= add_transition(state(inc(b), 1), state(inc(a), 0), u.t[3]);
    }
    if (!dead && v_target_) {
      const int closed_v = closed_cycles_ / 2;
      if (closed_v > *v_target_) {
        dead = true;
      } else {
        const int chains_bound = open_chains_;
        const int states_bound =
            min_degree_ > 0 ? open_states_ / min_degree_ : open_states_;
        const int max_more =
            (chains_bound < states_bound ? chains_bound : states_bound) / 2;
        if (closed_v + max_more < *v_target_) dead = true;
      }
    }
    return dead;
  }

  void undo_pair(const PairUndo& u) {
    for (int i = 3; i >= 0; --i) undo_transition(u.t[i]);
    partner_[u.a] = -1;
    partner_[u.b] = -1;
    twisted_ -= u.s;
    --pairs_placed_;
  }

  // Lex comparison of the rotated/reflected encoding against the current
  // one; negative means the transform is smaller (current not canonical).
  int compare_rotation(int c) const {
    for (int i = 0; i < n_; ++i) {
      int src = i - c;
      if (src < 0) src += n_;
      int p = partner_[src] + c;
      if (p >= n_) p -= n_;
      const int q = partner_[i];
      if (p != q) return p < q ? -1 : 1;
      const int sdiff = psign_[src] - psign_[i];
      if (sdiff != 0) return sdiff;
    }
    return 0;
  }

  int compare_reflection(int c) const {
    for (int i = 0; i < n_; ++i) {
      int src = c - i - 1;
      if (src < 0) src += n_;
      int p = c - partner_[src] - 1;
      if (p < 0) p += n_;
      const int q = partner_[i];
      if (p != q) return p < q ? -1 : 1;
      const int sdiff = psign_[src] - psign_[i];
      if (sdiff != 0) return sdiff;
    }
    return 0;
  }

  bool leaf_is_canonical() const {
    for (int c = 1; c < n_; ++c)
      if (compare_rotation(c) < 0) return false;
    for (int c = 0; c < n_; ++c)
      if (compare_reflection(c) < 0) return false;
    return true;
  }

  void leaf() {
    const int v = closed_cycles_ / 2;
    if (v_target_ && v != *v_target_) return;
    const bool orientable = twisted_ == 0;
    if (orientable_filter_ && *orientable_filter_ != orientable) return;
    if (!labeled_ && !leaf_is_canonical()) return;
    ++counts_by_v_[orientable ? 1 : 0][static_cast<size_t>(v)];
    if (reps_) {
      std::vector<std::uint8_t> code;
      code.reserve(static_cast<size_t>(2 * n_));
      for (int i = 0; i < n_; ++i) {
        code.push_back(static_cast<std::uint8_t>(partner_[i]));
        code.push_back(static_cast<std::uint8_t>(psign_[i]));
      }
      reps_->push_back(std::move(code));
    }
  }

  // A pair whose cyclic label gap (under either orientation) undercuts the
  // first pair's (gap, sign) would map to a smaller first entry under some
  // dihedral relabelling.
  bool first_pair_prunes(int a, int b, int s) const {
    const int g1 = b - a;
    const int g2 = n_ - g1;
    if (g1 < fp_gap_ || g2 < fp_gap_) return true;
    if (g1 == fp_gap_ && s < fp_sign_) return true;
    if (g2 == fp_gap_ && s < fp_sign_) return true;
    return false;
  }

  void search(int from) {
    if (pairs_placed_ == e_) {
      leaf();
      return;
    }
    int a = from;
    while (partner_[a] != -1) ++a;
    const int nsigns = signed_mode_ ? 2 : 1;
    for (int b = a + 1; b < n_; ++b) {
      if (partner_[b] != -1) continue;
      const bool adjacent = (b == a + 1) || (a == 0 && b == n_ - 1);
      for (int s = 0; s < nsigns; ++s) {
        if (s == 0 && adjacent && min_degree_ >= 2)
          continue;  // forces a degree-1 vertex
        if (prefix_prune_ && first_pair_prunes(a, b, s)) continue;
        PairUndo u;
        const bool dead = place_pair(a, b, s, u);
        if (!dead) search(a + 1);
        undo_pair(u);
      }
    }
  }

  void report_progress() {
    const std::uint64_t total =
        progress_total_->fetch_add(0x400000, std::memory_order_relaxed) +
        0x400000;
    if (progress_cb_ && *progress_cb_) (*progress_cb_)(total);
  }

  int n_, e_;
  bool signed_mode_;
  int min_degree_;
  std::optional<bool> orientable_filter_;
  std::optional<int> v_target_;

  std::int16_t partner_[kMaxPolygonSize];
  std::int8_t psign_[kMaxPolygonSize] = {};
  std::int16_t succ_[kMaxStates];
  std::int16_t pred_[kMaxStates];
  std::int16_t chain_start_[kMaxStates];
  std::int16_t chain_end_[kMaxStates];
  std::int16_t chain_len_[kMaxStates];
  int closed_cycles_ = 0;
  int open_chains_ = 0;
  int open_states_ = 0;
  int twisted_ = 0;
  int pairs_placed_ = 0;
  int fp_gap_ = 0;
  int fp_sign_ = 0;
  bool labeled_ = false;
  bool prefix_prune_ = true;
  std::uint64_t nodes_ = 0;

  std::vector<std::uint64_t> counts_by_v_[2];
  std::vector<std::vector<std::uint8_t>>* reps_ = nullptr;
  std::atomic<std::uint64_t>* progress_total_ = nullptr;
  const std::function<void(std::uint64_t)>* progress_cb_ = nullptr;
};

struct Branch {
  int p;
  Sign sign;
};

// Labeled counting must branch over every first pair; class counting only
// needs first pairs a canonical diagram can have (gap at most n/2, and the
// adjacent opposing pair only below the degree bound).
inline std::vector<Branch> root_branches(int n, EnumMode mode, int min_degree,
                                         bool labeled) {
  std::vector<Branch> out;
  const int p_max = labeled ? n - 1 : n / 2;
  for (int p = 1; p <= p_max; ++p) {
    const bool adjacent = p == 1 || p == n - 1;
    if (!adjacent || min_degree < 2) out.push_back({p, Sign::plus});
    if (mode == EnumMode::all_signed) out.push_back({p, Sign::minus});
  }
  return out;
}

inline void validate_request(const EnumerationRequest& req) {
  if (req.n % 2 != 0 || req.n < 8)
    fail(Errc::out_of_scope, "census polygon size must be even and >= 8, got " +
                                 std::to_string(req.n));
  if (req.n > kMaxPolygonSize)
    fail(Errc::out_of_scope, "polygon size exceeds supported maximum " +
                                 std::to_string(kMaxPolygonSize));
  if (req.min_degree < 1)
    fail(Errc::out_of_scope, "minimum degree must be at least 1");
  if (req.mode == EnumMode::orientable_only) {
    if (req.filter.orientable && !*req.filter.orientable)
      fail(Errc::filter_contradiction,
           "orientable-only enumeration with a non-orientable filter");
    if (req.filter.chi && mod_n(*req.filter.chi, 2) != 0)
      fail(Errc::filter_contradiction,
           "orientable-only enumeration with odd Euler number " +
               std::to_string(*req.filter.chi));
  }
}

// True when the filter provably matches no diagram at this n, so the search
// can be skipped altogether.
inline bool filter_is_vacuous(const EnumerationRequest& req) {
  if (!req.filter.chi) return false;
  const int v_target = *req.filter.chi + req.n / 2 - 1;
  if (v_target < 1) return true;
  if (static_cast<long long>(v_target) * req.min_degree > req.n) return true;
  return false;
}

}  // namespace detail

/// Exhaustively enumerates the equivalence classes of single-tile tilings at
/// polygon size n, subject to the request's mode and filter. Counts are per
/// surface; when a sink is given, one canonical representative per class is
/// delivered in ascending key order. Output is identical for every thread
/// count.
inline SurfaceCounts enumerate_diagrams(
    const EnumerationRequest& req,
    const std::function<void(const PlanarDiagram&)>& sink = {}) {
  detail::validate_request(req);
  SurfaceCounts result;
  if (detail::filter_is_vacuous(req)) return result;
  if (raw_search_space(req.n, req.mode) > kLongRunThreshold && !req.allow_long)
    fail(Errc::too_large,
         "raw search space is about " +
             std::to_string(raw_search_space(req.n, req.mode)) +
             " nodes; pass allow_long to run anyway");

  EnumFilter filter = req.filter;
  if (req.mode == EnumMode::orientable_only) filter.orientable = true;

  const std::vector<detail::Branch> branches =
      detail::root_branches(req.n, req.mode, req.min_degree, req.labeled);
  const int want_threads = req.threads == 0
                               ? static_cast<int>(
                                     std::thread::hardware_concurrency())
                               : req.threads;
  const int threads =
      std::max(1, std::min<int>(want_threads,
                                static_cast<int>(branches.size())));

  struct BranchResult {
    std::vector<std::uint64_t> counts[2];
    std::vector<std::vector<std::uint8_t>> reps;
  };
  std::vector<BranchResult> partial(branches.size());
  std::atomic<std::uint64_t> progress_total{0};
  std::atomic<size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const size_t idx = next.fetch_add(1, std::memory_order_relaxed);
      if (idx >= branches.size()) return;
      detail::SearchEngine engine(req.n, req.mode, filter, req.min_degree);
      std::vector<std::vector<std::uint8_t>> reps;
      if (sink) engine.set_collect(&reps);
      engine.set_labeled(req.labeled);
      engine.set_prefix_prune(req.prefix_prune && !req.labeled);
      if (req.progress) engine.set_progress(&progress_total, &req.progress);
      engine.run_branch(branches[idx].p, branches[idx].sign);
      partial[idx].counts[0] = engine.counts_row(false);
      partial[idx].counts[1] = engine.counts_row(true);
      partial[idx].reps = std::move(reps);
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // Merge in branch order; branch order equals encoding order of the first
  // pair, so concatenated per-branch catalogs are globally sorted.
  const int e = req.n / 2;
  std::vector<std::uint64_t> merged[2] = {
      std::vector<std::uint64_t>(static_cast<size_t>(e) + 2, 0),
      std::vector<std::uint64_t>(static_cast<size_t>(e) + 2, 0)};
  std::vector<std::vector<std::uint8_t>> all_reps;
  for (size_t idx = 0; idx < branches.size(); ++idx) {
    for (int o = 0; o < 2; ++o)
      for (size_t v = 0; v < partial[idx].counts[o].size(); ++v)
        merged[o][v] += partial[idx].counts[o][v];
    std::sort(partial[idx].reps.begin(), partial[idx].reps.end());
    for (auto& code : partial[idx].reps) all_reps.push_back(std::move(code));
  }

  for (int o = 0; o < 2; ++o) {
    for (size_t v = 1; v < merged[o].size(); ++v) {
      if (merged[o][v] == 0) continue;
      const auto [chi, name] =
          surface_class(req.n, static_cast<int>(v), o == 1);
      result.by_surface[name] += merged[o][v];
    }
  }
  if (sink)
    for (const auto& code : all_reps) sink(decode_diagram(req.n, code));
  return result;
}

/// Counting oracle: every signed matching is generated with no pruning,
/// classified through the vertex trace, and deduplicated by canonical key.
/// Returns both the class counts and the raw labeled-diagram counts.
struct NaiveResult {
  SurfaceCounts classes;
  SurfaceCounts labeled;
};

inline NaiveResult enumerate_naive(const EnumerationRequest& req) {
  detail::validate_request(req);
  if (req.n > 14 && !req.allow_long)
    fail(Errc::too_large,
         "naive enumeration above n=14 is desk-scale only; pass allow_long");

  NaiveResult result;
  if (detail::filter_is_vacuous(req)) return result;

  const int n = req.n;
  const int e = n / 2;
  std::vector<std::pair<int, int>> matching;
  std::vector<char> used(static_cast<size_t>(n), 0);
  std::map<std::string, std::unordered_set<std::string>> keys;

  auto visit_signed = [&](const std::vector<std::pair<int, int>>& m,
                          unsigned sign_mask) {
    std::vector<EdgePair> pairs;
    pairs.reserve(static_cast<size_t>(e));
    for (int i = 0; i < e; ++i)
      pairs.emplace_back(m[static_cast<size_t>(i)].first,
                         m[static_cast<size_t>(i)].second,
                         (sign_mask >> i) & 1u ? Sign::minus : Sign::plus);
    PlanarDiagram d(n, std::move(pairs));
    TilingSummary s = classify(d);
    if (s.degree_multiset.front() < req.min_degree) return;
    if (req.filter.chi && s.chi != *req.filter.chi) return;
    if (req.filter.orientable && s.orientable != *req.filter.orientable)
      return;
    if (req.mode == EnumMode::orientable_only && !s.orientable) return;
    ++result.labeled.by_surface[s.surface_name];
    CanonicalKey key = canonical_key(d);
    keys[s.surface_name].insert(
        std::string(key.code.begin(), key.code.end()));
  };

  auto rec = [&](auto&& self, int placed) -> void {
    if (placed == e) {
      if (req.mode == EnumMode::all_signed) {
        for (unsigned mask = 0; mask < (1u << e); ++mask)
          visit_signed(matching, mask);
      } else {
        visit_signed(matching, 0);
      }
      return;
    }
    int a = 0;
    while (used[static_cast<size_t>(a)]) ++a;
    used[static_cast<size_t>(a)] = 1;
    for (int b = a + 1; b < n; ++b) {
      if (used[static_cast<size_t>(b)]) continue;
      used[static_cast<size_t>(b)] = 1;
      matching.emplace_back(a, b);
      self(self, placed + 1);
      matching.pop_back();
      used[static_cast<size_t>(b)] = 0;
    }
    used[static_cast<size_t>(a)] = 0;
  };
  rec(rec, 0);

  for (const auto& [name, set] : keys)
    result.classes.by_surface[name] = set.size();
  return result;
}

/// One row of the census tables: class counts for every admissible even n of
/// the given surface. Entries whose raw search space exceeds the long-run
/// threshold are skipped (and listed) unless allow_long is set.
struct CensusRow {
  std::string surface;
  std::map<int, std::uint64_t> counts;
  std::vector<int> skipped;
};

inline CensusRow census(const std::string& surface, int threads = 1,
                        bool allow_long = false,
                        const std::function<void(std::uint64_t)>& progress = {}) {
  const auto [chi, orientable] = parse_surface_name(surface);
  if (chi >= 0)
    fail(Errc::out_of_scope, "surface " + surface +
                                 " has nonnegative Euler number " +
                                 std::to_string(chi));
  CensusRow row;
  row.surface = surface;
  const auto [n_min, n_max] = single_tile_n_range(chi);
  for (int n = n_min; n <= n_max; n += 2) {
    EnumerationRequest req;
    req.n = n;
    req.mode = orientable ? EnumMode::orientable_only : EnumMode::all_signed;
    req.filter.chi = chi;
    req.filter.orientable = orientable;
    req.threads = threads;
    req.allow_long = allow_long;
    req.progress = progress;
    if (!allow_long && raw_search_space(n, req.mode) > kLongRunThreshold) {
      row.skipped.push_back(n);
      continue;
    }
    row.counts[n] = enumerate_diagrams(req).of(surface);
  }
  return row;
}

}  // namespace tiling
