#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "tiling/core.hpp"

namespace tiling::testing {

inline PlanarDiagram random_diagram(std::mt19937& rng, int n,
                                    bool allow_signs) {
  std::vector<int> edges(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) edges[static_cast<size_t>(i)] = i;
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<EdgePair> pairs;
  for (int i = 0; i < n; i += 2) {
    const Sign s = allow_signs && (rng() & 1) ? Sign::minus : Sign::plus;
    pairs.emplace_back(edges[static_cast<size_t>(i)],
                       edges[static_cast<size_t>(i + 1)], s);
  }
  return PlanarDiagram(n, std::move(pairs));
}

/// Visits every signed perfect matching of n edge labels once. Plain
/// reference generator kept separate from the search engine on purpose.
inline void for_each_diagram(int n, bool with_signs,
                             const std::function<void(const PlanarDiagram&)>& fn) {
  std::vector<int> partner(static_cast<size_t>(n), -1);
  const int e = n / 2;
  std::vector<std::pair<int, int>> chosen;
  auto emit = [&]() {
    const unsigned limit = with_signs ? 1u << e : 1u;
    for (unsigned mask = 0; mask < limit; ++mask) {
      std::vector<EdgePair> pairs;
      for (int i = 0; i < e; ++i)
        pairs.emplace_back(chosen[static_cast<size_t>(i)].first,
                           chosen[static_cast<size_t>(i)].second,
                           (mask >> i) & 1u ? Sign::minus : Sign::plus);
      fn(PlanarDiagram(n, std::move(pairs)));
    }
  };
  auto rec = [&](auto&& self) -> void {
    int a = 0;
    while (a < n && partner[static_cast<size_t>(a)] != -1) ++a;
    if (a == n) {
      emit();
      return;
    }
    partner[static_cast<size_t>(a)] = a;
    for (int b = a + 1; b < n; ++b) {
      if (partner[static_cast<size_t>(b)] != -1) continue;
      partner[static_cast<size_t>(b)] = a;
      chosen.emplace_back(a, b);
      self(self);
      chosen.pop_back();
      partner[static_cast<size_t>(b)] = -1;
    }
    partner[static_cast<size_t>(a)] = -1;
  };
  rec(rec);
}

template <typename F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace tiling::testing
