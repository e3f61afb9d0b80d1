#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tiling/core.hpp"

namespace tiling {

/// Exact rational with a positive denominator, reduced. The tile-count bounds
/// distinguish strict from inclusive endpoints, so floating point is not used.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) fail(Errc::internal, "zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_integer() const { return den == 1; }
  long long floor() const {
    long long q = num / den;
    return (num % den != 0 && num < 0) ? q - 1 : q;
  }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num == y.num && x.den == y.den;
  }
  friend bool operator<(const Rational& x, const Rational& y) {
    return x.num * y.den < y.num * x.den;
  }

  /// Finite decimals print as decimals ("0.2"), everything else as "p/q".
  std::string to_string() const {
    long long d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
      d /= 2;
      ++twos;
    }
    while (d % 5 == 0) {
      d /= 5;
      ++fives;
    }
    if (d != 1) return std::to_string(num) + "/" + std::to_string(den);
    if (den == 1) return std::to_string(num);
    const int digits = twos > fives ? twos : fives;
    long long scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    long long scaled = num * (scale / den);
    const bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string frac = std::to_string(scaled % scale);
    frac.insert(frac.begin(), static_cast<size_t>(digits) - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string out = (neg ? "-" : "") + std::to_string(scaled / scale);
    if (!frac.empty()) out += "." + frac;
    return out;
  }
};

/// The admissible tile-count interval for n-gon tilings of a surface with
/// Euler number chi: lower_exclusive < f <= upper_inclusive.
struct TileBounds {
  Rational lower_exclusive;
  Rational upper_inclusive;
  /// True when the upper bound is an integer; a tiling attaining it has every
  /// vertex of degree exactly 3.
  bool max_is_all_degree_three = false;
};

inline TileBounds tile_count_bounds(int n, int chi) {
  if (n < 7)
    fail(Errc::out_of_scope, "polygon size " + std::to_string(n) +
                                 " below 7; tile counts are unbounded");
  if (chi >= 0)
    fail(Errc::out_of_scope,
         "Euler number must be negative, got " + std::to_string(chi));
  TileBounds b;
  b.lower_exclusive = Rational(-2LL * chi, n - 2);
  b.upper_inclusive = Rational(-6LL * chi, n - 6);
  b.max_is_all_degree_three = b.upper_inclusive.is_integer();
  return b;
}

/// All (n, f) combinations admissible for Euler number chi < 0: f lies in the
/// tile-count interval, f is even when n is odd, and n is capped at 3(2-chi)
/// for odd n and 6(1-chi) for even n. Entries with no admissible f are
/// omitted. Sorted by ascending n.
inline std::vector<std::pair<int, std::vector<int>>> admissible_tilings(
    int chi) {
  if (chi >= 0)
    fail(Errc::out_of_scope,
         "Euler number must be negative, got " + std::to_string(chi));
  std::vector<std::pair<int, std::vector<int>>> out;
  const int odd_cap = 3 * (2 - chi);
  const int even_cap = 6 * (1 - chi);
  const int cap = odd_cap > even_cap ? odd_cap : even_cap;
  for (int n = 7; n <= cap; ++n) {
    if (n % 2 == 1 && n > odd_cap) continue;
    if (n % 2 == 0 && n > even_cap) continue;
    TileBounds b = tile_count_bounds(n, chi);
    long long f_min = b.lower_exclusive.floor() + 1;
    long long f_max = b.upper_inclusive.floor();
    std::vector<int> fs;
    for (long long f = f_min; f <= f_max; ++f) {
      if (n % 2 == 1 && f % 2 == 1) continue;
      fs.push_back(static_cast<int>(f));
    }
    if (!fs.empty()) out.emplace_back(n, std::move(fs));
  }
  return out;
}

/// The even polygon sizes a single-tile tiling of Euler number chi < 0 can
/// have: max(8, 2(2-chi)) <= n <= 6(1-chi). The clamp at 8 keeps the n >= 7
/// scope with n even.
inline std::pair<int, int> single_tile_n_range(int chi) {
  if (chi >= 0)
    fail(Errc::out_of_scope,
         "Euler number must be negative, got " + std::to_string(chi));
  int lo = 2 * (2 - chi);
  if (lo < 8) lo = 8;
  return {lo, 6 * (1 - chi)};
}

}  // namespace tiling
