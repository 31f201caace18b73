#pragma once

// Brute-force references shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "tvb/cones.hpp"

namespace tvb::oracle {

inline std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Local expansion: h(p + t) with t_k = 0 at a coordinate where p_k != 0,
// expanded monomial by monomial; the lowest degree in t is the multiplicity.
inline unsigned multiplicity(const Polynomial& h, const RatVector& p) {
  const Field& fld = h.field();
  const std::size_t r = h.nvars();
  std::size_t k = 0;
  while (sgn(fld.from_rational(p[k])) == 0) ++k;
  Polynomial total(fld, r);
  for (const auto& [e, c] : h.terms()) {
    Polynomial term = Polynomial::constant(fld, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      Polynomial shifted = Polynomial::constant(fld, r, p[i]);
      if (i != k) shifted = shifted + Polynomial::variable(fld, r, i);
      term = term * shifted.pow(e[i]);
    }
    total = total + term;
  }
  return static_cast<unsigned>(total.lowest_degree());
}

// Nonincreasing m in [-1, d] with sum 3d - 1 and sum of squares d^2 + 1.
inline std::set<CurveClass> minus_one_classes(std::size_t s, long max_d) {
  std::set<CurveClass> out;
  for (long d = 0; d <= max_d; ++d) {
    std::vector<Integer> m;
    std::function<void(long, long, long)> rec = [&](long hi, long sum, long sq) {
      if (m.size() == s) {
        if (sum == 3 * d - 1 && sq == d * d + 1) out.insert(CurveClass{d, m});
        return;
      }
      for (long v = hi; v >= -1; --v) {
        if (sq + v * v > d * d + 1) continue;
        m.push_back(v);
        rec(v, sum + v, sq + v * v);
        m.pop_back();
      }
    };
    rec(d, 0, 0);
  }
  return out;
}

// Random nonzero point of k^r and a product of one to four linear forms,
// about half of them forced through the point.
struct FormAtPoint {
  Polynomial form;
  RatVector point;
};

inline FormAtPoint random_form_at_point(std::mt19937_64& rng, const Field& fld, std::size_t r) {
  std::uniform_int_distribution<long> coef(-4, 4);
  std::uniform_int_distribution<int> pick(0, 3);
  RatVector p(r);
  do {
    for (auto& x : p) x = fld.from_rational(coef(rng));
  } while (std::all_of(p.begin(), p.end(), [](const Rational& x) { return sgn(x) == 0; }));
  std::size_t k = 0;
  while (sgn(p[k]) == 0) ++k;
  Polynomial h = Polynomial::constant(fld, r, 1);
  const int factors = 1 + pick(rng);
  for (int f = 0; f < factors; ++f) {
    RatVector c(r);
    Polynomial lin(fld, r);
    while (lin.is_zero()) {
      for (auto& x : c) x = fld.from_rational(coef(rng));
      if (pick(rng) < 2) {
        Rational dot = 0;
        for (std::size_t i = 0; i < r; ++i) dot = fld.add(dot, fld.mul(c[i], p[i]));
        c[k] = fld.sub(c[k], fld.div(dot, p[k]));
      }
      lin = Polynomial::linear_form(fld, c);
    }
    h = h * lin;
  }
  return {h, p};
}

// The linear form vanishing at two points of P^2 (cross product).
inline Polynomial line_through(const Field& fld, const RatVector& a, const RatVector& b) {
  return Polynomial::linear_form(fld, {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                       a[0] * b[1] - a[1] * b[0]});
}

// Random products of lines through pairs of the given points and random lines.
inline Polynomial random_curve(std::mt19937_64& rng, const Field& fld,
                               const std::vector<RatVector>& pts) {
  std::uniform_int_distribution<std::size_t> which(0, pts.size() - 1);
  std::uniform_int_distribution<long> coef(-5, 5);
  Polynomial h = Polynomial::constant(fld, 3, 1);
  const std::size_t n = 1 + which(rng) % 3;
  for (std::size_t i = 0; i < n; ++i) {
    if (which(rng) < 6) {
      h = h * line_through(fld, pts[which(rng)], pts[which(rng)]);
      if (h.is_zero()) h = Polynomial::linear_form(fld, {1, 0, 0});
    } else {
      h = h * Polynomial::linear_form(fld, {coef(rng), coef(rng), 1});
    }
  }
  return h;
}

}  // namespace tvb::oracle
