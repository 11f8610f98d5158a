#pragma once

// Shared test fixtures and reference computations. Nothing here calls into the
// code under test except for types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "rabi/matrix.hpp"
#include "rabi/spectral_core.hpp"

namespace rabi::oracles {

inline std::vector<double> random_couplings(std::mt19937_64& rng, std::size_t levels,
                                            double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> g(levels - 1);
  for (auto& v : g) v = dist(rng);
  return g;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

/// Eigenvalues of the n-level ladder with all couplings equal to 1: 2cos(k pi/(n+1)).
inline std::vector<double> equal_coupling_spectrum(std::size_t n) {
  std::vector<double> v;
  for (std::size_t k = 1; k <= n; ++k) v.push_back(2.0 * std::cos(k * M_PI / (n + 1.0)));
  return v;
}

/**
 * Literal even-part coefficients [c_1, c_2, ...] of f_2..f_7, written out term by
 * term as sums of products of squared couplings. g is 1-based via g[k-1].
 */
inline std::vector<double> literal_char_poly(const std::vector<double>& gv) {
  auto s = [&](int k) { return gv[k - 1] * gv[k - 1]; };
  switch (gv.size() + 1) {
    case 2: return {s(1)};
    case 3: return {s(1) + s(2)};
    case 4: return {s(1) + s(2) + s(3), s(1) * s(3)};
    case 5: return {s(1) + s(2) + s(3) + s(4), s(1) * s(3) + s(1) * s(4) + s(2) * s(4)};
    case 6:
      return {s(1) + s(2) + s(3) + s(4) + s(5),
              s(1) * s(3) + s(1) * s(4) + s(1) * s(5) + s(2) * s(4) + s(2) * s(5) + s(3) * s(5),
              s(1) * s(3) * s(5)};
    case 7:
      return {s(1) + s(2) + s(3) + s(4) + s(5) + s(6),
              s(1) * s(3) + s(1) * s(4) + s(1) * s(5) + s(1) * s(6) + s(2) * s(4) + s(2) * s(5) +
                  s(2) * s(6) + s(3) * s(5) + s(3) * s(6) + s(4) * s(6),
              s(1) * s(3) * s(5) + s(1) * s(3) * s(6) + s(1) * s(4) * s(6) + s(2) * s(4) * s(6)};
    default: return {};
  }
}

/// Recursive gap-constrained sum, independent of the iterative enumerator.
inline double recursive_gap_sum(const std::vector<double>& squares, std::size_t upto, std::size_t k) {
  if (k == 0) return 1.0;
  if (upto < 2 * k - 1) return 0.0;
  // Either index `upto` is unused, or it is used and upto-1 is excluded.
  return recursive_gap_sum(squares, upto - 1, k) +
         squares[upto - 1] * recursive_gap_sum(squares, upto >= 2 ? upto - 2 : 0, k - 1);
}

/// Determinant of lambda I - C by Gaussian elimination with partial pivoting on the dense matrix.
inline double det_lambda_minus_c(const std::vector<double>& g, double lambda) {
  const std::size_t n = g.size() + 1;
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = lambda;
  for (std::size_t k = 1; k < n; ++k) a[(k - 1) * n + k] = a[k * n + k - 1] = -g[k - 1];
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[piv * n + j]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  return det;
}

/// Real roots of f in [lo, hi] by a uniform sign scan followed by bisection.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                                      std::size_t samples) {
  std::vector<double> roots;
  double x0 = lo, f0 = f(lo);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double x1 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples);
    const double f1 = f(x1);
    if (f0 == 0) {
      roots.push_back(x0);
    } else if (f0 * f1 < 0) {
      double a = x0, b = x1, fa = f0;
      for (int it = 0; it < 200 && b - a > 0; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0) { a = b = m; break; }
        if ((fm < 0) == (fa < 0)) { a = m; fa = fm; } else { b = m; }
      }
      roots.push_back(0.5 * (a + b));
    }
    x0 = x1;
    f0 = f1;
  }
  if (f0 == 0) roots.push_back(x0);
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

/**
 * Literal Sylvester coefficients for three eigenvalues, each f_l written out as the
 * three-term sum with explicit numerators and denominators.
 */
inline std::vector<std::complex<double>> literal_sylvester_3(double l1, double l2, double l3, double t) {
  using C = std::complex<double>;
  const C e1 = std::exp(C{0, -t * l1}), e2 = std::exp(C{0, -t * l2}), e3 = std::exp(C{0, -t * l3});
  const double d1 = (l2 - l1) * (l3 - l1);
  const double d2 = (l1 - l2) * (l3 - l2);
  const double d3 = (l1 - l3) * (l2 - l3);
  const C f0 = l2 * l3 * e1 / d1 + l1 * l3 * e2 / d2 + l1 * l2 * e3 / d3;
  const C f1 = -(l2 + l3) * e1 / d1 - (l1 + l3) * e2 / d2 - (l1 + l2) * e3 / d3;
  const C f2 = e1 / d1 + e2 / d2 + e3 / d3;
  return {f0, f1, f2};
}

/// Same for four eigenvalues.
inline std::vector<std::complex<double>> literal_sylvester_4(double l1, double l2, double l3, double l4,
                                                             double t) {
  using C = std::complex<double>;
  const C e1 = std::exp(C{0, -t * l1}), e2 = std::exp(C{0, -t * l2}), e3 = std::exp(C{0, -t * l3}),
          e4 = std::exp(C{0, -t * l4});
  const double d1 = (l2 - l1) * (l3 - l1) * (l4 - l1);
  const double d2 = (l1 - l2) * (l3 - l2) * (l4 - l2);
  const double d3 = (l1 - l3) * (l2 - l3) * (l4 - l3);
  const double d4 = (l1 - l4) * (l2 - l4) * (l3 - l4);
  const C f0 = l2 * l3 * l4 * e1 / d1 + l1 * l3 * l4 * e2 / d2 + l1 * l2 * l4 * e3 / d3 +
               l1 * l2 * l3 * e4 / d4;
  const C f1 = -(l2 * l3 + l2 * l4 + l3 * l4) * e1 / d1 - (l1 * l3 + l1 * l4 + l3 * l4) * e2 / d2 -
               (l1 * l2 + l1 * l4 + l2 * l4) * e3 / d3 - (l1 * l2 + l1 * l3 + l2 * l3) * e4 / d4;
  const C f2 = (l2 + l3 + l4) * e1 / d1 + (l1 + l3 + l4) * e2 / d2 + (l1 + l2 + l4) * e3 / d3 +
               (l1 + l2 + l3) * e4 / d4;
  const C f3 = -e1 / d1 - e2 / d2 - e3 / d3 - e4 / d4;
  return {f0, f1, f2, f3};
}

/// Max relative error of complex coefficient lists, relative to the largest reference magnitude.
inline double coeff_rel_err(const std::vector<std::complex<double>>& got,
                            const std::vector<std::complex<double>>& want) {
  double scale = 0, err = 0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    scale = std::max(scale, std::abs(want[i]));
    err = std::max(err, std::abs(got[i] - want[i]));
  }
  return err / std::max(scale, 1e-300);
}

/// Two-level closed form cos(gt) I - i sin(gt) X.
inline ComplexMatrix two_level_expm(double g, double t) {
  const std::complex<double> c{std::cos(g * t), 0}, s{0, -std::sin(g * t)};
  return ComplexMatrix(2, {c, s, s, c});
}

}  // namespace rabi::oracles
