#include "rabi/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "rabi/errors.hpp"

namespace rabi {

Spectrum::Spectrum(std::vector<double> eigenvalues)
    : eigenvalues_(std::move(eigenvalues)), gap_min_(std::numeric_limits<double>::infinity()) {
  if (eigenvalues_.empty()) throw ValidationError("Spectrum: no eigenvalues");
  for (double v : eigenvalues_)
    if (!std::isfinite(v)) throw ValidationError("Spectrum: non-finite eigenvalue");
  std::sort(eigenvalues_.begin(), eigenvalues_.end(), std::greater<>());
  for (std::size_t i = 1; i < eigenvalues_.size(); ++i)
    gap_min_ = std::min(gap_min_, eigenvalues_[i - 1] - eigenvalues_[i]);
}

double Spectrum::scale() const {
  return std::max(std::abs(eigenvalues_.front()), std::abs(eigenvalues_.back()));
}

bool Spectrum::is_symmetric(double tol) const {
  const std::size_t n = eigenvalues_.size();
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(eigenvalues_[i] + eigenvalues_[n - 1 - i]) > tol) return false;
  return true;
}

CubicRoots cardano_cubic(double a, double b, double c) {
  using std::numbers::pi;
  CubicRoots r;
  r.p = b / 3.0 - a * a / 9.0;
  r.q = -c + a * b / 3.0 - 2.0 * a * a * a / 27.0;
  r.discriminant = r.q * r.q + 4.0 * r.p * r.p * r.p;

  // Rounding can push a double root's zero discriminant slightly positive.
  const double disc_scale = r.q * r.q + 4.0 * std::abs(r.p * r.p * r.p);
  if (r.discriminant > 1e-12 * disc_scale + std::numeric_limits<double>::min()) {
    throw NumericalError("cardano_cubic: cubic has complex roots (q^2 + 4p^3 = " +
                         std::to_string(r.discriminant) + " > 0)");
  }
  const double disc = std::min(r.discriminant, 0.0);

  const Complex sqrt_disc{0.0, std::sqrt(-disc)};
  const Complex u3 = (-r.q + sqrt_disc) / 2.0;
  const Complex v3 = (-r.q - sqrt_disc) / 2.0;
  Complex u0 = std::pow(u3, 1.0 / 3.0);
  Complex v0;
  if (std::abs(u0) > 0) {
    v0 = -r.p / u0;
  } else {
    // u3 = 0 only when q = p = 0: triple root at a/3.
    v0 = std::pow(v3, 1.0 / 3.0);
  }

  const Complex sigma = std::polar(1.0, 2.0 * pi / 3.0);
  const Complex sigma2 = sigma * sigma;
  const Complex shift{a / 3.0, 0.0};
  Complex xs[3] = {u0 + v0 + shift, sigma * u0 + sigma2 * v0 + shift, sigma2 * u0 + sigma * v0 + shift};

  const double mag = std::max({1.0, std::abs(a), std::abs(u0) + std::abs(v0)});
  double roots[3];
  for (int i = 0; i < 3; ++i) {
    if (std::abs(xs[i].imag()) > 1e-10 * mag) {
      throw NumericalError("cardano_cubic: imaginary parts failed to cancel");
    }
    roots[i] = xs[i].real();
  }
  std::sort(roots, roots + 3, std::greater<>());
  r.x1 = roots[0];
  r.x2 = roots[1];
  r.x3 = roots[2];
  return r;
}

namespace {

double sq(double v) { return v * v; }

// Rounding may leave a value that is mathematically >= 0 slightly negative.
double checked_nonneg(double v, double scale, const char* what) {
  if (v >= 0) return v;
  if (v < -1e-12 * std::max(scale, 1e-300)) {
    throw NumericalError(std::string("eigenvalues_closed: negative ") + what);
  }
  return 0.0;
}

std::vector<double> mirrored(const std::vector<double>& positive, bool with_zero) {
  std::vector<double> all;
  for (double v : positive) all.push_back(v);
  if (with_zero) all.push_back(0.0);
  for (double v : positive) all.push_back(-v);
  return all;
}

}  // namespace

Spectrum eigenvalues_closed(const CouplingVector& g) {
  const std::size_t n = g.levels();
  if (n < 2 || n > 7) {
    throw ValidationError("eigenvalues_closed: closed forms exist for 2 <= n <= 7, got n=" +
                          std::to_string(n));
  }
  switch (n) {
    case 2:
      return Spectrum(mirrored({g.g(1)}, false));
    case 3:
      return Spectrum(mirrored({std::sqrt(sq(g.g(1)) + sq(g.g(2)))}, true));
    case 4: {
      const double a = sq(g.g(2)) + sq(g.g(1) + g.g(3));
      const double b = sq(g.g(2)) + sq(g.g(1) - g.g(3));
      const double ra = std::sqrt(a), rb = std::sqrt(b);
      return Spectrum(mirrored({(ra + rb) / 2.0, (ra - rb) / 2.0}, false));
    }
    case 5: {
      const double sum = sq(g.g(1)) + sq(g.g(2)) + sq(g.g(3)) + sq(g.g(4));
      const double pairs =
          sq(g.g(1)) * sq(g.g(3)) + sq(g.g(1)) * sq(g.g(4)) + sq(g.g(2)) * sq(g.g(4));
      const double a = sum + 2.0 * std::sqrt(pairs);
      const double b = checked_nonneg(sum - 2.0 * std::sqrt(pairs), sum, "B");
      const double ra = std::sqrt(a), rb = std::sqrt(b);
      return Spectrum(mirrored({(ra + rb) / 2.0, (ra - rb) / 2.0}, true));
    }
    default: {
      // n = 6, 7: lambda^2 = x turns the even part into a cubic.
      const double g1 = sq(g.g(1)), g2 = sq(g.g(2)), g3 = sq(g.g(3)), g4 = sq(g.g(4)),
                   g5 = sq(g.g(5));
      double a, b, c;
      if (n == 6) {
        a = g1 + g2 + g3 + g4 + g5;
        b = g1 * g3 + g1 * g4 + g1 * g5 + g2 * g4 + g2 * g5 + g3 * g5;
        c = g1 * g3 * g5;
      } else {
        const double g6 = sq(g.g(6));
        a = g1 + g2 + g3 + g4 + g5 + g6;
        b = g1 * g3 + g1 * g4 + g1 * g5 + g1 * g6 + g2 * g4 + g2 * g5 + g2 * g6 + g3 * g5 +
            g3 * g6 + g4 * g6;
        c = g1 * g3 * g5 + g1 * g3 * g6 + g1 * g4 * g6 + g2 * g4 * g6;
      }
      const CubicRoots roots = cardano_cubic(a, b, c);
      if (!(roots.x3 > 0)) {
        throw NumericalError("eigenvalues_closed: Cardano roots not strictly positive");
      }
      return Spectrum(mirrored({std::sqrt(roots.x1), std::sqrt(roots.x2), std::sqrt(roots.x3)},
                               n == 7));
    }
  }
}

namespace {

// Ratio form of the recurrence: q_k = f_k / f_{k-1} = (lambda - 0) - g_{k-1}^2 / q_{k-1}.
// The count of negative ratios is the count of eigenvalues above lambda; a zero ratio
// is nudged off zero.
std::size_t count_below(std::span<const double> g, double lambda, double pivmin) {
  const std::size_t n = g.size() + 1;
  std::size_t negatives = 0;
  double q = lambda;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0) ++negatives;
  for (std::size_t k = 1; k < n; ++k) {
    q = lambda - g[k - 1] * g[k - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0) ++negatives;
  }
  return n - negatives;
}

double pivot_floor(const CouplingVector& g) {
  double gmax = 0;
  for (double v : g.values()) gmax = std::max(gmax, v * v);
  return std::numeric_limits<double>::min() * std::max(1.0, gmax);
}

}  // namespace

std::size_t sturm_count(const CouplingVector& g, double lambda) {
  return count_below(g.values(), lambda, pivot_floor(g));
}

Spectrum eigenvalues_general(const CouplingVector& g, double tol) {
  if (!(tol > 0)) throw ValidationError("eigenvalues_general: tol must be positive");
  const std::size_t n = g.levels();
  const std::size_t m = n / 2;
  const double radius = g.gershgorin_radius();
  const double step_tol = tol * radius;
  const double pivmin = pivot_floor(g);
  const CharPoly poly = char_poly_recurrence(g);

  // Newton runs on the even part E(lambda^2) so the odd-n factor lambda never enters.
  CharPoly even = poly;
  even.odd_parity = false;
  even.degree = 2 * m;

  constexpr int kMaxIterations = 60;
  const double upper = radius * (1.0 + 1e-12) + pivmin;

  std::vector<double> positive;
  positive.reserve(m);
  // Ascending index i of the eigenvalue; the positive ones are i = n-m .. n-1.
  for (std::size_t i = n - 1; i + 1 > n - m; --i) {
    double lo = 0.0;
    double hi = upper;
    std::size_t count_lo = count_below(g.values(), lo, pivmin);
    std::size_t count_hi = n;

    // Isolation: shrink until (lo, hi] holds only eigenvalue i.
    while (count_hi - count_lo > 1 || count_lo > i || count_hi < i + 1) {
      const double mid = 0.5 * (lo + hi);
      const std::size_t c = count_below(g.values(), mid, pivmin);
      if (c <= i) {
        lo = mid;
        count_lo = c;
      } else {
        hi = mid;
        count_hi = c;
      }
      if (hi - lo <= step_tol) break;
    }

    double x = 0.5 * (lo + hi);
    bool converged = hi - lo <= step_tol;
    for (int it = 0; it < kMaxIterations && !converged; ++it) {
      const double f = eval_char_poly(even, x);
      const double df = eval_char_poly_derivative(even, x);
      double next = df != 0 ? x - f / df : lo;
      const bool newton_step = std::isfinite(next) && next >= lo && next <= hi;
      if (!newton_step) next = 0.5 * (lo + hi);
      const double delta = std::abs(next - x);
      x = next;
      if (count_below(g.values(), x, pivmin) <= i) {
        lo = x;
      } else {
        hi = x;
      }
      converged = (newton_step && delta <= step_tol) || hi - lo <= step_tol;
    }
    if (!converged) {
      throw NumericalError("eigenvalues_general: no convergence for eigenvalue " +
                           std::to_string(i) + " after " + std::to_string(kMaxIterations) +
                           " iterations");
    }
    // Newton stops near the accuracy floor of polynomial evaluation; Sturm counts stay
    // reliable below it, so tighten around x and bisect down to adjacent doubles.
    const double probe = std::max(step_tol, pivmin);
    if (x - probe > lo && count_below(g.values(), x - probe, pivmin) <= i) lo = x - probe;
    if (x + probe < hi && count_below(g.values(), x + probe, pivmin) > i) hi = x + probe;
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (count_below(g.values(), mid, pivmin) <= i) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    positive.push_back(0.5 * (lo + hi));
  }
  return Spectrum(mirrored(positive, n % 2 == 1));
}

}  // namespace rabi
