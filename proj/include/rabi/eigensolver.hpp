#pragma once

#include <cstddef>

#include "rabi/spectral_core.hpp"
#include "rabi/spectrum.hpp"

namespace rabi {

/// Real roots of x^3 - a x^2 + b x - c, plus the Cardano intermediates.
struct CubicRoots {
  double x1 = 0, x2 = 0, x3 = 0;  // x1 >= x2 >= x3
  double p = 0;                   // b/3 - a^2/9
  double q = 0;                   // -c + ab/3 - 2a^3/27
  double discriminant = 0;        // q^2 + 4p^3, <= 0 for three real roots
};

/**
 * Cardano's formula with the substitution x = y + a/3. u0 is the principal cube
 * root of (-q + sqrt(q^2+4p^3))/2 and v0 = -p/u0, so the three combinations
 * u0+v0, s u0 + s^2 v0, s^2 u0 + s v0 (s = e^{2 pi i/3}) are real.
 * Throws NumericalError when the cubic has complex roots.
 */
CubicRoots cardano_cubic(double a, double b, double c);

/// Closed-form eigenvalues for 2 <= n <= 7.
Spectrum eigenvalues_closed(const CouplingVector& g);

/// Number of eigenvalues of C strictly below lambda (Sturm count from the recurrence).
std::size_t sturm_count(const CouplingVector& g, double lambda);

inline constexpr double kDefaultEigenTol = 1e-13;

/**
 * Eigenvalues for any n: Sturm bisection isolates each non-negative root, Newton on
 * the characteristic polynomial polishes it inside its bracket. Negative roots are
 * mirrored; the zero root of odd n is exact. tol is relative to the Gershgorin radius.
 */
Spectrum eigenvalues_general(const CouplingVector& g, double tol = kDefaultEigenTol);

}  // namespace rabi
