#include "rabi/oracle.hpp"

#include <cmath>

#include "rabi/errors.hpp"

namespace rabi {

ComplexMatrix oracle_expm(const ComplexMatrix& m, double t) {
  const std::size_t n = m.dim();
  // A = -itM, scaled by 2^-s so that ||A||_F <= 1/2.
  ComplexMatrix a = m * Complex{0.0, -t};
  const double norm = a.frobenius_norm();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  a *= std::ldexp(1.0, -squarings);

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  constexpr int kMinTerms = 20;
  constexpr int kMaxTerms = 60;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = term * a;
    term *= 1.0 / k;
    result += term;
    if (k >= kMinTerms && term.frobenius_norm() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t dim) {
  if (a.size() != dim * dim) throw ValidationError("jacobi_eigenvalues: size mismatch");
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * dim + j]; };

  double total = 0;
  for (double v : a) total += v * v;
  const double threshold = 1e-14 * std::sqrt(total);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (i != j) off += at(i, j) * at(i, j);
    if (std::sqrt(off) < threshold) {
      std::vector<double> eig(dim);
      for (std::size_t i = 0; i < dim; ++i) eig[i] = at(i, i);
      return eig;
    }

    for (std::size_t p = 0; p + 1 < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const double apq = at(p, q);
        if (apq == 0) continue;
        // Rotation angle zeroing a_pq (Rutishauser's stable form).
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < dim; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  throw NumericalError("jacobi_eigenvalues: no convergence after 100 sweeps");
}

Spectrum oracle_eigen(const CouplingVector& g) {
  const std::size_t n = g.levels();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    a[(k - 1) * n + k] = g.g(k);
    a[k * n + k - 1] = g.g(k);
  }
  return Spectrum(jacobi_eigenvalues(std::move(a), n));
}

}  // namespace rabi
