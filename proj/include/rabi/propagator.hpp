#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rabi/eigensolver.hpp"
#include "rabi/matrix.hpp"
#include "rabi/spectral_core.hpp"
#include "rabi/spectrum.hpp"

namespace rabi {

/// Gaps below this fraction of the spectral scale are treated as degenerate.
inline constexpr double kDegeneracyThreshold = 1e-8;

/**
 * @brief Lagrange-Sylvester coefficients f_0(t)..f_{n-1}(t) with e^{-itA} = sum_l f_l(t) A^l.
 *
 * esym_tables[k][j] holds the signed symmetric function (p_j)_k = (-1)^j e_j of the
 * eigenvalues with lambda_k removed, j = 0..n-1, (p_0)_k = 1. With this sign
 *   f_l(t) = (-1)^{n+1} sum_k (p_{n-l-1})_k e^{-it lambda_k} / prod_{j != k} (lambda_j - lambda_k).
 */
struct SylvesterCoeffs {
  double t = 0;
  std::vector<Complex> f;
  std::vector<std::vector<double>> esym_tables;
};

/// Extended-precision scalar used inside the Sylvester sums, which cancel heavily.
using WideComplex = std::complex<long double>;

/**
 * Time-independent part of the Sylvester coefficients: f_l(t) = sum_k w[l][k] e^{-it lambda_k}.
 * Built once per spectrum and reused for every sample of a time grid.
 */
class SylvesterWeights {
 public:
  /// Throws DegenerateSpectrumError if gap_min < kDegeneracyThreshold * scale.
  explicit SylvesterWeights(const Spectrum& spectrum);

  std::size_t size() const { return lambdas_.size(); }
  const std::vector<std::vector<double>>& esym_tables() const { return esym_; }
  double weight(std::size_t l, std::size_t k) const {
    return static_cast<double>(weights_[l * size() + k]);
  }

  std::vector<Complex> coefficients(double t) const;
  std::vector<WideComplex> coefficients_wide(double t) const;

 private:
  std::vector<long double> lambdas_;
  std::vector<std::vector<double>> esym_;
  std::vector<long double> weights_;  // row l, column k
};

SylvesterCoeffs sylvester_coeffs(const Spectrum& spectrum, double t);

/// C^0 .. C^{n-1}, computed once and combined with per-t coefficients.
class MatrixPowers {
 public:
  explicit MatrixPowers(const ComplexMatrix& c);

  std::size_t dim() const { return dim_; }

  /// sum_l f[l] C^l
  ComplexMatrix combine(std::span<const Complex> f) const;
  ComplexMatrix combine(std::span<const WideComplex> f) const;

 private:
  std::size_t dim_;
  // C is real symmetric, so its powers are kept as real row-major blocks.
  std::vector<std::vector<long double>> powers_;
};

/// e^{-itC} = sum_l f_l(t) C^l. Throws ValidationError on dimension mismatch.
ComplexMatrix expm_sylvester(const ComplexMatrix& c, const SylvesterCoeffs& coeffs);

/**
 * @brief Drive fields: frequencies omega_k, phases phi_k (k = 1..n-1) and ground energy E_0.
 *
 * When built from level energies, omega_k = E_k - E_{k-1} and e0 = E_0.
 */
struct DriveConfig {
  std::vector<double> omegas;
  std::vector<double> phis;
  double e0 = 0;
  std::optional<std::vector<double>> energies;

  /// All-zero drive for an n-level system.
  static DriveConfig zero(std::size_t levels);
  /// Derives omegas and e0; phis default to zero when empty.
  static DriveConfig from_energies(std::vector<double> energies, std::vector<double> phis = {});

  /// Throws ValidationError unless omegas and phis have n-1 finite entries.
  void validate(std::size_t levels) const;

  /// Set when energies were supplied and the level gaps are not strictly decreasing.
  std::optional<std::string> ordering_warning() const;
};

/// diag(1, e^{i(Omega_1 t + Phi_1)}, ..., e^{i(Omega_{n-1} t + Phi_{n-1})}) with cumulative sums.
ComplexMatrix phase_matrix(const DriveConfig& dc, double t);

enum class Method { closed, general, oracle };

std::string_view to_string(Method m);

/**
 * @brief U(t) = e^{-itE_0} V(t)^dagger e^{-itC} for a fixed system and solver path.
 *
 * Spectrum, Sylvester weights and the powers of C are prepared once; at(t) only
 * evaluates scalar coefficients. If the spectrum is degenerate the exponential falls
 * back to the series oracle, reported through method_used().
 */
class Propagator {
 public:
  Propagator(CouplingVector g, DriveConfig dc, Method method, double tol = kDefaultEigenTol);

  Method method_requested() const { return requested_; }
  Method method_used() const { return used_; }
  const Spectrum& spectrum() const { return spectrum_; }
  const ComplexMatrix& coupling_matrix() const { return c_; }

  /// e^{-itC}
  ComplexMatrix expm(double t) const;
  /// U(t)
  ComplexMatrix at(double t) const;

 private:
  CouplingVector g_;
  DriveConfig dc_;
  Method requested_;
  Method used_;
  ComplexMatrix c_;
  Spectrum spectrum_;
  std::optional<SylvesterWeights> weights_;
  std::optional<MatrixPowers> powers_;
};

ComplexMatrix evolution_operator(const CouplingVector& g, const DriveConfig& dc, double t,
                                 Method method);

/// Either a level index or a normalized amplitude vector.
using InitialState = std::variant<std::size_t, std::vector<Complex>>;

/// P_k = |(U psi_0)_k|^2. Throws ValidationError for a bad index or non-normalized state.
std::vector<double> populations(const ComplexMatrix& u, const InitialState& initial);

}  // namespace rabi
