#include "rabi/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rabi/errors.hpp"
#include "rabi/oracle.hpp"

namespace rabi {

SylvesterWeights::SylvesterWeights(const Spectrum& spectrum)
    : lambdas_(spectrum.eigenvalues().begin(), spectrum.eigenvalues().end()) {
  const std::size_t n = lambdas_.size();
  if (n > 1 && spectrum.gap_min() < kDegeneracyThreshold * spectrum.scale()) {
    throw DegenerateSpectrumError("sylvester: eigenvalue gap " + std::to_string(spectrum.gap_min()) +
                                  " below degeneracy threshold");
  }
  const long double overall_sign = (n % 2 == 1) ? 1.0L : -1.0L;  // (-1)^{n+1}

  esym_.assign(n, std::vector<double>(n, 0.0));
  weights_.assign(n * n, 0.0L);
  std::vector<long double> p(n);
  for (std::size_t k = 0; k < n; ++k) {
    // prod_{j != k} (1 - lambda_j z) = sum_j (p_j)_k z^j, i.e. (p_j)_k = (-1)^j e_j.
    std::fill(p.begin(), p.end(), 0.0L);
    p[0] = 1.0L;
    std::size_t len = 1;
    long double denom = 1.0L;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      for (std::size_t r = len; r > 0; --r) p[r] -= lambdas_[j] * p[r - 1];
      ++len;
      denom *= lambdas_[j] - lambdas_[k];
    }
    for (std::size_t j = 0; j < n; ++j) esym_[k][j] = static_cast<double>(p[j]);
    for (std::size_t l = 0; l < n; ++l) {
      weights_[l * n + k] = overall_sign * p[n - l - 1] / denom;
    }
  }
}

std::vector<WideComplex> SylvesterWeights::coefficients_wide(double t) const {
  const std::size_t n = size();
  std::vector<WideComplex> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0L, -static_cast<long double>(t) * lambdas_[k]);
  std::vector<WideComplex> f(n);
  for (std::size_t l = 0; l < n; ++l) {
    WideComplex acc{};
    for (std::size_t k = 0; k < n; ++k) acc += weights_[l * n + k] * phases[k];
    f[l] = acc;
  }
  return f;
}

std::vector<Complex> SylvesterWeights::coefficients(double t) const {
  const auto wide = coefficients_wide(t);
  std::vector<Complex> f(wide.size());
  for (std::size_t l = 0; l < wide.size(); ++l) {
    f[l] = Complex(static_cast<double>(wide[l].real()), static_cast<double>(wide[l].imag()));
  }
  return f;
}

SylvesterCoeffs sylvester_coeffs(const Spectrum& spectrum, double t) {
  const SylvesterWeights w(spectrum);
  return SylvesterCoeffs{t, w.coefficients(t), w.esym_tables()};
}

MatrixPowers::MatrixPowers(const ComplexMatrix& c) : dim_(c.dim()) {
  const std::size_t n = dim_;
  if (n == 0) throw ValidationError("MatrixPowers: empty matrix");
  std::vector<long double> base(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (c(i, j).imag() != 0) throw ValidationError("MatrixPowers: coupling matrix must be real");
      base[i * n + j] = c(i, j).real();
    }
  }
  powers_.reserve(n);
  std::vector<long double> id(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1.0L;
  powers_.push_back(std::move(id));
  for (std::size_t l = 1; l < n; ++l) {
    const auto& prev = powers_.back();
    std::vector<long double> next(n * n, 0.0L);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const long double a = prev[i * n + k];
        if (a == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i * n + j] += a * base[k * n + j];
      }
    powers_.push_back(std::move(next));
  }
}

ComplexMatrix MatrixPowers::combine(std::span<const WideComplex> f) const {
  if (f.size() != powers_.size()) {
    throw ValidationError("expm_sylvester: " + std::to_string(f.size()) +
                          " coefficients for a matrix of dimension " + std::to_string(dim()));
  }
  const std::size_t nn = dim_ * dim_;
  std::vector<WideComplex> acc(nn);
  for (std::size_t l = 0; l < f.size(); ++l) {
    const auto& p = powers_[l];
    for (std::size_t i = 0; i < nn; ++i) acc[i] += f[l] * p[i];
  }
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      const auto& z = acc[i * dim_ + j];
      r(i, j) = Complex(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
  return r;
}

ComplexMatrix MatrixPowers::combine(std::span<const Complex> f) const {
  std::vector<WideComplex> wide(f.begin(), f.end());
  return combine(std::span<const WideComplex>(wide));
}

ComplexMatrix expm_sylvester(const ComplexMatrix& c, const SylvesterCoeffs& coeffs) {
  if (coeffs.f.size() != c.dim()) {
    throw ValidationError("expm_sylvester: " + std::to_string(coeffs.f.size()) +
                          " coefficients for a matrix of dimension " + std::to_string(c.dim()));
  }
  return MatrixPowers(c).combine(coeffs.f);
}

DriveConfig DriveConfig::zero(std::size_t levels) {
  DriveConfig dc;
  dc.omegas.assign(levels - 1, 0.0);
  dc.phis.assign(levels - 1, 0.0);
  return dc;
}

DriveConfig DriveConfig::from_energies(std::vector<double> energies, std::vector<double> phis) {
  if (energies.size() < 2) throw ValidationError("energies: need at least two levels");
  DriveConfig dc;
  dc.e0 = energies.front();
  for (std::size_t k = 1; k < energies.size(); ++k) dc.omegas.push_back(energies[k] - energies[k - 1]);
  dc.phis = phis.empty() ? std::vector<double>(energies.size() - 1, 0.0) : std::move(phis);
  dc.energies = std::move(energies);
  return dc;
}

void DriveConfig::validate(std::size_t levels) const {
  auto check = [&](const std::vector<double>& v, const char* name) {
    if (v.size() != levels - 1) {
      throw ValidationError(std::string(name) + ": expected " + std::to_string(levels - 1) +
                            " values for n=" + std::to_string(levels) + ", got " +
                            std::to_string(v.size()));
    }
    for (double x : v)
      if (!std::isfinite(x)) throw ValidationError(std::string(name) + ": non-finite value");
  };
  check(omegas, "omegas");
  check(phis, "phis");
  if (!std::isfinite(e0)) throw ValidationError("e0: non-finite value");
  if (energies && energies->size() != levels) {
    throw ValidationError("energies: expected " + std::to_string(levels) + " values, got " +
                          std::to_string(energies->size()));
  }
}

std::optional<std::string> DriveConfig::ordering_warning() const {
  if (!energies) return std::nullopt;
  const auto& e = *energies;
  for (std::size_t k = 2; k < e.size(); ++k) {
    if (!(e[k - 1] - e[k - 2] > e[k] - e[k - 1])) {
      return "level gaps are not strictly decreasing (E_" + std::to_string(k - 1) + " - E_" +
             std::to_string(k - 2) + " <= E_" + std::to_string(k) + " - E_" +
             std::to_string(k - 1) + ")";
    }
  }
  return std::nullopt;
}

ComplexMatrix phase_matrix(const DriveConfig& dc, double t) {
  const std::size_t n = dc.omegas.size() + 1;
  if (dc.phis.size() != dc.omegas.size()) throw ValidationError("phase_matrix: omegas/phis length mismatch");
  std::vector<Complex> diag(n);
  diag[0] = 1.0;
  double freq = 0, phase = 0;
  for (std::size_t j = 1; j < n; ++j) {
    freq += dc.omegas[j - 1];
    phase += dc.phis[j - 1];
    diag[j] = std::polar(1.0, freq * t + phase);
  }
  return ComplexMatrix::diagonal(diag);
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::closed: return "closed";
    case Method::general: return "general";
    case Method::oracle: return "oracle";
  }
  return "unknown";
}

namespace {

Spectrum solve_spectrum(const CouplingVector& g, Method method, double tol) {
  switch (method) {
    case Method::closed:
      if (g.levels() > 7) {
        throw ValidationError("method: closed forms support n <= 7, got n=" +
                              std::to_string(g.levels()));
      }
      return eigenvalues_closed(g);
    case Method::general: return eigenvalues_general(g, tol);
    case Method::oracle: return oracle_eigen(g);
  }
  throw ValidationError("method: unknown");
}

}  // namespace

Propagator::Propagator(CouplingVector g, DriveConfig dc, Method method, double tol)
    : g_(std::move(g)),
      dc_(std::move(dc)),
      requested_(method),
      used_(method),
      c_(build_coupling_matrix(g_)),
      spectrum_(solve_spectrum(g_, method, tol)) {
  dc_.validate(g_.levels());
  if (method == Method::oracle) return;
  try {
    weights_.emplace(spectrum_);
    powers_.emplace(c_);
  } catch (const DegenerateSpectrumError&) {
    used_ = Method::oracle;
  }
}

ComplexMatrix Propagator::expm(double t) const {
  if (used_ == Method::oracle) return oracle_expm(c_, t);
  const auto f = weights_->coefficients_wide(t);
  return powers_->combine(std::span<const WideComplex>(f));
}

ComplexMatrix Propagator::at(double t) const {
  ComplexMatrix u = phase_matrix(dc_, t).adjoint() * expm(t);
  u *= std::polar(1.0, -t * dc_.e0);
  return u;
}

ComplexMatrix evolution_operator(const CouplingVector& g, const DriveConfig& dc, double t,
                                 Method method) {
  return Propagator(g, dc, method).at(t);
}

std::vector<double> populations(const ComplexMatrix& u, const InitialState& initial) {
  const std::size_t n = u.dim();
  std::vector<Complex> psi(n);
  if (const auto* level = std::get_if<std::size_t>(&initial)) {
    if (*level >= n) {
      throw ValidationError("initial: level " + std::to_string(*level) + " out of range for n=" +
                            std::to_string(n));
    }
    psi[*level] = 1.0;
  } else {
    psi = std::get<std::vector<Complex>>(initial);
    if (psi.size() != n) {
      throw ValidationError("initial: expected " + std::to_string(n) + " amplitudes, got " +
                            std::to_string(psi.size()));
    }
    double norm2 = 0;
    for (const auto& z : psi) norm2 += std::norm(z);
    if (!(std::abs(norm2 - 1.0) <= 1e-10)) {
      throw ValidationError("initial: amplitude vector is not normalized (|psi|^2 = " +
                            std::to_string(norm2) + ")");
    }
  }
  const auto out = u.apply(psi);
  std::vector<double> p(n);
  for (std::size_t k = 0; k < n; ++k) p[k] = std::norm(out[k]);
  return p;
}

}  // namespace rabi
