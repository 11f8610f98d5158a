#include "rabi/spectral_core.hpp"

#include <cmath>
#include <string>

#include "rabi/errors.hpp"

namespace rabi {

CouplingVector::CouplingVector(std::vector<double> g) : g_(std::move(g)) {
  if (g_.empty()) throw ValidationError("couplings: need at least one coupling (n >= 2)");
  for (std::size_t k = 0; k < g_.size(); ++k) {
    if (!std::isfinite(g_[k]) || g_[k] <= 0) {
      throw ValidationError("couplings: g_" + std::to_string(k + 1) +
                            " must be finite and strictly positive");
    }
  }
}

double CouplingVector::gershgorin_radius() const {
  double r = 0;
  for (std::size_t row = 0; row < levels(); ++row) {
    const double left = row > 0 ? g_[row - 1] : 0.0;
    const double right = row < g_.size() ? g_[row] : 0.0;
    r = std::max(r, left + right);
  }
  return r;
}

std::vector<double> CharPoly::dense() const {
  std::vector<double> c(degree + 1, 0.0);
  const std::size_t shift = odd_parity ? 1 : 0;
  const std::size_t m = even_coeffs.size();
  c[degree] = 1.0;
  for (std::size_t k = 1; k <= m; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c[2 * (m - k) + shift] = sign * even_coeffs[k - 1];
  }
  return c;
}

ComplexMatrix build_coupling_matrix(const CouplingVector& g) {
  const std::size_t n = g.levels();
  ComplexMatrix c(n);
  for (std::size_t k = 1; k < n; ++k) {
    c(k - 1, k) = g.g(k);
    c(k, k - 1) = g.g(k);
  }
  return c;
}

namespace {

CharPoly from_dense(const std::vector<double>& dense) {
  CharPoly p;
  p.degree = dense.size() - 1;
  p.odd_parity = p.degree % 2 == 1;
  const std::size_t m = p.degree / 2;
  const std::size_t shift = p.odd_parity ? 1 : 0;
  p.even_coeffs.resize(m);
  for (std::size_t k = 1; k <= m; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    p.even_coeffs[k - 1] = sign * dense[2 * (m - k) + shift];
  }
  return p;
}

}  // namespace

CharPoly char_poly_recurrence(const CouplingVector& g) {
  // prev = f_{k-2}, cur = f_{k-1}; dense coefficient arrays indexed by power.
  std::vector<double> prev{1.0};
  std::vector<double> cur{0.0, 1.0};
  for (std::size_t k = 2; k <= g.levels(); ++k) {
    const double g2 = g.g(k - 1) * g.g(k - 1);
    std::vector<double> next(k + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= g2 * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return from_dense(cur);
}

std::size_t for_each_admissible_tuple(std::size_t max_index, std::size_t k,
                                      const std::function<void(std::span<const std::size_t>)>& visit) {
  if (k == 0) {
    visit({});
    return 1;
  }
  // Smallest tuple is (1, 3, 5, ...); it must fit below max_index.
  if (2 * k - 1 > max_index) return 0;
  std::vector<std::size_t> idx(k);
  for (std::size_t j = 0; j < k; ++j) idx[j] = 2 * j + 1;

  std::size_t count = 0;
  while (true) {
    visit(idx);
    ++count;
    // Rightmost position that can still advance: idx[j] may reach max_index - 2(k-1-j).
    std::size_t j = k;
    while (j > 0 && idx[j - 1] == max_index - 2 * (k - j)) --j;
    if (j == 0) break;
    --j;
    ++idx[j];
    for (std::size_t r = j + 1; r < k; ++r) idx[r] = idx[r - 1] + 2;
  }
  return count;
}

double gap_constrained_sum(std::span<const double> squares, std::size_t k) {
  double total = 0;
  for_each_admissible_tuple(squares.size(), k, [&](std::span<const std::size_t> tuple) {
    double term = 1;
    for (std::size_t i : tuple) term *= squares[i - 1];
    total += term;
  });
  return total;
}

CharPoly char_poly_closed_form(const CouplingVector& g) {
  std::vector<double> squares;
  squares.reserve(g.values().size());
  for (double v : g.values()) squares.push_back(v * v);

  CharPoly p;
  p.degree = g.levels();
  p.odd_parity = p.degree % 2 == 1;
  const std::size_t m = p.degree / 2;
  p.even_coeffs.resize(m);
  for (std::size_t k = 1; k <= m; ++k) p.even_coeffs[k - 1] = gap_constrained_sum(squares, k);
  return p;
}

double eval_char_poly(const CharPoly& p, double lambda) {
  const double x = lambda * lambda;
  double acc = 1.0;
  for (std::size_t k = 0; k < p.even_coeffs.size(); ++k) {
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;
    acc = acc * x + sign * p.even_coeffs[k];
  }
  return p.odd_parity ? lambda * acc : acc;
}

double eval_char_poly_derivative(const CharPoly& p, double lambda) {
  const auto c = p.dense();
  double acc = 0;
  for (std::size_t i = c.size() - 1; i >= 1; --i) acc = acc * lambda + static_cast<double>(i) * c[i];
  return acc;
}

}  // namespace rabi
