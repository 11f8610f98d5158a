#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rabi/matrix.hpp"

namespace rabi {

/**
 * @brief The n-1 nearest-neighbour coupling constants g_1..g_{n-1} of an n-level ladder.
 *
 * Every coupling must be finite and strictly positive; a zero coupling splits the
 * ladder into independent blocks with a degenerate spectrum and is rejected.
 */
class CouplingVector {
 public:
  explicit CouplingVector(std::vector<double> g);

  /// Number of levels.
  std::size_t levels() const { return g_.size() + 1; }
  std::span<const double> values() const { return g_; }
  /// 1-based access matching g_1..g_{n-1}.
  double g(std::size_t k) const { return g_[k - 1]; }

  /// max_k (g_{k-1} + g_k) with g_0 = g_n = 0; bounds |lambda| for every eigenvalue.
  double gershgorin_radius() const;

 private:
  std::vector<double> g_;
};

/**
 * @brief det(lambda I - C) in even-part form.
 *
 * For n = 2m:   lambda^{2m} - c_1 lambda^{2m-2} + c_2 lambda^{2m-4} - ... + (-1)^m c_m
 * For n = 2m+1: lambda times the same bracket.
 * even_coeffs holds the unsigned c_1..c_m; all are positive for valid couplings.
 */
struct CharPoly {
  std::size_t degree = 0;
  std::vector<double> even_coeffs;
  bool odd_parity = false;

  /// Dense coefficients, index = power of lambda.
  std::vector<double> dense() const;
};

ComplexMatrix build_coupling_matrix(const CouplingVector& g);

/// Three-term recurrence f_k = lambda f_{k-1} - g_{k-1}^2 f_{k-2} run on coefficient arrays.
CharPoly char_poly_recurrence(const CouplingVector& g);

/// Direct enumeration of non-adjacent index tuples (weighted matchings of a path).
CharPoly char_poly_closed_form(const CouplingVector& g);

/// Value of the full signed polynomial at lambda.
double eval_char_poly(const CharPoly& p, double lambda);

/// d/dlambda of the full signed polynomial, from the differentiated coefficients.
double eval_char_poly_derivative(const CharPoly& p, double lambda);

/**
 * Visits every strictly increasing k-tuple from {1..max_index} whose consecutive
 * entries differ by at least 2, in lexicographic order. Iterative; no recursion.
 * Returns the number of tuples visited.
 */
std::size_t for_each_admissible_tuple(std::size_t max_index, std::size_t k,
                                      const std::function<void(std::span<const std::size_t>)>& visit);

/// Sum over admissible k-tuples from {1..squares.size()} of the product of squares[i-1].
/// Empty product (k = 0) is 1.
double gap_constrained_sum(std::span<const double> squares, std::size_t k);

}  // namespace rabi
