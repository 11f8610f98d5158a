#pragma once

#include <vector>

namespace rabi {

/// Real eigenvalues of the coupling matrix, sorted descending.
class Spectrum {
 public:
  /// Sorts its input; throws ValidationError on empty or non-finite input.
  explicit Spectrum(std::vector<double> eigenvalues);

  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  std::size_t size() const { return eigenvalues_.size(); }
  double operator[](std::size_t i) const { return eigenvalues_[i]; }

  /// Smallest distance between neighbouring eigenvalues (infinity for a single value).
  double gap_min() const { return gap_min_; }
  /// Largest |lambda|.
  double scale() const;

  /// lambda_i == -lambda_{n-1-i} for all i, within tol.
  bool is_symmetric(double tol) const;

 private:
  std::vector<double> eigenvalues_;
  double gap_min_;
};

}  // namespace rabi
