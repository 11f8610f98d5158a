#pragma once

#include "rabi/matrix.hpp"
#include "rabi/spectral_core.hpp"
#include "rabi/spectrum.hpp"

namespace rabi {

/// e^{-itM} by scaling and squaring of a truncated Taylor series.
ComplexMatrix oracle_expm(const ComplexMatrix& m, double t);

/// Eigenvalues of C by cyclic Jacobi rotations on the dense matrix.
Spectrum oracle_eigen(const CouplingVector& g);

/// Cyclic Jacobi on a dense real symmetric matrix (row-major, dim x dim).
std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t dim);

}  // namespace rabi
