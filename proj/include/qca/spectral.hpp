#pragma once

#include <span>
#include <vector>

#include "qca/types.hpp"

namespace qca {

/// Eigenangles in [0, 2pi) and matching orthonormal eigenvectors (columns).
struct Eigensystem {
  std::vector<double> angles;
  UnitaryMatrix vectors;
};

/// Eigendecomposition of a unitary via complex Schur form. Throws
/// InvalidArgument when max|UU^dagger - I| > 1e-6 and NumericError when the
/// QR iteration does not converge.
Eigensystem eigendecompose(const UnitaryMatrix& u);

/// Unfolded circular nearest-neighbour spacings: N values, sum N, mean 1.
std::vector<double> spacings(std::span<const double> eigenangles);

/// y = N |v_ij|^2 for every element of an orthonormal eigenvector basis, in
/// column order (all elements of eigenvector 0 first).
std::vector<double> eigvec_elements(const UnitaryMatrix& eigenvectors);

/// Spectral observables of one unitary.
struct SpectralData {
  std::vector<double> eigenangles;  // sorted
  std::vector<double> spacings;
  std::vector<double> eigvec_elements;
};

SpectralData analyze_spectrum(const UnitaryMatrix& u);

/// F(t) = |<psi| (P U)^{-t} U^t |psi>|^2 for t = 1..steps.
std::vector<double> fidelity_decay(const UnitaryMatrix& u, const UnitaryMatrix& perturbation,
                                   const StateVector& state, int steps);

/// exp(i eps sum_j sigma_z^j) on n qubits.
UnitaryMatrix sigma_z_perturbation(int n, double epsilon);

/// Least-squares line through log F(t) against t, using the leading run of
/// points with F >= floor (t = 0, F = 1 included).
struct LogLinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

LogLinearFit fit_log_linear(std::span<const double> fidelities, double floor = 0.1);

}  // namespace qca
