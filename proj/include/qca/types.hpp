#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qca {

using Complex = std::complex<double>;

/// Dense N x N complex matrix, column-major. Map unitaries, samplers and
/// eigenvector bases all use this type.
using UnitaryMatrix = Eigen::MatrixXcd;

/// Length-N amplitude vector of an n-qubit pure state.
using StateVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Largest element of |U U^dagger - I|.
double unitarity_deviation(const UnitaryMatrix& u);

/// Returns log2(dim) when dim is a power of two >= 2, otherwise throws InvalidArgument.
int qubit_count_for_dimension(std::size_t dim);

}  // namespace qca
