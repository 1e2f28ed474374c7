#ifndef FLOQBOUND_LINALG_HPP
#define FLOQBOUND_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace floqbound {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Entrywise tolerance below which a matrix counts as Hermitian. All
// constructions in this library are analytic; a larger residue signals a bug.
inline constexpr double kHermTol = 1e-12;

// Raised when a numerical consistency check fails (Hermiticity, unitarity).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix sigma_plus();
Matrix sigma_minus();
Matrix identity(int dim);

// max |(a - a^dagger)_{ij}|
double hermiticity_defect(const Matrix& a);
bool is_hermitian(const Matrix& a, double tol = kHermTol);

// Largest singular value. For Hermitian a this is max |eigenvalue|.
double operator_norm(const Matrix& a);

double max_abs(const Matrix& a);

// U = exp(-i h t) via eigendecomposition of the Hermitian matrix h.
// Throws numeric_error if h is not Hermitian within kHermTol.
Matrix expm_skew_hermitian(const Matrix& h, double t);

}  // namespace floqbound

#endif
