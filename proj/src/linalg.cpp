#include "linalg.hpp"

namespace floqbound {

namespace {
const Complex kI{0.0, 1.0};
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

Matrix identity(int dim) {
  if (dim < 1) throw std::invalid_argument("identity: dim must be >= 1");
  return Matrix::Identity(dim, dim);
}

double hermiticity_defect(const Matrix& a) {
  return (a - a.adjoint().eval()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tol) {
  return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  // d is tiny here (<= 16), full SVD is exact enough and simple.
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double max_abs(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

Matrix expm_skew_hermitian(const Matrix& h, double t) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("expm_skew_hermitian: matrix must be square");
  }
  if (!is_hermitian(h)) {
    throw numeric_error("expm_skew_hermitian: input is not Hermitian");
  }
  if (h.rows() == 2) {
    // h = c I + a . sigma; exp(-i h t) = e^{-i c t} (cos(|a|t) I - i sin(|a|t) a.sigma/|a|)
    const double c = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double ax = h(0, 1).real();
    const double ay = -h(0, 1).imag();
    const double r = std::sqrt(ax * ax + ay * ay + az * az);
    const Complex phase = std::exp(Complex(0.0, -c * t));
    Matrix u(2, 2);
    if (r * std::abs(t) < 1e-300) {
      u = phase * Matrix::Identity(2, 2);
    } else {
      const double cs = std::cos(r * t);
      const double sn = std::sin(r * t) / r;
      u(0, 0) = phase * Complex(cs, -sn * az);
      u(1, 1) = phase * Complex(cs, sn * az);
      u(0, 1) = phase * (Complex(0.0, -sn) * Complex(ax, -ay));
      u(1, 0) = phase * (Complex(0.0, -sn) * Complex(ax, ay));
    }
    return u;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) {
    throw numeric_error("expm_skew_hermitian: eigendecomposition failed");
  }
  const Eigen::VectorXd& ev = es.eigenvalues();
  Eigen::VectorXcd phases(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -ev(k) * t));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace floqbound
