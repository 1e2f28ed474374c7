#include "harmonic_poly.hpp"

#include <cmath>
#include <numbers>

namespace floqbound {

HarmonicPoly::HarmonicPoly(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("HarmonicPoly: dim must be >= 1");
}

HarmonicPoly HarmonicPoly::from_harmonics(int dim, const std::map<int, Matrix>& coeffs) {
  if (coeffs.empty()) {
    throw std::invalid_argument("from_harmonics: empty coefficient map");
  }
  HarmonicPoly f(dim);
  for (const auto& [n, a] : coeffs) {
    if (a.rows() != dim || a.cols() != dim) {
      throw std::invalid_argument("from_harmonics: matrix dimension mismatch");
    }
    f.add_term(0, n, a);
  }
  return f;
}

HarmonicPoly HarmonicPoly::constant(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("HarmonicPoly::constant: matrix must be square");
  }
  HarmonicPoly f(static_cast<int>(a.rows()));
  f.add_term(0, 0, a);
  return f;
}

int HarmonicPoly::max_lambda_degree() const {
  int m = 0;
  for (const auto& [key, a] : terms_) m = std::max(m, key.first);
  return m;
}

int HarmonicPoly::max_abs_harmonic() const {
  int m = 0;
  for (const auto& [key, a] : terms_) m = std::max(m, std::abs(key.second));
  return m;
}

Matrix HarmonicPoly::coeff(int j, int n) const {
  auto it = terms_.find({j, n});
  if (it == terms_.end()) return Matrix::Zero(dim_, dim_);
  return it->second;
}

void HarmonicPoly::add_term(int j, int n, const Matrix& a) {
  if (j < 0) throw std::invalid_argument("add_term: lambda-degree must be >= 0");
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw std::invalid_argument("add_term: matrix dimension mismatch");
  }
  auto it = terms_.find({j, n});
  if (it == terms_.end()) {
    if (max_abs(a) > kPruneTol) terms_.emplace(Key{j, n}, a);
    return;
  }
  it->second += a;
  if (max_abs(it->second) <= kPruneTol) terms_.erase(it);
}

HarmonicPoly HarmonicPoly::operator+(const HarmonicPoly& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("HarmonicPoly+: dimension mismatch");
  HarmonicPoly out = *this;
  for (const auto& [key, a] : rhs.terms_) out.add_term(key.first, key.second, a);
  return out;
}

HarmonicPoly HarmonicPoly::operator-(const HarmonicPoly& rhs) const {
  return *this + rhs.scaled(-1.0);
}

HarmonicPoly HarmonicPoly::scaled(Complex c) const {
  HarmonicPoly out(dim_);
  for (const auto& [key, a] : terms_) out.add_term(key.first, key.second, c * a);
  return out;
}

HarmonicPoly HarmonicPoly::mul(const HarmonicPoly& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("HarmonicPoly::mul: dimension mismatch");
  HarmonicPoly out(dim_);
  for (const auto& [k1, a] : terms_) {
    for (const auto& [k2, b] : rhs.terms_) {
      out.add_term(k1.first + k2.first, k1.second + k2.second, a * b);
    }
  }
  return out;
}

HarmonicPoly HarmonicPoly::average() const {
  HarmonicPoly out(dim_);
  for (const auto& [key, a] : terms_) {
    if (key.second == 0) out.add_term(key.first, 0, a);
  }
  return out;
}

HarmonicPoly HarmonicPoly::deviation() const {
  HarmonicPoly out(dim_);
  for (const auto& [key, a] : terms_) {
    if (key.second != 0) out.add_term(key.first, key.second, a);
  }
  return out;
}

HarmonicPoly HarmonicPoly::integrate_deviation() const {
  HarmonicPoly out(dim_);
  for (const auto& [key, a] : terms_) {
    const auto [j, n] = key;
    if (n == 0) {
      throw std::invalid_argument("integrate_deviation: cannot integrate non-oscillatory term");
    }
    // int_0^t e^{i n Omega s} ds = (e^{i n theta} - 1) / (i n Omega)
    const Matrix scaled = a / Complex(0.0, static_cast<double>(n));
    out.add_term(j + 1, n, scaled);
    out.add_term(j + 1, 0, -scaled);
  }
  return out;
}

Matrix HarmonicPoly::evaluate(double omega_cap, double t) const {
  return evaluate_theta(omega_cap, omega_cap * t);
}

Matrix HarmonicPoly::evaluate_theta(double omega_cap, double theta) const {
  if (!(omega_cap > 0.0)) {
    throw std::invalid_argument("evaluate: Omega must be positive");
  }
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& [key, a] : terms_) {
    const auto [j, n] = key;
    const Complex phase = std::exp(Complex(0.0, n * theta));
    out += std::pow(omega_cap, -j) * phase * a;
  }
  return out;
}

std::pair<double, double> HarmonicPoly::sup_norm(double omega_cap, int grid_points) const {
  if (grid_points < 16) {
    throw std::invalid_argument("sup_norm: grid_points must be >= 16");
  }
  double numeric_sup = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / grid_points;
    numeric_sup = std::max(numeric_sup, operator_norm(evaluate_theta(omega_cap, theta)));
  }
  double certified = 0.0;
  for (const auto& [key, a] : terms_) {
    certified += std::pow(omega_cap, -key.first) * operator_norm(a);
  }
  return {numeric_sup, certified};
}

bool HarmonicPoly::is_hermitian_function(double tol) const {
  for (const auto& [key, a] : terms_) {
    const Matrix mirror = coeff(key.first, -key.second);
    if ((mirror - a.adjoint().eval()).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

HarmonicPoly HarmonicPoly::conjugated(const Matrix& v) const {
  if (v.rows() != dim_ || v.cols() != dim_) {
    throw std::invalid_argument("conjugated: dimension mismatch");
  }
  HarmonicPoly out(dim_);
  const Matrix vdag = v.adjoint();
  for (const auto& [key, a] : terms_) {
    out.add_term(key.first, key.second, v * a * vdag);
  }
  return out;
}

}  // namespace floqbound
