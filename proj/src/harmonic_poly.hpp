#ifndef FLOQBOUND_HARMONIC_POLY_HPP
#define FLOQBOUND_HARMONIC_POLY_HPP

#include <map>
#include <utility>

#include "linalg.hpp"

namespace floqbound {

// Operator-valued function F(lambda, theta) = sum_{j,n} lambda^j e^{i n theta} A_{j,n}
// with lambda = 1/Omega a formal small parameter and theta = Omega t the drive
// phase. lambda and theta stay symbolic (integer indices); Omega is substituted
// only at evaluation, so the iterative construction stays exact in closed form.
//
// Immutable in spirit: every operation returns a new value.
class HarmonicPoly {
 public:
  // (lambda-degree j >= 0, harmonic n) -> coefficient matrix
  using Key = std::pair<int, int>;
  using TermMap = std::map<Key, Matrix>;

  static constexpr double kPruneTol = 1e-14;

  explicit HarmonicPoly(int dim);

  // lambda-degree-0 series with the given harmonics.
  static HarmonicPoly from_harmonics(int dim, const std::map<int, Matrix>& coeffs);
  static HarmonicPoly constant(const Matrix& a);

  int dim() const { return dim_; }
  bool empty() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  int max_lambda_degree() const;
  int max_abs_harmonic() const;

  // Coefficient at (j, n); zero matrix if absent.
  Matrix coeff(int j, int n) const;

  // Accumulates a into the (j, n) coefficient, pruning dust below kPruneTol.
  void add_term(int j, int n, const Matrix& a);

  HarmonicPoly operator+(const HarmonicPoly& rhs) const;
  HarmonicPoly operator-(const HarmonicPoly& rhs) const;
  HarmonicPoly scaled(Complex c) const;

  // Convolution in the harmonic index, addition in lambda-degree.
  HarmonicPoly mul(const HarmonicPoly& rhs) const;

  // Keeps only the n = 0 terms (time average over one period).
  HarmonicPoly average() const;

  // f - average(f); no n = 0 terms remain.
  HarmonicPoly deviation() const;

  // Termwise primitive of a zero-average series: each lambda^j e^{i n theta} A
  // (n != 0) maps to lambda^{j+1} (e^{i n theta} - 1) A / (i n); the 1/Omega
  // from the integral is absorbed into the lambda-degree increment. The result
  // vanishes at t = 0 and at every full period.
  // Throws std::invalid_argument if any n = 0 term is present.
  HarmonicPoly integrate_deviation() const;

  // Substitutes lambda = 1/Omega, theta = Omega t.
  Matrix evaluate(double omega_cap, double t) const;
  // Same with the phase given directly.
  Matrix evaluate_theta(double omega_cap, double theta) const;

  // (numeric_sup over a uniform theta grid, certified triangle-inequality
  // bound sum_{j,n} Omega^{-j} ||A_{j,n}|| >= true sup).
  std::pair<double, double> sup_norm(double omega_cap, int grid_points) const;

  // True iff F(t) is Hermitian for every t: A_{j,-n} = A_{j,n}^dagger.
  bool is_hermitian_function(double tol = kHermTol) const;

  // Termwise conjugation A -> V A V^dagger.
  HarmonicPoly conjugated(const Matrix& v) const;

 private:
  int dim_;
  TermMap terms_;
};

}  // namespace floqbound

#endif
