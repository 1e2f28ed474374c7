#include <doctest.h>

#include "test_util.hpp"

using namespace floqbound;
using namespace floqbound::testutil;

namespace {

// Independent oracle: scaling-and-squaring Taylor series for exp(-i h t).
Matrix taylor_expm(const Matrix& h, double t, int terms = 64) {
  const int dim = static_cast<int>(h.rows());
  int squarings = 0;
  double scale = operator_norm(h) * std::abs(t);
  while (scale > 0.5) {
    scale /= 2.0;
    ++squarings;
  }
  const Matrix a = Complex(0.0, -t / std::pow(2.0, squarings)) * h;
  Matrix sum = Matrix::Identity(dim, dim);
  Matrix term = Matrix::Identity(dim, dim);
  for (int k = 1; k <= terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace

TEST_CASE("pauli algebra") {
  CHECK(max_abs(pauli_x() * pauli_x() - identity(2)) == doctest::Approx(0.0));
  const Matrix xy = pauli_x() * pauli_y();
  CHECK(max_abs(xy - Complex(0, 1) * pauli_z()) < 1e-15);

  std::mt19937 rng(1);
  const Matrix a = random_matrix(2, rng);
  CHECK(max_abs(identity(2) * a - a) == 0.0);
}

TEST_CASE("operator norm on closed forms") {
  CHECK(operator_norm(identity(2)) == doctest::Approx(1.0));

  // traceless 2x2 Hermitian aX + bY + cZ has spectrum +-sqrt(a^2+b^2+c^2)
  const double a = 0.7, b = -1.3, c = 0.2;
  const Matrix m = a * pauli_x() + b * pauli_y() + c * pauli_z();
  CHECK(operator_norm(m) == doctest::Approx(std::sqrt(a * a + b * b + c * c)).epsilon(1e-12));

  const Matrix bs = 0.5 * pauli_x() - 0.025 * pauli_z();
  CHECK(operator_norm(bs) == doctest::Approx(std::sqrt(0.25 + 0.000625)).epsilon(1e-12));
  CHECK(operator_norm(bs) == doctest::Approx(0.5006246).epsilon(1e-6));

  CHECK(operator_norm(Matrix::Zero(3, 3)) == 0.0);
}

TEST_CASE("operator norm properties") {
  std::mt19937 rng(2);
  for (int it = 0; it < 50; ++it) {
    const int dim = 2 + it % 3;
    const Matrix a = random_matrix(dim, rng);
    const Matrix b = random_matrix(dim, rng);
    CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) + 1e-12);
    CHECK(operator_norm(a + b) <= operator_norm(a) + operator_norm(b) + 1e-12);

    const Matrix u = random_unitary(dim, rng);
    const Matrix v = random_unitary(dim, rng);
    CHECK(operator_norm(u * a * v) == doctest::Approx(operator_norm(a)).epsilon(1e-11));
  }
}

TEST_CASE("expm basic cases") {
  CHECK(max_abs(expm_skew_hermitian(Matrix::Zero(2, 2), 3.7) - identity(2)) < 1e-15);

  const double g = 1.3, t = 2.1;
  const Matrix u = expm_skew_hermitian(0.5 * g * pauli_x(), t);
  const Matrix expected =
      std::cos(0.5 * g * t) * identity(2) - Complex(0, 1) * std::sin(0.5 * g * t) * pauli_x();
  CHECK(max_abs(u - expected) < 1e-14);
}

TEST_CASE("expm matches Taylor oracle") {
  const Matrix h_bs = 0.5 * pauli_x() - 0.025 * pauli_z();  // g = 1, omega = 5
  CHECK(max_abs(expm_skew_hermitian(h_bs, 1.0) - taylor_expm(h_bs, 1.0)) < 1e-12);

  std::mt19937 rng(3);
  for (int dim : {2, 3, 5}) {
    const Matrix h = random_hermitian(dim, rng);
    for (double t : {0.1, 1.0, -2.5}) {
      CHECK(max_abs(expm_skew_hermitian(h, t) - taylor_expm(h, t)) < 1e-12);
    }
  }
}

TEST_CASE("expm group property and unitarity") {
  std::mt19937 rng(4);
  for (int it = 0; it < 20; ++it) {
    const int dim = 2 + it % 3;
    const Matrix h = random_hermitian(dim, rng);
    const double t1 = 0.3 * it, t2 = 1.7 - 0.1 * it;
    const Matrix u = expm_skew_hermitian(h, t1) * expm_skew_hermitian(h, t2);
    CHECK(max_abs(u - expm_skew_hermitian(h, t1 + t2)) < 1e-11);
    const Matrix u1 = expm_skew_hermitian(h, t1);
    CHECK(operator_norm(u1.adjoint() * u1 - identity(dim)) < 1e-12);
  }
}

TEST_CASE("expm rejects non-Hermitian input") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(expm_skew_hermitian(bad, 1.0), numeric_error);
}
