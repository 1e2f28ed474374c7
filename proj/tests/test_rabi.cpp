#include <doctest.h>

#include "rabi.hpp"
#include "test_util.hpp"

using namespace floqbound;

TEST_CASE("rotating-frame Hamiltonian structure") {
  const RabiParams p{0.7, 4.0, 4.5};
  auto [h, omega_cap] = rotating_frame_hamiltonian(p);
  CHECK(omega_cap == doctest::Approx(8.0));
  CHECK(h.is_hermitian_function());
  CHECK(max_abs(h.coeff(0, 0) - (0.25 * pauli_z() + 0.35 * pauli_x())) < 1e-15);
  CHECK(max_abs(h.coeff(0, 1) - 0.35 * sigma_plus()) < 1e-15);
  CHECK(max_abs(h.coeff(0, -1) - 0.35 * sigma_minus()) < 1e-15);
}

TEST_CASE("closed-form effective Hamiltonians at g = 1, omega = 5") {
  const RabiParams p{1.0, 5.0, 5.0};
  CHECK(max_abs(closed_form_heff(p, 0) - 0.5 * pauli_x()) < 1e-15);
  CHECK(max_abs(closed_form_heff(p, 1) - (0.5 * pauli_x() - 0.025 * pauli_z())) < 1e-15);
  CHECK(max_abs(closed_form_heff(p, 2) -
                (0.5 * pauli_x() - 0.025 * pauli_z() - 0.00125 * pauli_x())) < 1e-15);

  // order 0 off resonance carries the detuning
  const RabiParams q{1.0, 5.0, 5.3};
  CHECK(max_abs(closed_form_heff(q, 0) - (0.5 * pauli_x() + 0.15 * pauli_z())) < 1e-14);
  CHECK_THROWS_AS(closed_form_heff(q, 1), validity_error);
  CHECK_THROWS_AS(closed_form_heff(p, 3), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_heff(RabiParams{-1.0, 5.0, 5.0}, 0), std::invalid_argument);
}

TEST_CASE("first-order bound: exact coefficients") {
  const RabiParams p{1.0, 5.0, 5.0};
  const BoundCurve c = bound_rwa_curve(p);
  CHECK(c.c0 == doctest::Approx(0.1).epsilon(1e-14));   // g / (2 omega)
  CHECK(c.c1 == doctest::Approx(0.05).epsilon(1e-14));  // g^2 / (4 omega)
  CHECK(bound_rwa(p, 0.0) == doctest::Approx(0.1));
  CHECK(bound_rwa(p, 10.0) == doctest::Approx(0.6));
  CHECK(c.order == 0);
  CHECK(c.certified);
}

TEST_CASE("second-order resonant bound: hand-computed reference values") {
  const RabiParams p{1.0, 5.0, 5.0};
  const BoundCurve c = bound_bs_resonant_curve(p);
  // c0 = 0.1 sqrt(1 + 3/400 + 1/160000), c1 = (3/800)(1 + 1/600)
  CHECK(c.c0 == doctest::Approx(0.10037461).epsilon(1e-7));
  CHECK(c.c1 == doctest::Approx(0.00375625).epsilon(1e-12));
  CHECK(c.order == 1);

  // offset slightly above RWA, slope much smaller: crossover at moderate t
  const BoundCurve rwa = bound_rwa_curve(p);
  CHECK(c.c0 > rwa.c0);
  CHECK(c.c1 < rwa.c1);
  CHECK(bound_bs_resonant(p, 100.0) < bound_rwa(p, 100.0));
}

TEST_CASE("nonresonant second-order bound") {
  const RabiParams res{1.0, 5.0, 5.0};
  const RabiParams det{1.0, 5.0, 6.0};  // delta / omega = 0.2

  const BoundCurve c = bound_bs_nonresonant_curve(det);
  CHECK(c.c0 > 0.0);
  CHECK(c.c1 > 0.0);

  // continuous as delta -> 0, and never tighter than the resonant bound there
  const BoundCurve at_res = bound_bs_nonresonant_curve(res);
  const RabiParams near{1.0, 5.0, 5.0 + 1e-9};
  const BoundCurve near_res = bound_bs_nonresonant_curve(near);
  CHECK(near_res.c0 == doctest::Approx(at_res.c0).epsilon(1e-6));
  CHECK(near_res.c1 == doctest::Approx(at_res.c1).epsilon(1e-6));
  CHECK(at_res.c0 >= bound_bs_resonant_curve(res).c0 - 1e-12);
  CHECK(at_res.c1 >= bound_bs_resonant_curve(res).c1 - 1e-12);

  // validity region: -1 < delta/omega <= 2 (5 - 2 sqrt 5)
  const double upper = 2.0 * (5.0 - 2.0 * std::sqrt(5.0));
  CHECK_NOTHROW(bound_bs_nonresonant(RabiParams{1.0, 5.0, 5.0 * (1.0 + 0.99 * upper)}, 1.0));
  CHECK_THROWS_AS(bound_bs_nonresonant(RabiParams{1.0, 5.0, 5.0 * (1.0 + 1.01 * upper)}, 1.0),
                  validity_error);
}

TEST_CASE("third-order resonant bound") {
  const RabiParams p{1.0, 5.0, 5.0};
  const BoundCurve c = bound_third_resonant_curve(p);
  CHECK(c.order == 2);

  // weak drive asymptotics: c0 -> g/(2 omega), c1 -> 3 g^4 / (128 omega^3)
  const RabiParams weak{0.01, 5.0, 5.0};
  const BoundCurve w = bound_third_resonant_curve(weak);
  CHECK(w.c0 == doctest::Approx(0.001).epsilon(1e-5));
  CHECK(w.c1 == doctest::Approx(3.0 * std::pow(0.01, 4) / (128.0 * 125.0)).epsilon(1e-3));

  // slope beats both lower-order slopes at these parameters
  CHECK(c.c1 < bound_bs_resonant_curve(p).c1);
  CHECK(c.c1 < bound_rwa_curve(p).c1);

  CHECK_THROWS_AS(bound_third_resonant(RabiParams{15.0, 5.0, 5.0}, 1.0), validity_error);
  CHECK_NOTHROW(bound_third_resonant(RabiParams{14.0, 5.0, 5.0}, 1.0));
  CHECK_THROWS_AS(bound_third_resonant(RabiParams{1.0, 5.0, 5.2}, 1.0), validity_error);
}

TEST_CASE("negative times are rejected") {
  const RabiParams p{1.0, 5.0, 5.0};
  CHECK_THROWS_AS(bound_rwa(p, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(bound_third_resonant(p, -0.1), std::invalid_argument);
}
