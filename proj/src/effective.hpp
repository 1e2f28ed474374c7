#ifndef FLOQBOUND_EFFECTIVE_HPP
#define FLOQBOUND_EFFECTIVE_HPP

#include <string>
#include <vector>

#include "harmonic_poly.hpp"

namespace floqbound {

// Output of one run of the iterated integration-by-parts construction for a
// periodic Hamiltonian H(t) at order L. All polynomials are graded in
// lambda = 1/Omega with Omega the angular frequency of the input series.
struct EffectiveResult {
  int order = 0;  // L
  int dim = 0;
  // H_eff^(0) ... H_eff^(L); H_eff,L = sum_k Omega^{-k} H_eff^(k).
  std::vector<Matrix> h_eff_terms;
  // Integral actions S^(0) ... S^(L+1); S^(0) = identity, S^(k>=1)(mT) = 0.
  std::vector<HarmonicPoly> actions;
  // K(S^(0)) ... K(S^(L+1)) with K(A) = H A - A H_eff,L.
  std::vector<HarmonicPoly> k_of_actions;
  // Time averages Kbar(S^(0)) ... Kbar(S^(L)) (constant in theta).
  std::vector<HarmonicPoly> k_averages;

  // H_eff,L as a constant-in-theta lambda-polynomial.
  HarmonicPoly h_eff_poly() const;
  // sum_k Omega^{-k} H_eff^(k)
  Matrix h_eff_total(double omega_cap) const;
  // sum_{k=0}^{L} (-i)^k Kbar(S^(k))
  HarmonicPoly condition_sum() const;
  // Norm of the n = 0 coefficient of condition_sum at lambda-degrees 0..L.
  // All must vanish (<= 1e-10) by construction.
  std::vector<double> condition_residuals() const;
};

// The three norms entering the master error expression, each where available
// in a tight numeric-sup variant and a rigorous certified variant.
struct BoundIngredients {
  double sup_actions_numeric = 0.0;   // sup_t ||sum_{k=1}^{L+1} (-i)^k S_t^(k)||
  double sup_actions_certified = 0.0;
  double avg_residual = 0.0;          // ||sum_{k=0}^{L} (-i)^k Kbar(S^(k))|| (exact)
  double sup_k_tail_numeric = 0.0;    // sup_s ||K_s(S^(L+1))||
  double sup_k_tail_certified = 0.0;
};

// Rigorous upper bound b(t) = c0 + c1 t on ||U(t) - exp(-i H_eff t)||.
struct BoundCurve {
  double c0 = 0.0;
  double c1 = 0.0;
  int order = 0;
  bool certified = false;
  std::string method = "generic";

  double at(double t) const { return c0 + c1 * t; }
};

// K(a) = h1 a - a h_eff with h_eff constant in theta.
HarmonicPoly k_apply(const HarmonicPoly& h1, const HarmonicPoly& h_eff,
                     const HarmonicPoly& a);

// Runs the iteration: builds S^(k), K(S^(k)) order by order and determines
// each H_eff^(l) as the lambda^l coefficient of sum_k (-i)^k Kbar(S^(k)) with
// H_eff^(l) temporarily zero (the unknown enters that coefficient only through
// Kbar(S^(0)) with coefficient -1, so the read-off is exact).
// Throws numeric_error if an H_eff^(l) comes out non-Hermitian beyond 1e-10.
EffectiveResult derive_effective(const HarmonicPoly& h, int order);

BoundIngredients bound_ingredients(const EffectiveResult& r, double omega_cap,
                                   int grid_points = 4096);

// Triangle-inequality bound from the master expansion:
// b(t) = sup_actions + t (avg_residual + sup_k_tail).
// Returns {numeric-ingredient curve, certified-ingredient curve}.
std::pair<BoundCurve, BoundCurve> generic_bound(const BoundIngredients& b, int order = 0);

}  // namespace floqbound

#endif
