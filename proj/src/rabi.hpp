#ifndef FLOQBOUND_RABI_HPP
#define FLOQBOUND_RABI_HPP

#include <cmath>

#include "effective.hpp"

namespace floqbound {

// A certified bound was requested outside its proven validity region.
struct validity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RabiParams {
  double g = 1.0;       // drive strength
  double omega = 5.0;   // drive frequency
  double omega0 = 5.0;  // qubit splitting

  double delta() const { return omega0 - omega; }
  bool resonant() const { return std::abs(delta()) <= 1e-12 * omega; }
  void validate() const;
};

// Rotating-frame Hamiltonian (delta/2) Z + (g/2) X + counter-rotating part,
// as a HarmonicPoly over the drive of frequency Omega = 2 omega.
// Returns {series, Omega}.
std::pair<HarmonicPoly, double> rotating_frame_hamiltonian(const RabiParams& p);

// Resonant closed forms: order 0 -> (g/2) X; order 1 adds -(g^2/8w) Z;
// order 2 adds -(g^3/32w^2) X. Throws validity_error off resonance for
// order >= 1 (use derive_effective there).
Matrix closed_form_heff(const RabiParams& p, int order);

// The effective module grades in lambda = 1/Omega = 1/(2 omega); the
// literature formulas are omega-normalized, H_eff,L = sum omega^{-k} H^(k).
// The bridge is a factor 2^k per term. This is the one place it lives.
std::vector<Matrix> omega_normalized_terms(const EffectiveResult& r);

// Closed-form linear-in-t bounds on ||U(t) - exp(-i H_eff t)||, each enforced
// as a hard error outside its certified region.
double bound_rwa(const RabiParams& p, double t);             // resonant
double bound_bs_resonant(const RabiParams& p, double t);     // resonant
double bound_bs_nonresonant(const RabiParams& p, double t);  // -1 < d/w <= 2(5-2sqrt5)
double bound_third_resonant(const RabiParams& p, double t);  // g/w < 2 sqrt 2

// Same bounds as (c0, c1) curves.
BoundCurve bound_rwa_curve(const RabiParams& p);
BoundCurve bound_bs_resonant_curve(const RabiParams& p);
BoundCurve bound_bs_nonresonant_curve(const RabiParams& p);
BoundCurve bound_third_resonant_curve(const RabiParams& p);

}  // namespace floqbound

#endif
