#include "rabi.hpp"

#include <cmath>

namespace floqbound {

namespace {

void require_resonant(const RabiParams& p, const char* what) {
  if (!p.resonant()) {
    throw validity_error(std::string(what) + ": closed form defined at resonance only");
  }
}

void require_nonneg_time(double t) {
  if (t < 0.0) throw std::invalid_argument("bound: t must be >= 0");
}

}  // namespace

void RabiParams::validate() const {
  if (!(g > 0.0)) throw std::invalid_argument("RabiParams: g must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("RabiParams: omega must be positive");
  if (!(omega0 > 0.0)) throw std::invalid_argument("RabiParams: omega0 must be positive");
}

std::pair<HarmonicPoly, double> rotating_frame_hamiltonian(const RabiParams& p) {
  p.validate();
  const double half_g = 0.5 * p.g;
  std::map<int, Matrix> coeffs;
  coeffs[0] = 0.5 * p.delta() * pauli_z() + half_g * pauli_x();
  coeffs[1] = half_g * sigma_plus();
  coeffs[-1] = half_g * sigma_minus();
  return {HarmonicPoly::from_harmonics(2, coeffs), 2.0 * p.omega};
}

Matrix closed_form_heff(const RabiParams& p, int order) {
  p.validate();
  if (order < 0 || order > 2) {
    throw std::invalid_argument("closed_form_heff: order must be 0, 1 or 2");
  }
  if (order >= 1) require_resonant(p, "closed_form_heff");
  // Order 0 is the plain time average and stays valid off resonance.
  Matrix h = 0.5 * p.g * pauli_x() + 0.5 * p.delta() * pauli_z();
  if (order >= 1) h -= p.g * p.g / (8.0 * p.omega) * pauli_z();
  if (order >= 2) h -= std::pow(p.g, 3) / (32.0 * p.omega * p.omega) * pauli_x();
  return h;
}

std::vector<Matrix> omega_normalized_terms(const EffectiveResult& r) {
  std::vector<Matrix> out;
  out.reserve(r.h_eff_terms.size());
  // sum_k (2 omega)^{-k} H^(k) = sum_k omega^{-k} (2^{-k} H^(k))
  double factor = 1.0;
  for (const Matrix& term : r.h_eff_terms) {
    out.push_back(factor * term);
    factor *= 0.5;
  }
  return out;
}

BoundCurve bound_rwa_curve(const RabiParams& p) {
  p.validate();
  require_resonant(p, "bound_rwa");
  const double pre = p.g / (2.0 * p.omega);
  return {pre, pre * 0.5 * p.g, 0, true, "closed-form"};
}

BoundCurve bound_bs_resonant_curve(const RabiParams& p) {
  p.validate();
  require_resonant(p, "bound_bs_resonant");
  const double g = p.g, w = p.omega;
  const double c0 = g / (2.0 * w) *
                    std::sqrt(1.0 + 3.0 * g * g / (16.0 * w * w) +
                              std::pow(g, 4) / (256.0 * std::pow(w, 4)));
  const double c1 = 3.0 * std::pow(g, 3) / (32.0 * w * w) *
                    (1.0 + g * g / (24.0 * w * w));
  return {c0, c1, 1, true, "closed-form"};
}

BoundCurve bound_bs_nonresonant_curve(const RabiParams& p) {
  p.validate();
  const double g = p.g, w = p.omega, d = p.delta();
  const double ratio = d / w;
  const double upper = 2.0 * (5.0 - 2.0 * std::sqrt(5.0));
  if (!(ratio > -1.0) || ratio > upper) {
    throw validity_error("bound_bs_nonresonant: outside certified region");
  }
  const double c0 =
      g / (2.0 * w) *
      std::sqrt(std::pow(1.0 - d / (2.0 * w), 2) +
                3.0 * g * g / (16.0 * w * w) *
                    (1.0 - 2.0 * d / (3.0 * w) + d * d / (12.0 * w * w)) +
                std::pow(g, 4) / (256.0 * std::pow(w, 4)));
  const double s1 = std::pow(g, 3) / (32.0 * w * w) *
                    std::sqrt(1.0 + 4.0 * d * d / (g * g));
  const double s2 =
      std::pow(g, 3) / (16.0 * w * w) *
      std::sqrt(9.0 + 4.0 * d / w + 4.0 * d * d / (w * w) +
                std::pow(d, 3) / (2.0 * std::pow(w, 3)) +
                std::pow(d, 4) / (16.0 * std::pow(w, 4)) +
                g * g / (8.0 * w * w) *
                    (5.0 + d / w + d * d / (4.0 * w * w)) +
                std::pow(g, 4) / (256.0 * std::pow(w, 4)) +
                4.0 * d * d / (g * g) *
                    (7.0 + 4.0 * d * d / (g * g) + d / w +
                     3.0 * d * d / (4.0 * w * w)));
  return {c0, s1 + s2, 1, true, "closed-form"};
}

BoundCurve bound_third_resonant_curve(const RabiParams& p) {
  p.validate();
  require_resonant(p, "bound_third_resonant");
  const double g = p.g, w = p.omega;
  if (!(g / w < 2.0 * std::sqrt(2.0))) {
    throw validity_error("bound_third_resonant: outside certified region");
  }
  const double r2 = std::pow(g / (4.0 * w), 2);
  const double r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4, r10 = r8 * r2, r12 = r6 * r6;
  const double c0 =
      g / (2.0 * w) *
      std::sqrt(1.0 + 5.0 * r2 + 4.0 * r4 - r6 + 13.0 * r8 - 6.0 * r10 + r12);
  const double c1 =
      std::pow(g, 4) / (2.0 * std::pow(4.0 * w, 3)) *
      (std::sqrt(1.0 + r2 + 2.0 * r4 + r6) +
       2.0 * std::sqrt(1.0 - 3.0 * r2 + 14.0 * r4 - 19.0 * r6 + 18.0 * r8 -
                       7.0 * r10 + r12));
  return {c0, c1, 2, true, "closed-form"};
}

double bound_rwa(const RabiParams& p, double t) {
  require_nonneg_time(t);
  return bound_rwa_curve(p).at(t);
}

double bound_bs_resonant(const RabiParams& p, double t) {
  require_nonneg_time(t);
  return bound_bs_resonant_curve(p).at(t);
}

double bound_bs_nonresonant(const RabiParams& p, double t) {
  require_nonneg_time(t);
  return bound_bs_nonresonant_curve(p).at(t);
}

double bound_third_resonant(const RabiParams& p, double t) {
  require_nonneg_time(t);
  return bound_third_resonant_curve(p).at(t);
}

}  // namespace floqbound
