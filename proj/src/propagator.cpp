#include "propagator.hpp"

#include <cmath>
#include <numbers>

namespace floqbound {

namespace {

constexpr double kUnitarityTol = 1e-10;

// CF4 (commutator-free fourth order): two Gauss-Legendre samples per step,
// two-exponential composition with weights (3 -+ 2 sqrt(3)) / 12.
const double kGlOffset = std::sqrt(3.0) / 6.0;
const double kCfA1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
const double kCfA2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

}  // namespace

double PropagationSettings::default_step(double omega_cap, double coupling_scale) {
  const double period = 2.0 * std::numbers::pi / omega_cap;
  const double scale = coupling_scale > 0.0 ? 1.0 / coupling_scale : period;
  return std::min(period, scale) / 64.0;
}

ExactPropagator::ExactPropagator(const HarmonicPoly& h, double omega_cap,
                                 const PropagationSettings& s)
    : h_(h), omega_cap_(omega_cap), method_(s.method) {
  if (!(omega_cap > 0.0)) {
    throw std::invalid_argument("ExactPropagator: Omega must be positive");
  }
  if (!h.is_hermitian_function()) {
    throw numeric_error("ExactPropagator: Hamiltonian is not Hermitian");
  }
  step_ = s.step > 0.0 ? s.step : PropagationSettings::default_step(omega_cap, 1.0);
  u_ = identity(h.dim());
}

void ExactPropagator::step_once(double dt) {
  switch (method_) {
    case StepMethod::ExpMidpoint2: {
      const Matrix hm = h_.evaluate(omega_cap_, t_ + 0.5 * dt);
      u_ = expm_skew_hermitian(hm, dt) * u_;
      break;
    }
    case StepMethod::MagnusCf4: {
      const Matrix h1 = h_.evaluate(omega_cap_, t_ + (0.5 - kGlOffset) * dt);
      const Matrix h2 = h_.evaluate(omega_cap_, t_ + (0.5 + kGlOffset) * dt);
      // The later-time-weighted exponent acts last (leftmost factor).
      const Matrix early = kCfA2 * h1 + kCfA1 * h2;
      const Matrix late = kCfA1 * h1 + kCfA2 * h2;
      u_ = expm_skew_hermitian(late, dt) * expm_skew_hermitian(early, dt) * u_;
      break;
    }
  }
  t_ += dt;
}

const Matrix& ExactPropagator::advance_to(double t) {
  if (t < t_ - 1e-12) {
    throw std::invalid_argument("ExactPropagator: cannot step backwards");
  }
  while (t - t_ > 1e-14 * std::max(1.0, std::abs(t))) {
    step_once(std::min(step_, t - t_));
  }
  const double defect = operator_norm(u_.adjoint() * u_ - identity(h_.dim()));
  if (defect > kUnitarityTol) {
    throw numeric_error("ExactPropagator: unitarity lost along trajectory");
  }
  return u_;
}

std::vector<TrajectoryPoint> propagate_exact(const HarmonicPoly& h, double omega_cap,
                                             double t_final, const PropagationSettings& s) {
  if (t_final < 0.0) throw std::invalid_argument("propagate_exact: t_final must be >= 0");
  ExactPropagator prop(h, omega_cap, s);
  const double step = s.step > 0.0 ? s.step : PropagationSettings::default_step(omega_cap, 1.0);
  std::vector<TrajectoryPoint> out;
  out.push_back({0.0, identity(h.dim())});
  long nsteps = static_cast<long>(std::ceil(t_final / step - 1e-12));
  for (long k = 1; k <= nsteps; ++k) {
    const double t = std::min(k * step, t_final);
    out.push_back({t, prop.advance_to(t)});
  }
  return out;
}

std::vector<std::pair<double, double>> distance_curve(const HarmonicPoly& h, double omega_cap,
                                                      const Matrix& h_eff,
                                                      const std::vector<double>& times,
                                                      const PropagationSettings& s) {
  for (size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw std::invalid_argument("distance_curve: times must be sorted and nonnegative");
    }
  }
  ExactPropagator prop(h, omega_cap, s);
  std::vector<std::pair<double, double>> out;
  out.reserve(times.size());
  for (double t : times) {
    const Matrix& u = prop.advance_to(t);
    out.emplace_back(t, operator_norm(u - expm_skew_hermitian(h_eff, t)));
  }
  return out;
}

DistanceCurve distance_curve_checked(const HarmonicPoly& h, double omega_cap,
                                     const Matrix& h_eff, const std::vector<double>& times,
                                     const PropagationSettings& s) {
  DistanceCurve out;
  out.times = times;
  auto base = distance_curve(h, omega_cap, h_eff, times, s);
  out.distances.reserve(base.size());
  for (auto& [t, d] : base) out.distances.push_back(d);

  if (s.richardson) {
    PropagationSettings half = s;
    half.step = (s.step > 0.0 ? s.step : PropagationSettings::default_step(omega_cap, 1.0)) / 2.0;
    half.richardson = false;
    ExactPropagator coarse(h, omega_cap, s);
    ExactPropagator fine(h, omega_cap, half);
    out.richardson.reserve(times.size());
    for (double t : times) {
      const Matrix uc = coarse.advance_to(t);
      const Matrix uf = fine.advance_to(t);
      const double est = operator_norm(uc - uf);
      out.richardson.push_back(est);
      out.max_richardson = std::max(out.max_richardson, est);
    }
  }
  return out;
}

}  // namespace floqbound
