#ifndef FLOQBOUND_PROPAGATOR_HPP
#define FLOQBOUND_PROPAGATOR_HPP

#include <vector>

#include "harmonic_poly.hpp"

namespace floqbound {

enum class StepMethod { ExpMidpoint2, MagnusCf4 };

struct PropagationSettings {
  double step = 0.0;  // base time step; 0 picks the default rule
  StepMethod method = StepMethod::MagnusCf4;
  bool richardson = false;  // also run at step/2 and report the difference

  // Default rule: min(T, 1/||Hbar||-scale) / 64 with T = 2 pi / Omega. The
  // caller passes the relevant coupling scale g (fall back to 1).
  static double default_step(double omega_cap, double coupling_scale);
};

struct TrajectoryPoint {
  double t = 0.0;
  Matrix u;
};

// Exact-evolution propagator for dU/dt = -i H(t) U, U(0) = 1, on the step
// grid up to t_final. Unitary to 1e-10 along the trajectory.
std::vector<TrajectoryPoint> propagate_exact(const HarmonicPoly& h, double omega_cap,
                                             double t_final, const PropagationSettings& s);

// ||U(t) - exp(-i h_eff t)|| at each requested time. The exact propagator
// steps exactly to each t (shrinking the final substep); no interpolation.
std::vector<std::pair<double, double>> distance_curve(const HarmonicPoly& h, double omega_cap,
                                                      const Matrix& h_eff,
                                                      const std::vector<double>& times,
                                                      const PropagationSettings& s);

// Same distances plus a Richardson error estimate per point:
// est(t) = ||U_step(t) - U_{step/2}(t)||.
struct DistanceCurve {
  std::vector<double> times;
  std::vector<double> distances;
  std::vector<double> richardson;  // empty unless requested
  double max_richardson = 0.0;
};

DistanceCurve distance_curve_checked(const HarmonicPoly& h, double omega_cap,
                                     const Matrix& h_eff, const std::vector<double>& times,
                                     const PropagationSettings& s);

// Incremental stepper, used where several effective Hamiltonians are compared
// against one exact trajectory.
class ExactPropagator {
 public:
  ExactPropagator(const HarmonicPoly& h, double omega_cap, const PropagationSettings& s);

  // Advances to time t (>= current time) and returns U(t).
  const Matrix& advance_to(double t);
  double time() const { return t_; }

 private:
  void step_once(double dt);

  HarmonicPoly h_;
  double omega_cap_;
  double step_;
  StepMethod method_;
  double t_ = 0.0;
  Matrix u_;
};

}  // namespace floqbound

#endif
