#include "effective.hpp"

#include <cmath>

namespace floqbound {

namespace {

constexpr double kHeffHermTol = 1e-10;
constexpr double kConditionTol = 1e-10;

Complex minus_i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

struct Chain {
  std::vector<HarmonicPoly> s;        // S^(0..depth)
  std::vector<HarmonicPoly> k;        // K(S^(0..depth))
  std::vector<HarmonicPoly> k_avg;    // Kbar(S^(0..depth))
};

// Builds S^(k), K(S^(k)), Kbar(S^(k)) for k = 0..depth with the given H_eff.
Chain build_chain(const HarmonicPoly& h, const HarmonicPoly& h_eff, int depth) {
  Chain c;
  c.s.push_back(HarmonicPoly::constant(identity(h.dim())));
  for (int k = 0; k <= depth; ++k) {
    c.k.push_back(k_apply(h, h_eff, c.s[k]));
    c.k_avg.push_back(c.k[k].average());
    if (k < depth) {
      c.s.push_back((c.k[k] - c.k_avg[k]).integrate_deviation());
    }
  }
  return c;
}

HarmonicPoly condition_sum_of(const std::vector<HarmonicPoly>& k_avg, int upto) {
  HarmonicPoly sum(k_avg[0].dim());
  for (int k = 0; k <= upto; ++k) {
    sum = sum + k_avg[k].scaled(minus_i_pow(k));
  }
  return sum;
}

}  // namespace

HarmonicPoly EffectiveResult::h_eff_poly() const {
  HarmonicPoly p(dim);
  for (int k = 0; k < static_cast<int>(h_eff_terms.size()); ++k) {
    p.add_term(k, 0, h_eff_terms[k]);
  }
  return p;
}

Matrix EffectiveResult::h_eff_total(double omega_cap) const {
  if (!(omega_cap > 0.0)) throw std::invalid_argument("h_eff_total: Omega must be positive");
  Matrix sum = Matrix::Zero(dim, dim);
  for (int k = 0; k < static_cast<int>(h_eff_terms.size()); ++k) {
    sum += std::pow(omega_cap, -k) * h_eff_terms[k];
  }
  return sum;
}

HarmonicPoly EffectiveResult::condition_sum() const {
  return condition_sum_of(k_averages, order);
}

std::vector<double> EffectiveResult::condition_residuals() const {
  const HarmonicPoly sum = condition_sum();
  std::vector<double> res(order + 1);
  for (int l = 0; l <= order; ++l) {
    res[l] = operator_norm(sum.coeff(l, 0));
  }
  return res;
}

HarmonicPoly k_apply(const HarmonicPoly& h1, const HarmonicPoly& h_eff,
                     const HarmonicPoly& a) {
  if (h1.dim() != a.dim() || h_eff.dim() != a.dim()) {
    throw std::invalid_argument("k_apply: dimension mismatch");
  }
  if (!h_eff.deviation().empty()) {
    throw std::invalid_argument("k_apply: h_eff must be constant in theta");
  }
  return h1.mul(a) - a.mul(h_eff);
}

EffectiveResult derive_effective(const HarmonicPoly& h, int order) {
  if (order < 0) throw std::invalid_argument("derive_effective: order must be >= 0");
  if (!h.is_hermitian_function()) {
    throw std::invalid_argument("derive_effective: input is not a Hermitian function of t");
  }

  EffectiveResult r;
  r.order = order;
  r.dim = h.dim();
  HarmonicPoly h_eff(h.dim());

  for (int l = 0; l <= order; ++l) {
    // H_eff^(l) is still zero in h_eff here; the lambda^l coefficient of the
    // condition sum then equals H_eff^(l) itself.
    const Chain chain = build_chain(h, h_eff, l);
    const Matrix cand = condition_sum_of(chain.k_avg, l).coeff(l, 0);
    if (hermiticity_defect(cand) > kHeffHermTol) {
      throw numeric_error("derive_effective: non-Hermitian H_eff term at order " +
                          std::to_string(l));
    }
    // Drop the sub-tolerance anti-Hermitian dust so downstream exponentials
    // see an exactly Hermitian matrix.
    h_eff.add_term(l, 0, Matrix(0.5 * (cand + cand.adjoint().eval())));
  }

  const Chain chain = build_chain(h, h_eff, order + 1);
  r.actions = chain.s;
  r.k_of_actions = chain.k;
  r.k_averages.assign(chain.k_avg.begin(), chain.k_avg.begin() + order + 1);
  for (int k = 0; k <= order; ++k) {
    r.h_eff_terms.push_back(h_eff.coeff(k, 0));
  }

  for (double res : r.condition_residuals()) {
    if (res > kConditionTol) {
      throw numeric_error("derive_effective: condition residual above tolerance");
    }
  }
  return r;
}

BoundIngredients bound_ingredients(const EffectiveResult& r, double omega_cap,
                                   int grid_points) {
  if (!(omega_cap > 0.0)) {
    throw std::invalid_argument("bound_ingredients: Omega must be positive");
  }
  BoundIngredients b;

  HarmonicPoly action_sum(r.dim);
  for (int k = 1; k <= r.order + 1; ++k) {
    action_sum = action_sum + r.actions[k].scaled(minus_i_pow(k));
  }
  std::tie(b.sup_actions_numeric, b.sup_actions_certified) =
      action_sum.sup_norm(omega_cap, grid_points);

  // Constant in theta, so evaluation at any t is exact.
  b.avg_residual = operator_norm(r.condition_sum().evaluate(omega_cap, 0.0));

  std::tie(b.sup_k_tail_numeric, b.sup_k_tail_certified) =
      r.k_of_actions[r.order + 1].sup_norm(omega_cap, grid_points);
  return b;
}

std::pair<BoundCurve, BoundCurve> generic_bound(const BoundIngredients& b, int order) {
  BoundCurve numeric{b.sup_actions_numeric, b.avg_residual + b.sup_k_tail_numeric,
                     order, false, "generic"};
  BoundCurve certified{b.sup_actions_certified, b.avg_residual + b.sup_k_tail_certified,
                       order, true, "generic"};
  return {numeric, certified};
}

}  // namespace floqbound
