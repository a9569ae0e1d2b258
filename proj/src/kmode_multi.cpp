#include "kmodes/kmode_multi.hpp"

#include <algorithm>
#include <cmath>

#include "kmodes/complex_special.hpp"
#include "kmodes/errors.hpp"

namespace kmodes {

namespace {

constexpr cplx kI(0.0, 1.0);

double couplings_sum(const MultiKSpec& s) { return s.K1 + s.K2; }
double couplings_det(const MultiKSpec& s) { return s.K1 * s.K2 - s.K1p * s.K2p; }

void require_nondegenerate(const HypParams& hp, const char* which) {
  if (is_nonpositive_integer(hp.c)) {
    throw DegenerateParameterError(
        std::string(which) +
        ": c is a nonpositive integer; this basis function does not exist "
        "for the given couplings");
  }
}

}  // namespace

void MultiKSpec::validate() const {
  base.validate();
  if (!std::isfinite(K1) || !std::isfinite(K2) || !std::isfinite(K1p) ||
      !std::isfinite(K2p)) {
    throw InvalidArgument("K1, K2, K1p, K2p must be finite");
  }
}

ResidualReport gauge_residual(const MultiKSpec& spec,
                              const ModeConstants& consts,
                              const TimeGrid& grid) {
  ResidualReport report;
  report.argmax_t = grid.t0();
  for (int i = 0; i < grid.size(); ++i) {
    const double t = grid.at(i);
    const Jet w = w_from_z_jet(spec, z_mode_jet(spec, consts, t), t);
    const cplx r = second_order_residual(spec, Component::bosonic, w, t);
    const cplx drift = -kI * spec.delta_K() * w[1];
    const double denom =
        std::abs(w[2]) + std::abs(drift) + std::abs(r - w[2] - drift);
    const double abs_r = std::abs(r);
    const double rel = denom > 0.0 ? abs_r / denom : (abs_r == 0.0 ? 0.0 : HUGE_VAL);
    report.max_abs = std::max(report.max_abs, abs_r);
    if (rel > report.max_rel) {
      report.max_rel = rel;
      report.argmax_t = t;
    }
  }
  return report;
}

MultiKSpec equal_k(const OscillatorSpec& base, double K) {
  return {base, K, K, K, K};
}

OmegaParams omega_params(const MultiKSpec& spec) {
  spec.validate();
  const double w = spec.base.omega0;
  const double S = couplings_sum(spec);
  const double P = spec.K1p * spec.K2p;
  const double base_plus = 4.0 * w * w + S * S;
  const double base_minus = 4.0 * w * w - S * S;
  return {std::sqrt(cplx(base_plus + 4.0 * (S * w - P))),
          std::sqrt(cplx(base_plus - 4.0 * (S * w + P))),
          std::sqrt(cplx(base_minus + 4.0 * P, -4.0 * S * w)),
          std::sqrt(cplx(base_minus + 4.0 * P, 4.0 * S * w))};
}

cplx coeff_Z(const MultiKSpec& spec, Component component, double t) {
  spec.validate();
  SingularityMask(spec.base).check(t, "coeff_Z");
  const double w = spec.base.omega0;
  const double w2 = w * w;
  const double dk = spec.K2 - spec.K1;
  const double shift = dk * dk / (4.0 * w2) + couplings_det(spec) / w2;
  const double s_ratio = couplings_sum(spec) / w;
  if (spec.base.kappa == Branch::normal) {
    const double T = std::tan(w * t);
    if (component == Component::fermionic) {
      return -w2 * (cplx(1.0 + 2.0 * T * T - shift) + kI * s_ratio * T);
    }
    return w2 * (cplx(1.0 + shift) - kI * s_ratio * T);
  }
  const double C = 1.0 / std::tanh(w * t);
  if (component == Component::fermionic) {
    return w2 * (cplx(1.0 - 2.0 * C * C + shift) + kI * s_ratio * C);
  }
  return -w2 * (cplx(1.0 - shift) - kI * s_ratio * C);
}

cplx potential_Q(const MultiKSpec& spec, Component component, double t) {
  spec.validate();
  const Jet u = riccati_particular_jet(spec.base, t);
  const double sign = component == Component::fermionic ? 1.0 : -1.0;
  const cplx minus_i_dk = -kI * spec.delta_K();
  return sign * u[1] + kI * couplings_sum(spec) * u.value() +
         couplings_det(spec) - u.value() * u.value() -
         0.25 * minus_i_dk * minus_i_dk;
}

cplx potential_minus_coeff(const MultiKSpec& spec, Component component,
                           double t) {
  return potential_Q(spec, component, t) - coeff_Z(spec, component, t);
}

cplx gauge_factor(const MultiKSpec& spec, double t) {
  return std::exp(kI * (0.5 * spec.delta_K() * t));
}

Jet gauge_factor_jet(const MultiKSpec& spec, double t) {
  const cplx g = gauge_factor(spec, t);
  const cplx k = kI * (0.5 * spec.delta_K());
  return Jet(g, k * g, k * k * g, k * k * k * g);
}

Jet z_basis_jet(const MultiKSpec& spec, Basis which, double t, int order) {
  spec.validate();
  SingularityMask(spec.base).check(t, "z_mode");
  const OmegaParams om = omega_params(spec);
  const double w = spec.base.omega0;
  const Jet trig = branch_trig_jet(spec.base, t);
  if (spec.base.kappa == Branch::normal) {
    const Jet t_minus = trig - Jet::constant(kI);
    const Jet t_plus = trig + Jet::constant(kI);
    const Jet x = (Jet::constant(1.0) + trig * kI) * 0.5;
    const Jet right = pow_principal(t_plus, om.Omega2 / (4.0 * w));
    if (which == Basis::first) {
      const cplx a = (om.Omega1 + om.Omega2) / (4.0 * w);
      const HypParams hp{a, a + 1.0, 1.0 + om.Omega1 / (2.0 * w)};
      require_nondegenerate(hp, "z_mode (first basis)");
      return pow_principal(t_minus, om.Omega1 / (4.0 * w)) * right *
             hyp2f1_jet(hp, x, order);
    }
    const cplx a = (om.Omega2 - om.Omega1) / (4.0 * w);
    const HypParams hp{a, a + 1.0, 1.0 - om.Omega1 / (2.0 * w)};
    require_nondegenerate(hp, "z_mode (second basis)");
    return pow_principal(t_minus, -om.Omega1 / (4.0 * w)) * right *
           hyp2f1_jet(hp, x, order);
  }
  const Jet c_minus = trig - Jet::constant(1.0);
  const Jet c_plus = trig + Jet::constant(1.0);
  const Jet y = c_minus * (-0.5);
  const Jet right = pow_principal(c_plus, om.Omega4 / (4.0 * w));
  if (which == Basis::first) {
    const cplx b = (om.Omega3 + om.Omega4) / (4.0 * w);
    const HypParams hp{b + 1.0, b, 1.0 + om.Omega3 / (2.0 * w)};
    require_nondegenerate(hp, "z_mode (first basis)");
    return pow_principal(c_minus, om.Omega3 / (4.0 * w)) * right *
           hyp2f1_jet(hp, y, order);
  }
  const cplx b = (om.Omega4 - om.Omega3) / (4.0 * w);
  const HypParams hp{b, b + 1.0, 1.0 - om.Omega3 / (2.0 * w)};
  require_nondegenerate(hp, "z_mode (second basis)");
  return pow_principal(c_minus, -om.Omega3 / (4.0 * w)) * right *
         hyp2f1_jet(hp, y, order);
}

cplx z_second_multiplier(const MultiKSpec& spec) {
  const OmegaParams om = omega_params(spec);
  const double w = spec.base.omega0;
  if (spec.base.kappa == Branch::normal) {
    return cpow_principal(-1.0, -om.Omega1 / (2.0 * w));
  }
  return cpow_principal(-1.0, -om.Omega3 / (2.0 * w)) *
         cpow_principal(4.0, om.Omega3 / (2.0 * w));
}

Jet z_mode_jet(const MultiKSpec& spec, const ModeConstants& consts, double t,
               int order) {
  consts.validate();
  Jet result;
  if (consts.alpha != 0.0) {
    result += consts.alpha * z_basis_jet(spec, Basis::first, t, order);
  }
  if (consts.beta != 0.0) {
    result += consts.beta * z_second_multiplier(spec) *
              z_basis_jet(spec, Basis::second, t, order);
  }
  return result;
}

cplx z_mode(const MultiKSpec& spec, const ModeConstants& consts, double t) {
  return z_mode_jet(spec, consts, t, 0).value();
}

cplx w_from_z(const MultiKSpec& spec, cplx z_value, double t) {
  return z_value * gauge_factor(spec, t);
}

Jet w_from_z_jet(const MultiKSpec& spec, const Jet& z, double t) {
  return z * gauge_factor_jet(spec, t);
}

cplx second_order_residual(const MultiKSpec& spec, Component component,
                           const Jet& w, double t) {
  spec.validate();
  const Jet u = riccati_particular_jet(spec.base, t);
  const double sign = component == Component::fermionic ? 1.0 : -1.0;
  const cplx potential = sign * u[1] + kI * couplings_sum(spec) * u.value() +
                         couplings_det(spec) - u.value() * u.value();
  return w[2] - kI * spec.delta_K() * w[1] + potential * w.value();
}

}  // namespace kmodes
