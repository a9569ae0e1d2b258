#include "kmodes/kmode_single.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kmodes/diagnostics.hpp"
#include "kmodes/errors.hpp"

namespace kmodes {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);
constexpr double kSmallKLimit = 0.1;

void check_mask(const SingleKSpec& spec, double t, const char* what) {
  SingularityMask(spec.base).check(t, what);
}

struct BasisTerms {
  Jet pre_first;   // prefactor of the first ₂F₁
  Jet pre_second;  // prefactor of the second ₂F₁
  Jet x;           // ₂F₁ argument
};

// Prefactors and argument shared by the exact and small-K closed forms.
BasisTerms basis_terms(const SingleKSpec& spec, const DerivedParams& dp,
                       double t) {
  const Jet trig = branch_trig_jet(spec.base, t);
  if (spec.base.kappa == Branch::normal) {
    const Jet z1 = trig * kI - Jet::constant(1.0);
    const Jet z2 = trig * kI + Jet::constant(1.0);
    const Jet z2_pow = pow_principal(z2, dp.q - 0.5);
    return {pow_principal(z1, dp.p - 0.5) * z2_pow,
            pow_principal(z1, -(dp.p - 0.5)) * z2_pow, z1 * cplx(-0.5)};
  }
  const Jet z3 = trig + Jet::constant(1.0);
  const Jet z4 = trig - Jet::constant(1.0);
  const Jet z4_pow = pow_principal(z4, dp.s);
  return {pow_principal(z3, dp.r) * z4_pow, pow_principal(z3, -dp.r) * z4_pow,
          z3 * cplx(0.5)};
}

HypParams first_params(const SingleKSpec& spec, const DerivedParams& dp) {
  if (spec.base.kappa == Branch::normal) {
    return {dp.p + dp.q, dp.p + dp.q - 1.0, 2.0 * dp.p};
  }
  return {dp.r + dp.s, dp.r + dp.s + 1.0, 1.0 + 2.0 * dp.r};
}

HypParams second_params(const SingleKSpec& spec, const DerivedParams& dp) {
  if (spec.base.kappa == Branch::normal) {
    return {dp.q - dp.p, dp.q - dp.p + 1.0, 2.0 - 2.0 * dp.p};
  }
  return {dp.s - dp.r + 1.0, dp.s - dp.r, 1.0 - 2.0 * dp.r};
}

void require_nondegenerate(const HypParams& hp, const char* which) {
  if (is_nonpositive_integer(hp.c)) {
    std::ostringstream msg;
    msg << which << ": c = " << hp.c.real()
        << " is a nonpositive integer; this basis function does not exist "
           "for the given K (at K = 0 only the first basis function is "
           "defined)";
    throw DegenerateParameterError(msg.str());
  }
}

Jet derivative_shift(const Jet& f) { return Jet(f[1], f[2], f[3], 0.0); }

}  // namespace

void SingleKSpec::validate() const {
  base.validate();
  if (!std::isfinite(K)) throw InvalidArgument("K must be finite");
}

void ModeConstants::validate() const {
  if (alpha == 0.0 && beta == 0.0) {
    throw InvalidArgument("mode constants alpha and beta are both zero");
  }
}

cplx coeff_fermionic(const SingleKSpec& spec, double t) {
  spec.validate();
  check_mask(spec, t, "coeff_fermionic");
  const double w = spec.base.omega0;
  const double ratio = 2.0 * spec.K / w;
  if (spec.base.kappa == Branch::normal) {
    const double T = std::tan(w * t);
    return -w * w * (cplx(1.0 + 2.0 * T * T) + kI * ratio * T);
  }
  const double C = 1.0 / std::tanh(w * t);
  return w * w * (cplx(1.0 - 2.0 * C * C) + kI * ratio * C);
}

cplx coeff_bosonic(const SingleKSpec& spec, double t) {
  spec.validate();
  check_mask(spec, t, "coeff_bosonic");
  const double w = spec.base.omega0;
  const double ratio = 2.0 * spec.K / w;
  if (spec.base.kappa == Branch::normal) {
    const double T = std::tan(w * t);
    return w * w * (1.0 - kI * ratio * T);
  }
  const double C = 1.0 / std::tanh(w * t);
  return -w * w * (1.0 - kI * ratio * C);
}

DerivedParams derived_params(const SingleKSpec& spec) {
  spec.validate();
  const double ratio = 2.0 * spec.K / spec.base.omega0;
  return {0.5 * (1.0 + std::sqrt(cplx(1.0 - ratio))),
          0.5 * (1.0 + std::sqrt(cplx(1.0 + ratio))),
          0.5 * std::sqrt(cplx(1.0, ratio)), 0.5 * std::sqrt(cplx(1.0, -ratio))};
}

ZVariables z_variables(double omega0, double t) {
  const double T = std::tan(omega0 * t);
  ZVariables z{cplx(-1.0, T), cplx(1.0, T), 0.0, 0.0};
  if (t == 0.0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    z.z3 = z.z4 = cplx(nan, nan);
  } else {
    const double C = 1.0 / std::tanh(omega0 * t);
    z.z3 = C + 1.0;
    z.z4 = C - 1.0;
  }
  return z;
}

cplx second_basis_multiplier(const SingleKSpec& spec) {
  const DerivedParams dp = derived_params(spec);
  if (spec.base.kappa == Branch::normal) {
    return -std::exp(-2.0 * kI * dp.p * kPi) * cpow_principal(4.0, dp.p - 0.5);
  }
  return cpow_principal(4.0, dp.r);
}

Jet bosonic_basis_jet(const SingleKSpec& spec, Basis which, double t,
                      int order) {
  spec.validate();
  check_mask(spec, t, "bosonic_mode");
  const DerivedParams dp = derived_params(spec);
  const BasisTerms terms = basis_terms(spec, dp, t);
  if (which == Basis::first) {
    const HypParams hp = first_params(spec, dp);
    require_nondegenerate(hp, "bosonic_mode (first basis)");
    return terms.pre_first * hyp2f1_jet(hp, terms.x, order);
  }
  const HypParams hp = second_params(spec, dp);
  require_nondegenerate(hp, "bosonic_mode (second basis)");
  return terms.pre_second * hyp2f1_jet(hp, terms.x, order);
}

Jet bosonic_mode_jet(const SingleKSpec& spec, const ModeConstants& consts,
                     double t, int order) {
  consts.validate();
  Jet result;
  if (consts.alpha != 0.0) {
    result += consts.alpha * bosonic_basis_jet(spec, Basis::first, t, order);
  }
  if (consts.beta != 0.0) {
    result += consts.beta * second_basis_multiplier(spec) *
              bosonic_basis_jet(spec, Basis::second, t, order);
  }
  return result;
}

cplx bosonic_mode(const SingleKSpec& spec, const ModeConstants& consts,
                  double t) {
  return bosonic_mode_jet(spec, consts, t, 0).value();
}

Jet bosonic_mode_small_k_jet(const SingleKSpec& spec,
                             const ModeConstants& consts, double t,
                             int order) {
  spec.validate();
  consts.validate();
  check_mask(spec, t, "bosonic_mode_smallK");
  const double w = spec.base.omega0;
  const double k = spec.K / w;
  if (std::abs(k) > kSmallKLimit) {
    std::ostringstream msg;
    msg << "bosonic_mode_smallK: |K|/omega0 = " << std::abs(k)
        << " exceeds 0.1; the small-K form is outside its regime";
    warn(msg.str());
  }
  const DerivedParams dp = derived_params(spec);
  const BasisTerms terms = basis_terms(spec, dp, t);
  HypParams first{};
  cplx second_exponent;
  if (spec.base.kappa == Branch::normal) {
    first = {2.0, 1.0, 2.0 - k};
    second_exponent = -(1.0 + k);
  } else {
    first = {1.0, 2.0, cplx(2.0, k)};
    second_exponent = -cplx(1.0, -k);
  }
  Jet result;
  if (consts.alpha != 0.0) {
    result += consts.alpha * terms.pre_first * hyp2f1_jet(first, terms.x, order);
  }
  if (consts.beta != 0.0) {
    const Jet one_minus_x = Jet::constant(1.0) - terms.x;
    result += consts.beta * second_basis_multiplier(spec) * terms.pre_second *
              pow_principal(one_minus_x, second_exponent);
  }
  return result;
}

cplx bosonic_mode_smallK(const SingleKSpec& spec, const ModeConstants& consts,
                         double t) {
  return bosonic_mode_small_k_jet(spec, consts, t, 0).value();
}

cplx fermionic_reciprocal(const SingleKSpec& spec, const ModeConstants& consts,
                          double t) {
  const cplx w2 = bosonic_mode(spec, consts, t);
  if (w2 == 0.0) {
    throw ZeroDivisionError("fermionic_reciprocal: bosonic mode vanishes at t = " +
                            std::to_string(t));
  }
  return 1.0 / w2;
}

Jet fermionic_from_coupling_jet(const SingleKSpec& spec,
                                const ModeConstants& consts, double t,
                                int order) {
  spec.validate();
  if (spec.K == 0.0) {
    throw InvalidArgument(
        "fermionic_from_coupling: K = 0 decouples the spinor components");
  }
  if (order > 2) {
    throw InvalidArgument("fermionic_from_coupling: order must be at most 2");
  }
  const Jet w2 = bosonic_mode_jet(spec, consts, t, order + 1);
  const Jet u = riccati_particular_jet(spec.base, t);
  const Jet mass = u * kI + Jet::constant(spec.K);
  Jet w1 = derivative_shift(w2) * (-kI) + mass * w2;
  w1 *= 1.0 / spec.K;
  w1.d[3] = 0.0;
  return w1;
}

cplx fermionic_from_coupling(const SingleKSpec& spec,
                             const ModeConstants& consts, double t) {
  return fermionic_from_coupling_jet(spec, consts, t, 0).value();
}

CouplingResiduals coupling_residuals(const SingleKSpec& spec, const Jet& w1,
                                     const Jet& w2, double t) {
  const cplx u = riccati_particular(spec.base, t);
  const cplx mass = kI * u + spec.K;
  return {kI * w1[1] + mass * w1.value() - spec.K * w2.value(),
          -kI * w2[1] + mass * w2.value() - spec.K * w1.value()};
}

}  // namespace kmodes
