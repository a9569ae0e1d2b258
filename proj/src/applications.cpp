#include "kmodes/applications.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kmodes/complex_special.hpp"
#include "kmodes/diagnostics.hpp"
#include "kmodes/errors.hpp"

namespace kmodes {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidArgument(std::string(name) + " must be finite and positive");
  }
}

void require_finite(cplx v, const char* name) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw InvalidArgument(std::string(name) + " must be finite");
  }
}

}  // namespace

void WaveguideSpec::validate() const {
  require_positive(k0, "k0");
  if (!std::isfinite(K)) throw InvalidArgument("K must be finite");
}

SingleKSpec WaveguideSpec::as_oscillator() const {
  validate();
  OscillatorSpec base;
  base.kappa = kappa;
  base.omega0 = k0;
  return {base, K};
}

IndexProfiles waveguide_profiles(const WaveguideSpec& spec, double x) {
  const SingleKSpec osc = spec.as_oscillator();
  const double k2 = spec.k0 * spec.k0;
  return {coeff_bosonic(osc, x) / k2, coeff_fermionic(osc, x) / k2};
}

RiccatiResiduals riccati_index_check(const WaveguideSpec& spec,
                                     const RiccatiFunction& R, double x,
                                     double c_light, double k) {
  require_positive(c_light, "c_light");
  const IndexProfiles n = waveguide_profiles(spec, x);
  const auto [r, dr] = R(x);
  const double scale = spec.k0 * spec.k0 / (c_light * c_light);
  return {std::abs(scale * n.n_b_sq - (k * k - dr - r * r)),
          std::abs(scale * n.n_f_sq - (k * k + dr - r * r))};
}

void TwoBeamSpec::validate() const {
  require_positive(k0, "k0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1)");
  }
}

std::pair<double, double> two_beam_profile(const TwoBeamSpec& spec, double x) {
  spec.validate();
  const double kx = spec.k0 * x;
  if (std::abs(kx) > 0.5) {
    std::ostringstream msg;
    msg << "two_beam_profile: |k0*x| = " << std::abs(kx)
        << " > 0.5, outside the paraxial regime";
    warn(msg.str());
  }
  const double quad = kx * kx;
  return {-spec.k0 - quad * (1.0 - spec.epsilon),
          spec.k0 - quad * (1.0 + spec.epsilon)};
}

void SchumannSpec::validate() const {
  require_positive(Q, "Q");
  require_positive(omega0, "omega0");
}

cplx schumann_shift(const SchumannSpec& spec) {
  spec.validate();
  const double w2 = spec.omega0 * spec.omega0;
  const double inv = 1.0 / spec.Q;
  return {w2 * (1.0 - inv), w2 * inv};
}

void ScarfSpec::validate() const {
  require_positive(a, "a");
  require_finite(s, "s");
  require_finite(lambda, "lambda");
}

double scarf_exclusion_radius(const ScarfSpec& spec) { return 1e-3 * spec.a; }

cplx scarf_coeff(const ScarfSpec& spec, double x) {
  spec.validate();
  const double k = kPi / spec.a;
  const double f = std::sin(k * x);
  if (f == 0.0) {
    throw SingularityError("scarf_coeff: sin(pi x / a) vanishes", x);
  }
  return k * k * (spec.lambda * spec.lambda + (0.25 - spec.s * spec.s) / (f * f));
}

Jet scarf_basis_jet(const ScarfSpec& spec, Basis which, double x, int order) {
  spec.validate();
  if (!(x > 0.0 && x <= 0.5 * spec.a)) {
    std::ostringstream msg;
    msg << "scarf_solution: x = " << x << " outside (0, a/2] with a = "
        << spec.a;
    throw DomainError(msg.str());
  }
  const double k = kPi / spec.a;
  const double sn = std::sin(k * x), cs = std::cos(k * x);
  const Jet f(sn, k * cs, -k * k * sn, -k * k * k * cs);
  const Jet f2 = f * f;
  const cplx& s = spec.s;
  const cplx& l = spec.lambda;
  HypParams hp{};
  cplx exponent;
  if (which == Basis::first) {
    hp = {0.25 + 0.5 * (s + l), 0.25 + 0.5 * (s - l), 1.0 + s};
    exponent = 0.5 + s;
  } else {
    hp = {0.25 - 0.5 * (s - l), 0.25 - 0.5 * (s + l), 1.0 - s};
    exponent = 0.5 - s;
  }
  if (is_nonpositive_integer(hp.c)) {
    throw DegenerateParameterError(
        "scarf_solution: 1 +/- s is a nonpositive integer");
  }
  if (f2.value().real() <= 0.5) {
    return pow_principal(f, exponent) * hyp2f1_jet(hp, f2, order);
  }
  // near x = a/2 the z-derivatives blow up like (1-z)^(-3/2) and cancel;
  // expand in u = cos^2 instead. c - a - b = 1/2 for both terms.
  const Jet g(cs, -k * sn, -k * k * cs, k * k * k * sn);
  const Jet u = g * g;
  const double rpi = std::sqrt(kPi);
  const cplx gc = 1.0 / rgamma(hp.c);
  const cplx A = gc * rpi * rgamma(hp.c - hp.a) * rgamma(hp.c - hp.b);
  const cplx B = gc * (-2.0 * rpi) * rgamma(hp.a) * rgamma(hp.b);
  Jet F;
  if (A != 0.0) F += A * hyp2f1_jet({hp.a, hp.b, 0.5}, u, order);
  if (B != 0.0) {
    F += B * g * hyp2f1_jet({hp.c - hp.a, hp.c - hp.b, 1.5}, u, order);
  }
  return pow_principal(f, exponent) * F;
}

Jet scarf_solution_jet(const ScarfSpec& spec, const ModeConstants& consts,
                       double x, int order) {
  consts.validate();
  Jet result;
  if (consts.alpha != 0.0) {
    result += consts.alpha * scarf_basis_jet(spec, Basis::first, x, order);
  }
  if (consts.beta != 0.0) {
    result += consts.beta * scarf_basis_jet(spec, Basis::second, x, order);
  }
  return result;
}

cplx scarf_solution(const ScarfSpec& spec, const ModeConstants& consts,
                    double x) {
  return scarf_solution_jet(spec, consts, x, 0).value();
}

ResidualReport scarf_residual(const ScarfSpec& spec,
                              const ModeConstants& consts,
                              const TimeGrid& grid) {
  spec.validate();
  const double r = scarf_exclusion_radius(spec);
  // tiny slack so that a grid built from exactly r and a/2 - r is accepted
  const double slack = 1e-12 * spec.a;
  if (grid.t0() < r - slack || grid.t1() > 0.5 * spec.a - r + slack) {
    std::ostringstream msg;
    msg << "scarf_residual: grid must lie within [" << r << ", "
        << 0.5 * spec.a - r << "]";
    throw DomainError(msg.str());
  }
  return ode_residual([&](double x) { return scarf_coeff(spec, x); },
                      [&](double x) { return scarf_solution_jet(spec, consts, x); },
                      grid);
}

}  // namespace kmodes
