#include "kmodes/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kmodes/errors.hpp"

namespace kmodes {

namespace {
constexpr double kPi = std::numbers::pi;
}

Branch branch_from_int(int k) {
  if (k == 1) return Branch::normal;
  if (k == -1) return Branch::inverted;
  throw InvalidArgument("kappa must be +1 or -1, got " + std::to_string(k));
}

void OscillatorSpec::validate() const {
  if (!(std::isfinite(omega0) && omega0 > 0.0)) {
    throw InvalidArgument("omega0 must be a positive finite number");
  }
  if (!std::isfinite(amplitude) || !std::isfinite(phase)) {
    throw InvalidArgument("amplitude and phase must be finite");
  }
}

SingularityMask::SingularityMask(const OscillatorSpec& spec)
    : SingularityMask(spec, kDefaultRadiusScale / spec.omega0) {}

SingularityMask::SingularityMask(const OscillatorSpec& spec, double radius)
    : kappa_(spec.kappa), omega0_(spec.omega0), radius_(radius) {
  spec.validate();
  if (!(radius >= 0.0)) {
    throw InvalidArgument("SingularityMask: radius must be nonnegative");
  }
}

double SingularityMask::nearest(double t) const {
  if (kappa_ == Branch::inverted) return 0.0;
  const double n = std::round((omega0_ * t - kPi / 2.0) / kPi);
  return (kPi / 2.0 + n * kPi) / omega0_;
}

bool SingularityMask::excludes(double t) const {
  return std::abs(t - nearest(t)) < radius_;
}

std::vector<double> SingularityMask::points_in(double t0, double t1) const {
  std::vector<double> out;
  if (kappa_ == Branch::inverted) {
    if (t0 <= 0.0 && 0.0 <= t1) out.push_back(0.0);
    return out;
  }
  const double first = std::ceil((omega0_ * t0 - kPi / 2.0) / kPi);
  for (double n = first;; n += 1.0) {
    const double s = (kPi / 2.0 + n * kPi) / omega0_;
    if (s > t1) break;
    out.push_back(s);
  }
  return out;
}

void SingularityMask::check(double t, const char* what) const {
  if (excludes(t)) {
    throw SingularityError(std::string(what) + ": t = " + std::to_string(t) +
                               " lies within the exclusion radius of the "
                               "singular point " +
                               std::to_string(nearest(t)),
                           t);
  }
}

Jet branch_trig_jet(const OscillatorSpec& spec, double t) {
  const double w = spec.omega0;
  if (spec.kappa == Branch::normal) {
    const double T = std::tan(w * t);
    const double T1 = w * (1.0 + T * T);
    const double T2 = 2.0 * w * T * T1;
    const double T3 = 2.0 * w * (T1 * T1 + T * T2);
    return Jet(T, T1, T2, T3);
  }
  const double C = 1.0 / std::tanh(w * t);
  const double C1 = w * (1.0 - C * C);
  const double C2 = -2.0 * w * C * C1;
  const double C3 = -2.0 * w * (C1 * C1 + C * C2);
  return Jet(C, C1, C2, C3);
}

Jet riccati_particular_jet(const OscillatorSpec& spec, double t) {
  spec.validate();
  SingularityMask(spec).check(t, "riccati_particular");
  const Jet trig = branch_trig_jet(spec, t);
  const double sign = spec.kappa == Branch::normal ? -1.0 : 1.0;
  return trig * (sign * spec.omega0);
}

double riccati_particular(const OscillatorSpec& spec, double t) {
  return riccati_particular_jet(spec, t).value().real();
}

double classical_mode(const OscillatorSpec& spec, double t) {
  spec.validate();
  const double arg = spec.omega0 * t + spec.phase;
  return spec.kappa == Branch::normal ? spec.amplitude * std::cos(arg)
                                      : spec.amplitude * std::sinh(arg);
}

double fermionic_zero_mode(const OscillatorSpec& spec, double t) {
  spec.validate();
  SingularityMask(spec).check(t, "fermionic_zero_mode");
  const double w = spec.omega0;
  return spec.kappa == Branch::normal ? -w / std::cos(w * t)
                                      : w / std::sinh(w * t);
}

double fermionic_freq_sq(const OscillatorSpec& spec, double t) {
  spec.validate();
  SingularityMask(spec).check(t, "fermionic_freq_sq");
  const double w2 = spec.omega0 * spec.omega0;
  if (spec.kappa == Branch::normal) {
    const double T = std::tan(spec.omega0 * t);
    return w2 * (-1.0 - 2.0 * T * T);
  }
  const double C = 1.0 / std::tanh(spec.omega0 * t);
  return w2 * (1.0 - 2.0 * C * C);
}

double factorization_residual(const OscillatorSpec& spec, double t) {
  const Jet u = riccati_particular_jet(spec, t);
  const double up = u.value().real();
  const double up1 = u[1].real();
  const double w2 = spec.omega0 * spec.omega0;
  return std::abs(up1 + up * up + to_int(spec.kappa) * w2);
}

std::pair<cplx, cplx> spinor_pair(const OscillatorSpec& spec, double t) {
  return {fermionic_zero_mode(spec, t), classical_mode(spec, t)};
}

std::pair<double, double> spinor_residuals(const OscillatorSpec& spec,
                                           double t) {
  const double u = riccati_particular(spec, t);
  const double w = spec.omega0;
  const double wf = fermionic_zero_mode(spec, t);
  const double wb = classical_mode(spec, t);
  double wf1 = 0.0;
  double wb1 = 0.0;
  const double arg = w * t + spec.phase;
  if (spec.kappa == Branch::normal) {
    wf1 = -w * w * std::sin(w * t) / (std::cos(w * t) * std::cos(w * t));
    wb1 = -spec.amplitude * w * std::sin(arg);
  } else {
    wf1 = -w * w * std::cosh(w * t) / (std::sinh(w * t) * std::sinh(w * t));
    wb1 = spec.amplitude * w * std::cosh(arg);
  }
  return {std::abs(wf1 + u * wf), std::abs(wb1 - u * wb)};
}

}  // namespace kmodes
