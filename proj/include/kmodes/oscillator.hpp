#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kmodes/jet.hpp"

namespace kmodes {

/// Sign κ of the restoring term in w″ + κω₀²w = 0.
enum class Branch : int { normal = 1, inverted = -1 };

/// Throws InvalidArgument unless k ∈ {+1, −1}.
Branch branch_from_int(int k);
inline int to_int(Branch b) { return static_cast<int>(b); }

struct OscillatorSpec {
  Branch kappa = Branch::normal;
  double omega0 = 1.0;
  double amplitude = 1.0;
  double phase = 0.0;

  /// Throws InvalidArgument unless omega0 is finite and positive.
  void validate() const;
};

/// Times at which u_p and the fermionic zero mode blow up: (π/2 + nπ)/ω₀
/// for the normal branch, t = 0 for the inverted one.
class SingularityMask {
 public:
  static constexpr double kDefaultRadiusScale = 1e-3;

  /// Default radius 1e−3/ω₀.
  explicit SingularityMask(const OscillatorSpec& spec);
  SingularityMask(const OscillatorSpec& spec, double radius);

  double radius() const { return radius_; }
  /// Singular time closest to t.
  double nearest(double t) const;
  bool excludes(double t) const;
  /// Excluded points within [t0, t1].
  std::vector<double> points_in(double t0, double t1) const;
  /// Throws SingularityError when t is excluded.
  void check(double t, const char* what) const;

 private:
  Branch kappa_;
  double omega0_;
  double radius_;
};

double riccati_particular(const OscillatorSpec& spec, double t);
/// Jet of u_p (the rational/trig closed form, derivatives analytic).
Jet riccati_particular_jet(const OscillatorSpec& spec, double t);

double classical_mode(const OscillatorSpec& spec, double t);
double fermionic_zero_mode(const OscillatorSpec& spec, double t);
double fermionic_freq_sq(const OscillatorSpec& spec, double t);

/// |u_p′ + u_p² + κω₀²| with the analytic derivative of u_p.
double factorization_residual(const OscillatorSpec& spec, double t);

/// (w_f(t), w_b(t)), the two components of the zero-K spinor.
std::pair<cplx, cplx> spinor_pair(const OscillatorSpec& spec, double t);

/// First-order residuals |w₁′ + u_p w₁| and |w₂′ − u_p w₂| of the
/// decoupled spinor equations, using analytic derivatives. The w₂ identity
/// needs phase = 0.
std::pair<double, double> spinor_residuals(const OscillatorSpec& spec, double t);

/// tan(ω₀t) or coth(ω₀t) as a jet, depending on the branch.
Jet branch_trig_jet(const OscillatorSpec& spec, double t);

}  // namespace kmodes
