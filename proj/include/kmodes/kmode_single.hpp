#pragma once

#include "kmodes/complex_special.hpp"
#include "kmodes/jet.hpp"
#include "kmodes/oscillator.hpp"

namespace kmodes {

/// Oscillator extended by one real coupling K acting as both the
/// (imaginary) mass and the energy of the Dirac-like spinor equation.
struct SingleKSpec {
  OscillatorSpec base;
  double K = 0.0;

  void validate() const;
};

struct DerivedParams {
  cplx p, q, r, s;
};

struct ZVariables {
  cplx z1, z2, z3, z4;
};

/// Integration constants (α, β) of a two-term closed form.
struct ModeConstants {
  cplx alpha = 1.0;
  cplx beta = 0.0;

  /// Throws InvalidArgument when both constants vanish.
  void validate() const;
};

enum class Basis { first, second };

/// c(t) of w₁″ + c(t)w₁ = 0 for the fermionic spinor component.
cplx coeff_fermionic(const SingleKSpec& spec, double t);
/// c(t) of w₂″ + c(t)w₂ = 0 for the bosonic spinor component.
cplx coeff_bosonic(const SingleKSpec& spec, double t);

/// p, q (normal branch) and r, s (inverted branch), principal roots.
DerivedParams derived_params(const SingleKSpec& spec);

/// z₁ = i·tan(ω₀t) − 1, z₂ = i·tan(ω₀t) + 1, z₃ = coth(ω₀t) + 1,
/// z₄ = coth(ω₀t) − 1. At t = 0 the coth pair is NaN.
ZVariables z_variables(double omega0, double t);

/// One ₂F₁ basis function of the bosonic closed form, without α/β and
/// without the constant multiplier of the second term.
///
/// Normal branch:   B₁ = z₁^(p−½) z₂^(q−½) ₂F₁(p+q, p+q−1; 2p; −z₁/2)
///                  B₂ = z₁^(½−p) z₂^(q−½) ₂F₁(q−p, q−p+1; 2−2p; −z₁/2)
/// Inverted branch: C₁ = z₃^r z₄^s ₂F₁(r+s, r+s+1; 1+2r; z₃/2)
///                  C₂ = z₃^(−r) z₄^s ₂F₁(s−r+1, s−r; 1−2r; z₃/2)
///
/// `order` bounds the derivatives computed (0..3). The second basis
/// function does not exist at K = 0 (c = 0); that raises
/// DegenerateParameterError.
Jet bosonic_basis_jet(const SingleKSpec& spec, Basis which, double t,
                      int order = 2);

/// Constant in front of the second basis function: −e^(−2iπp)·4^(p−½) on
/// the normal branch, 4^r on the inverted one.
cplx second_basis_multiplier(const SingleKSpec& spec);

/// α·B₁ + β·m·B₂; the β term is skipped when β = 0.
Jet bosonic_mode_jet(const SingleKSpec& spec, const ModeConstants& consts,
                     double t, int order = 2);
cplx bosonic_mode(const SingleKSpec& spec, const ModeConstants& consts,
                  double t);

/// The small-K approximation of the bosonic mode. Parameters of the ₂F₁
/// factors are replaced by their K → 0 forms; the exponents of the
/// prefactors keep the exact p, q, r, s. The second ₂F₁ has c = a and is
/// evaluated as (1 − x)^(−b). Warns when |K| > 0.1·ω₀.
Jet bosonic_mode_small_k_jet(const SingleKSpec& spec,
                             const ModeConstants& consts, double t,
                             int order = 2);
cplx bosonic_mode_smallK(const SingleKSpec& spec, const ModeConstants& consts,
                         double t);

/// 1 / bosonic_mode. Throws ZeroDivisionError at a node.
cplx fermionic_reciprocal(const SingleKSpec& spec, const ModeConstants& consts,
                          double t);

/// w₁ = [−i·d/dt + i·u_p + K] w₂ / K from the second coupled equation.
/// Derivatives are valid up to `order` ≤ 2 (needs w₂ through order + 1).
Jet fermionic_from_coupling_jet(const SingleKSpec& spec,
                                const ModeConstants& consts, double t,
                                int order = 2);
cplx fermionic_from_coupling(const SingleKSpec& spec,
                             const ModeConstants& consts, double t);

/// Residuals of the coupled first-order system for (w₁, w₂):
///   first:  i·w₁′ + (i·u_p + K)·w₁ − K·w₂
///   second: −i·w₂′ + (i·u_p + K)·w₂ − K·w₁
struct CouplingResiduals {
  cplx first;
  cplx second;
};
CouplingResiduals coupling_residuals(const SingleKSpec& spec, const Jet& w1,
                                     const Jet& w2, double t);

}  // namespace kmodes
