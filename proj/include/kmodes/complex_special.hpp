#pragma once

#include <complex>

#include "kmodes/jet.hpp"

namespace kmodes {

/// Parameters (a, b; c) of the Gauss hypergeometric function ₂F₁.
struct HypParams {
  cplx a;
  cplx b;
  cplx c;
};

struct EvalOptions {
  double target_rel_tol = 1e-13;
  int max_terms = 20000;

  /// Throws InvalidArgument unless 0 < target_rel_tol < 1 and max_terms ≥ 1.
  void validate() const;
};

/// Principal logarithm, arg ∈ (−π, π]. A negative real argument maps to
/// arg = +π regardless of the sign of its zero imaginary part.
cplx log_principal(cplx z);

/// exp(w · log_principal(z)). Throws InvalidArgument for z = 0 with
/// Re(w) ≤ 0; returns 0 for z = 0 with Re(w) > 0.
cplx cpow_principal(cplx z, cplx w);

/// Jet of g(t)^w under the principal branch.
Jet pow_principal(const Jet& g, cplx w);

/// Log Γ(z) with the imaginary part reduced to (−π, π]. Lanczos (g = 7,
/// nine terms) for Re z ≥ ½, reflection otherwise. Throws PoleError at
/// nonpositive integers.
cplx lngamma(cplx z);

/// 1/Γ(z), exactly zero at the poles of Γ.
cplx rgamma(cplx z);

/// True when z is (bitwise) a nonpositive integer.
bool is_nonpositive_integer(cplx z);

/// ₂F₁(a, b; c; z), the principal branch with the cut on [1, ∞). On the
/// cut itself the value is the limit from below (Im z → 0⁻).
///
/// Strategy: terminating polynomial; c = a / c = b shortcuts; Gauss sum at
/// z = 1; direct series for |z| ≤ 0.8; Pfaff z → z/(z−1) when that lands
/// in the disk; the 1 − z and 1/z transformations when their parameter
/// differences are safely away from integers; otherwise Taylor-series
/// continuation of the hypergeometric ODE from |z| = ½.
///
/// Throws DegenerateParameterError, DivergenceError, NonConvergenceError.
cplx hyp2f1(const HypParams& p, cplx z, const EvalOptions& opts = {});

/// d^order/dz^order ₂F₁ via (a)ₖ(b)ₖ/(c)ₖ · ₂F₁(a+k, b+k; c+k; z).
/// order ∈ {1, 2, 3}; order 0 returns hyp2f1 itself.
cplx hyp2f1_deriv(const HypParams& p, cplx z, int order,
                  const EvalOptions& opts = {});

/// Jet of t ↦ ₂F₁(a, b; c; x(t)), derivatives up to `order` (the rest
/// are left at zero).
Jet hyp2f1_jet(const HypParams& p, const Jet& x, int order,
               const EvalOptions& opts = {});

}  // namespace kmodes
