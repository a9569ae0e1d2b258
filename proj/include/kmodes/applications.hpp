#pragma once

#include <functional>
#include <utility>

#include "kmodes/jet.hpp"
#include "kmodes/kmode_single.hpp"
#include "kmodes/oscillator.hpp"
#include "kmodes/verifier.hpp"

namespace kmodes {

/// Helmholtz waveguide obtained from the K-oscillator by t → x, k₀ = ω₀.
struct WaveguideSpec {
  double k0 = 1.0;
  double K = 0.0;
  Branch kappa = Branch::normal;

  void validate() const;
  SingleKSpec as_oscillator() const;
};

struct IndexProfiles {
  cplx n_b_sq;
  cplx n_f_sq;
};

/// Squared index profiles n_b², n_f² at x: the bosonic and fermionic
/// oscillator coefficients divided by k₀². Throws SingularityError on the
/// masked points.
IndexProfiles waveguide_profiles(const WaveguideSpec& spec, double x);

/// R(x) and R′(x).
using RiccatiFunction = std::function<std::pair<double, double>(double)>;

struct RiccatiResiduals {
  double bosonic;
  double fermionic;
};

/// |k₀²n²(x)/c² − (k² ∓ R′ − R²)|; the minus sign goes with the bosonic
/// profile.
RiccatiResiduals riccati_index_check(const WaveguideSpec& spec,
                                     const RiccatiFunction& R, double x,
                                     double c_light, double k);

struct TwoBeamSpec {
  double k0 = 1.0;
  double epsilon = 0.1;

  void validate() const;
};

/// (−k₀ − k₀²x²(1 − ε), k₀ − k₀²x²(1 + ε)). Warns when |k₀x| > 0.5.
std::pair<double, double> two_beam_profile(const TwoBeamSpec& spec, double x);

struct SchumannSpec {
  double Q = 1.0;
  double omega0 = 1.0;

  void validate() const;
};

/// ω₀²[(1 − 1/Q) + i/Q].
cplx schumann_shift(const SchumannSpec& spec);

/// ψ″ + (π/a)²[λ² + (¼ − s²)/sin²(πx/a)]ψ = 0 on 0 < x ≤ a/2.
struct ScarfSpec {
  double a = 1.0;
  cplx s = 0.0;
  cplx lambda = 0.0;

  void validate() const;
};

cplx scarf_coeff(const ScarfSpec& spec, double x);

/// f^(½+s) ₂F₁(¼+(s+λ)/2, ¼+(s−λ)/2; 1+s; f²) or
/// f^(½−s) ₂F₁(¼−(s−λ)/2, ¼−(s+λ)/2; 1−s; f²), f = sin(πx/a).
/// Throws DomainError outside (0, a/2] and DegenerateParameterError when
/// 1 ± s is a nonpositive integer.
Jet scarf_basis_jet(const ScarfSpec& spec, Basis which, double x,
                    int order = 2);
Jet scarf_solution_jet(const ScarfSpec& spec, const ModeConstants& consts,
                       double x, int order = 2);
cplx scarf_solution(const ScarfSpec& spec, const ModeConstants& consts,
                    double x);

/// Residual of the Scarf equation on a grid. The derivatives of ψ are
/// unbounded at x = a/2, so the grid must stay inside
/// [r, a/2 − r] with r = 1e−3·a; otherwise DomainError.
ResidualReport scarf_residual(const ScarfSpec& spec,
                              const ModeConstants& consts,
                              const TimeGrid& grid);

/// Exclusion radius r used by scarf_residual.
double scarf_exclusion_radius(const ScarfSpec& spec);

}  // namespace kmodes
