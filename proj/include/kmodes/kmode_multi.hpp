#pragma once

#include "kmodes/jet.hpp"
#include "kmodes/kmode_single.hpp"
#include "kmodes/oscillator.hpp"
#include "kmodes/verifier.hpp"

namespace kmodes {

/// Four real couplings: the diagonal masses K₁, K₂ and energies K′₁, K′₂
/// of the matrix Dirac-like equation.
struct MultiKSpec {
  OscillatorSpec base;
  double K1 = 0.0;
  double K2 = 0.0;
  double K1p = 0.0;
  double K2p = 0.0;

  double delta_K() const { return K1 - K2; }
  void validate() const;
};

struct OmegaParams {
  cplx Omega1, Omega2, Omega3, Omega4;
};

enum class Component { fermionic = 1, bosonic = 2 };

/// Principal square roots
///   Ω₁ = √(4ω₀² + S² + 4(Sω₀ − P)),   Ω₂ = √(4ω₀² + S² − 4(Sω₀ + P)),
///   Ω₃ = √(4ω₀² − S² − 4(iSω₀ − P)),  Ω₄ = √(4ω₀² − S² + 4(iSω₀ + P)),
/// with S = K₁ + K₂ and P = K′₁K′₂.
OmegaParams omega_params(const MultiKSpec& spec);

/// c(t) of Z″ + c(t)Z = 0 for the gauge-transformed component.
cplx coeff_Z(const MultiKSpec& spec, Component component, double t);

/// Q_i(t) = ±u_p′ + i(K₁+K₂)u_p + (K₁K₂ − K′₁K′₂) − u_p² + ΔK²/4, with the
/// upper sign for the fermionic (i = 1) component.
cplx potential_Q(const MultiKSpec& spec, Component component, double t);

/// potential_Q − coeff_Z. Identically zero analytically; exposed so the
/// constant offset between the two forms can be measured.
cplx potential_minus_coeff(const MultiKSpec& spec, Component component,
                           double t);

/// e^(iΔK·t/2).
cplx gauge_factor(const MultiKSpec& spec, double t);
Jet gauge_factor_jet(const MultiKSpec& spec, double t);

/// One basis function of the general bosonic Z-mode (no α/β, no constant
/// multiplier). Normal branch, with T = tan(ω₀t) and x = ½(1 + iT):
///   Z₁ = (T−i)^(Ω₁/4ω₀) (T+i)^(Ω₂/4ω₀) ₂F₁(A, A+1; 1+Ω₁/2ω₀; x),  A = (Ω₁+Ω₂)/4ω₀
///   Z₂ = (T−i)^(−Ω₁/4ω₀) (T+i)^(Ω₂/4ω₀) ₂F₁(A′, A′+1; 1−Ω₁/2ω₀; x), A′ = (Ω₂−Ω₁)/4ω₀
/// Inverted branch, with C = coth(ω₀t) and y = −½(C − 1):
///   Y₁ = (C−1)^(Ω₃/4ω₀) (C+1)^(Ω₄/4ω₀) ₂F₁(B+1, B; 1+Ω₃/2ω₀; y),   B = (Ω₃+Ω₄)/4ω₀
///   Y₂ = (C−1)^(−Ω₃/4ω₀) (C+1)^(Ω₄/4ω₀) ₂F₁(B′, B′+1; 1−Ω₃/2ω₀; y), B′ = (Ω₄−Ω₃)/4ω₀
Jet z_basis_jet(const MultiKSpec& spec, Basis which, double t, int order = 2);

/// (−1)^(−Ω₁/2ω₀) on the normal branch; (−1)^(−Ω₃/2ω₀)·4^(Ω₃/2ω₀) on the
/// inverted branch.
cplx z_second_multiplier(const MultiKSpec& spec);

Jet z_mode_jet(const MultiKSpec& spec, const ModeConstants& consts, double t,
               int order = 2);
cplx z_mode(const MultiKSpec& spec, const ModeConstants& consts, double t);

/// z_value · e^(iΔK·t/2).
cplx w_from_z(const MultiKSpec& spec, cplx z_value, double t);
Jet w_from_z_jet(const MultiKSpec& spec, const Jet& z, double t);

/// w″ − iΔK·w′ + [±u_p′ + i(K₁+K₂)u_p + (K₁K₂ − K′₁K′₂) − u_p²]·w.
cplx second_order_residual(const MultiKSpec& spec, Component component,
                           const Jet& w, double t);

/// Residual of the first-derivative form above for w = Z·e^(iΔKt/2), with
/// Z the bosonic Z-mode. Relative values are normalized by
/// |w″| + |ΔK·w′| + |potential·w|.
ResidualReport gauge_residual(const MultiKSpec& spec,
                              const ModeConstants& consts,
                              const TimeGrid& grid);

/// The corresponding single-K spec when all four couplings are equal.
MultiKSpec equal_k(const OscillatorSpec& base, double K);

}  // namespace kmodes
