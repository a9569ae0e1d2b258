#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "kmodes/applications.hpp"
#include "kmodes/diagnostics.hpp"
#include "kmodes/errors.hpp"

using namespace kmodes;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST(Waveguide, ProfileValues) {
  const IndexProfiles p = waveguide_profiles({1.0, 1.0, Branch::normal}, 0.0);
  EXPECT_EQ(p.n_b_sq, cplx(1.0));
  EXPECT_EQ(p.n_f_sq, cplx(-1.0));
  const double C = 1.0 / std::tanh(1.0);
  const IndexProfiles q = waveguide_profiles({1.0, 0.5, Branch::inverted}, 1.0);
  EXPECT_LT(std::abs(q.n_f_sq - cplx(1.0 - 2.0 * C * C, C)), 1e-14);
  EXPECT_THROW(waveguide_profiles({1.0, 0.5, Branch::normal}, kPi / 2), SingularityError);
  EXPECT_THROW(waveguide_profiles({0.0, 0.5, Branch::normal}, 0.1), InvalidArgument);
}

TEST(Waveguide, ProfilesAreRelabeledCoefficients) {
  for (Branch b : {Branch::normal, Branch::inverted}) {
    for (double k0 : {1.0, 2.5}) {
      const WaveguideSpec w{k0, 0.7, b};
      const SingleKSpec s = w.as_oscillator();
      for (double x = 0.05; x < 0.6; x += 0.05) {
        const IndexProfiles p = waveguide_profiles(w, x);
        EXPECT_LT(std::abs(k0 * k0 * p.n_b_sq - coeff_bosonic(s, x)),
                  1e-14 * std::abs(coeff_bosonic(s, x)));
        EXPECT_LT(std::abs(k0 * k0 * p.n_f_sq - coeff_fermionic(s, x)),
                  1e-14 * std::abs(coeff_fermionic(s, x)));
      }
    }
  }
}

TEST(Waveguide, RiccatiIndexRelation) {
  const WaveguideSpec w{1.3, 0.0, Branch::normal};
  const RiccatiFunction R = [k0 = w.k0](double x) {
    const double T = std::tan(k0 * x);
    return std::pair{-k0 * T, -k0 * k0 * (1.0 + T * T)};
  };
  for (double x : {0.0, 0.3, 0.9}) {
    const RiccatiResiduals r = riccati_index_check(w, R, x, 1.0, 0.0);
    EXPECT_LT(r.bosonic, 1e-10) << x;
    EXPECT_LT(r.fermionic, 1e-10) << x;
  }
  const RiccatiFunction wrong = [](double x) { return std::pair{x, 1.0}; };
  const RiccatiResiduals bad = riccati_index_check(w, wrong, 0.3, 1.0, 0.0);
  EXPECT_GT(bad.bosonic, 0.1);
  EXPECT_GT(bad.fermionic, 0.1);
  EXPECT_THROW(riccati_index_check(w, R, 0.3, 0.0, 0.0), InvalidArgument);
}

TEST(TwoBeam, Values) {
  const auto [m, p] = two_beam_profile({1.0, 0.1}, 0.0);
  EXPECT_EQ(m, -1.0);
  EXPECT_EQ(p, 1.0);
  const auto [m2, p2] = two_beam_profile({1.0, 0.1}, 0.2);
  EXPECT_NEAR(m2, -1.036, 1e-15);
  EXPECT_NEAR(p2, 1.0 - 0.044, 1e-15);
  EXPECT_THROW(two_beam_profile({1.0, 0.0}, 0.1), InvalidArgument);
  EXPECT_THROW(two_beam_profile({1.0, 1.0}, 0.1), InvalidArgument);
}

TEST(TwoBeam, EqualCurvatureWithoutAsymmetry) {
  // ε → 0 from above: the curvatures approach each other
  const auto [m, p] = two_beam_profile({2.0, 1e-12}, 0.1);
  EXPECT_NEAR(m + 2.0, p - 2.0, 1e-12);
}

TEST(TwoBeam, WarnsOutsideParaxialRegime) {
  std::vector<std::string> seen;
  const auto prev = set_warning_handler([&](std::string_view m) { seen.emplace_back(m); });
  two_beam_profile({1.0, 0.1}, 0.4);
  two_beam_profile({1.0, 0.1}, 0.6);
  set_warning_handler(prev);
  EXPECT_EQ(seen.size(), 1u);
}

TEST(Schumann, Values) {
  EXPECT_EQ(schumann_shift({10.0, 1.0}), cplx(0.9, 0.1));
  const cplx big = schumann_shift({1e12, 2.0});
  EXPECT_LT(std::abs(big - 4.0) / 4.0, 1e-11);
  // Re + Im = ω₀², exact when the quotient is representable
  for (double Q : {0.5, 2.0, 4.0, 8.0}) {
    const cplx w = schumann_shift({Q, 1.0});
    EXPECT_EQ(w.real() + w.imag(), 1.0) << Q;
  }
  for (double Q : {3.0, 77.0}) {
    const cplx w = schumann_shift({Q, 1.7});
    EXPECT_DOUBLE_EQ(w.real() + w.imag(), 1.7 * 1.7) << Q;
  }
  EXPECT_THROW(schumann_shift({0.0, 1.0}), InvalidArgument);
}

TEST(Scarf, ReferenceValues) {
  const ScarfSpec s{kPi, 0.3, 1.2};
  struct Ref {
    double x;
    double first, second;
  };
  // mpmath
  const Ref refs[] = {{0.7, 0.65000301517791067, 0.7004519742248218},
                      {1.5, 0.63623642771644567, 0.070701726576086063}};
  for (const auto& r : refs) {
    EXPECT_LT(rel_err(scarf_basis_jet(s, Basis::first, r.x, 0).value(), r.first), 1e-12);
    EXPECT_LT(rel_err(scarf_basis_jet(s, Basis::second, r.x, 0).value(), r.second), 1e-12);
  }
  // x = a/2 goes through the Gauss sum
  EXPECT_LT(std::abs(scarf_solution(s, {1.0, 0.0}, kPi / 2) - 0.6), 1e-12);
  EXPECT_LT(std::abs(scarf_solution(s, {0.0, 1.0}, kPi / 2)), 1e-12);
}

TEST(Scarf, DerivativesNearHalfPeriod) {
  // mpmath, x = a/2 - 1e-3 a where the z-expansion loses digits
  const ScarfSpec s{kPi, 0.3, 1.2};
  const Jet j = scarf_basis_jet(s, Basis::second, 1.5676547341413067, 2);
  EXPECT_LT(rel_err(j[0], 0.0031415843852535132), 1e-13);
  EXPECT_LT(rel_err(j[1], -0.99999210432297305), 1e-13);
  EXPECT_LT(rel_err(j[2], -0.0050265399774294753), 1e-11);
}

TEST(Scarf, ResidualBothTerms) {
  const ScarfSpec s{kPi, 0.3, 1.2};
  const double r = scarf_exclusion_radius(s);
  const TimeGrid g(r, kPi / 2 - r, 400);
  EXPECT_LT(scarf_residual(s, {1.0, 0.0}, g).max_rel, 1e-8);
  EXPECT_LT(scarf_residual(s, {0.0, 1.0}, g).max_rel, 1e-8);
  EXPECT_LT(scarf_residual(s, {cplx(1.0, 2.0), 0.5}, g).max_rel, 1e-8);
  const ResidualReport single = ode_residual(
      [&](double x) { return scarf_coeff(s, x); },
      [&](double x) { return scarf_basis_jet(s, Basis::first, x); }, TimeGrid(0.69, 0.71, 3));
  EXPECT_LT(single.max_rel, 1e-8);
}

TEST(Scarf, HalfIntegerReducesToFreeEquation) {
  const ScarfSpec s{kPi, 0.5, 1.0};
  for (double x : {0.2, 0.9, 1.4}) {
    EXPECT_LT(std::abs(scarf_coeff(s, x) - 1.0), 1e-15);
  }
  const double r = scarf_exclusion_radius(s);
  EXPECT_LT(scarf_residual(s, {1.0, 0.0}, TimeGrid(r, kPi / 2 - r, 300)).max_rel, 1e-8);
  // the first term at s = ½, λ = 1 is sin x exactly
  for (double x : {0.2, 0.9, 1.4}) {
    EXPECT_LT(std::abs(scarf_solution(s, {1.0, 0.0}, x) - std::sin(x)), 1e-13) << x;
  }
}

TEST(Scarf, WronskianConstant) {
  const ScarfSpec s{2.0, cplx(0.3, 0.1), 1.2};
  const double r = scarf_exclusion_radius(s);
  const WronskianScan w = wronskian_scan(
      [&](double x) { return scarf_basis_jet(s, Basis::first, x); },
      [&](double x) { return scarf_basis_jet(s, Basis::second, x); },
      TimeGrid(r, 1.0 - r, 300));
  EXPECT_GT(w.max_abs, 1e-3);
  EXPECT_LT(w.max_rel_variation, 1e-8);
}

TEST(Scarf, NegativeControlConstant) {
  const ScarfSpec s{kPi, 0.3, 1.2};
  const double x = 0.8;
  const ResidualReport r = ode_residual(
      [&](double y) { return scarf_coeff(s, y); }, [](double) { return Jet(1.0); },
      TimeGrid(x, x + 0.1, 2), true);
  EXPECT_NEAR(r.per_point_abs[0], std::abs(scarf_coeff(s, x)), 1e-14);
}

TEST(Scarf, Errors) {
  const ScarfSpec s{kPi, 0.3, 1.2};
  EXPECT_THROW(scarf_solution(s, {1.0, 0.0}, 0.0), DomainError);
  EXPECT_THROW(scarf_solution(s, {1.0, 0.0}, 2.0), DomainError);
  EXPECT_THROW(scarf_solution({kPi, 2.0, 1.0}, {0.0, 1.0}, 0.5), DegenerateParameterError);
  EXPECT_THROW(scarf_residual(s, {1.0, 0.0}, TimeGrid(0.5, kPi / 2, 10)), DomainError);
  EXPECT_THROW(scarf_solution({-1.0, 0.3, 1.2}, {1.0, 0.0}, 0.5), InvalidArgument);
}
