#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "kmodes/diagnostics.hpp"
#include "kmodes/errors.hpp"
#include "kmodes/kmode_single.hpp"
#include "kmodes/verifier.hpp"

using namespace kmodes;

namespace {

constexpr double kPi = std::numbers::pi;

SingleKSpec spec(int kappa, double K, double w = 1.0) {
  OscillatorSpec b;
  b.kappa = branch_from_int(kappa);
  b.omega0 = w;
  return {b, K};
}

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

struct BasisRef {
  int kappa;
  double K, t;
  cplx first, second;
};

// mpmath, principal branches throughout
const BasisRef kBasisRefs[] = {
    {1, 0.01, 0.3, {0.62104021063299087, 1.9084980137287554},
     {0.026019735043825401, -1.9189393054993344}},
    {1, 0.01, 1.2, {1.8653754227182977, 0.70578681548824575},
     {0.0074260030187964172, -0.72793017547600278}},
    {-1, 0.01, 0.7, {-3.9332728358046239, -0.033673917559962595},
     {-1.470220444499431, 0.010956166180196761}},
    {-1, 0.01, 2.5, {-23.614777594187104, 0.34811986794827478},
     {-11.723214877463464, 0.31723074631277444}},
    {1, 0.5, 0.3, {2.2681424541592304, -0.39320010751021932},
     {2.2681424541592304, -0.39320010751021932}},
    {1, 0.5, 1.2, {1.0710033405375921, -0.67047466311087189},
     {1.0710033405375921, -0.67047466311087189}},
    {-1, 0.5, 0.7, {-1.3425275485704037, -0.61902696253804445},
     {-0.29105494365743692, 0.2348162015438479}},
    {-1, 0.5, 2.5, {-3.1845424498911643, 5.4932183443294276},
     {-0.1109135009114333, 3.6621770713279698}},
    {1, 2, 0.3, {0.25405220317970714, -0.0541732617672564},
     {37.43351305885383, -8.0886126239836912}},
    {1, 2, 1.2, {0.25642865173774364, 0.19701073850530499},
     {0.2421977268158359, -7.8114422093197233}},
    {-1, 2, 0.7, {-0.23234286146875866, -0.99428339470963728},
     {0.0409543138383939, 0.01718484510880181}},
    {-1, 2, 2.5, {0.50556947608535477, -1.1576827315238836},
     {-0.47662259822694657, -0.95594168284990996}},
};

TimeGrid window(int kappa, int n = 500) {
  return kappa == 1 ? TimeGrid(0.0, 1.4, n) : TimeGrid(0.5, 3.0, n);
}

// collects warnings for the lifetime of the guard
struct WarningCapture {
  std::vector<std::string> seen;
  WarningHandler previous;
  WarningCapture() {
    previous = set_warning_handler(
        [this](std::string_view m) { seen.emplace_back(m); });
  }
  ~WarningCapture() { set_warning_handler(previous); }
};

}  // namespace

TEST(Coefficients, Values) {
  EXPECT_EQ(coeff_fermionic(spec(1, 0.0), 0.0), cplx(-1.0));
  EXPECT_LT(std::abs(coeff_fermionic(spec(1, 0.5), kPi / 4) - cplx(-3.0, -1.0)), 1e-14);
  EXPECT_LT(std::abs(coeff_fermionic(spec(-1, 0.0), 40.0) - cplx(-1.0)), 1e-14);
  EXPECT_EQ(coeff_bosonic(spec(1, 0.0), 0.77), cplx(1.0));
  EXPECT_LT(std::abs(coeff_bosonic(spec(1, 0.5), kPi / 4) - cplx(1.0, -1.0)), 1e-15);
  EXPECT_EQ(coeff_bosonic(spec(-1, 0.0, 2.0), 1.0), cplx(-4.0));
  EXPECT_THROW(coeff_bosonic(spec(1, 0.3), kPi / 2), SingularityError);
  EXPECT_THROW(coeff_fermionic(spec(-1, 0.3), 0.0), SingularityError);
}

TEST(DerivedParams, Values) {
  const DerivedParams zero = derived_params(spec(1, 0.0));
  EXPECT_EQ(zero.p, cplx(1.0));
  EXPECT_EQ(zero.q, cplx(1.0));
  EXPECT_EQ(zero.r, cplx(0.5));
  EXPECT_EQ(zero.s, cplx(0.5));
  const DerivedParams half = derived_params(spec(1, 0.5));
  EXPECT_EQ(half.p, cplx(0.5));
  EXPECT_NEAR(half.q.real(), 1.2071067811865475, 1e-15);
  const DerivedParams two = derived_params(spec(1, 2.0));
  EXPECT_LT(std::abs(two.p - 0.5 * cplx(1.0, std::sqrt(3.0))), 1e-15);
}

TEST(ZVariables, Differences) {
  for (double t : {0.1, 0.8, 2.0}) {
    const ZVariables z = z_variables(1.3, t);
    EXPECT_LT(std::abs(z.z2 - z.z1 - 2.0), 1e-15);
    EXPECT_LT(std::abs(z.z3 - z.z4 - 2.0), 1e-14);
  }
  EXPECT_TRUE(std::isnan(z_variables(1.0, 0.0).z3.real()));
}

TEST(BosonicBasis, MatchesReferenceValues) {
  for (const auto& r : kBasisRefs) {
    const SingleKSpec s = spec(r.kappa, r.K);
    const cplx b1 = bosonic_basis_jet(s, Basis::first, r.t, 0).value();
    const cplx b2 = bosonic_basis_jet(s, Basis::second, r.t, 0).value();
    EXPECT_LT(rel_err(b1, r.first), 1e-12) << r.kappa << " " << r.K << " " << r.t;
    EXPECT_LT(rel_err(b2, r.second), 1e-12) << r.kappa << " " << r.K << " " << r.t;
  }
}

TEST(BosonicBasis, SecondTermUndefinedAtZeroK) {
  EXPECT_THROW(bosonic_basis_jet(spec(1, 0.0), Basis::second, 0.4), DegenerateParameterError);
  EXPECT_THROW(bosonic_mode(spec(1, 0.0), {1.0, 1.0}, 0.4), DegenerateParameterError);
  EXPECT_NO_THROW(bosonic_mode(spec(1, 0.0), {1.0, 0.0}, 0.4));
}

TEST(BosonicBasis, EachTermSolvesItsEquation) {
  for (int kappa : {1, -1}) {
    for (double K : {0.01, 0.5, 2.0}) {
      const SingleKSpec s = spec(kappa, K);
      for (Basis b : {Basis::first, Basis::second}) {
        const ResidualReport r = ode_residual(
            [&](double t) { return coeff_bosonic(s, t); },
            [&](double t) { return bosonic_basis_jet(s, b, t); }, window(kappa));
        EXPECT_LT(r.max_rel, 1e-8) << kappa << " " << K;
      }
    }
  }
}

TEST(BosonicBasis, AnalyticDerivativesMatchFiniteDifferences) {
  const SingleKSpec s = spec(1, 2.0);
  const double h = 1e-5;
  for (double t : {0.15, 0.6, 1.1}) {
    const Jet j = bosonic_basis_jet(s, Basis::second, t, 3);
    const Jet p = bosonic_basis_jet(s, Basis::second, t + h, 3);
    const Jet m = bosonic_basis_jet(s, Basis::second, t - h, 3);
    for (int k = 0; k < 3; ++k) {
      EXPECT_LT(rel_err((p[k] - m[k]) / (2 * h), j[k + 1]), 1e-6) << t << " " << k;
    }
  }
}

TEST(BosonicMode, KZeroIsPlaneWave) {
  const SingleKSpec s = spec(1, 0.0);
  const cplx b0 = bosonic_mode(s, {1.0, 0.0}, 0.0);
  for (double t = 0.0; t <= 1.4; t += 0.01) {
    const cplx ratio = bosonic_mode(s, {1.0, 0.0}, t) / b0;
    EXPECT_LT(std::abs(ratio - std::exp(cplx(0, -t))), 1e-10) << t;
  }
}

TEST(BosonicMode, OracleAgreementInvertedUnitConstants) {
  const SingleKSpec s = spec(-1, 0.5);
  const ModeConstants c{1.0, 1.0};
  const SeriesDifference d =
      oracle_agreement([&](double t) { return coeff_bosonic(s, t); },
                       [&](double t) { return bosonic_mode_jet(s, c, t); },
                       TimeGrid(0.5, 1.0, 51));
  EXPECT_LT(d.max_rel_diff, 1e-6);
}

TEST(BosonicMode, ContinuityAsKVanishes) {
  const TimeGrid g(0.0, 1.4, 141);
  auto at = [](double K, double t) { return bosonic_mode(spec(1, K), {1.0, 0.0}, t); };
  double d1 = 0.0, d2 = 0.0;
  for (double t : g.points()) {
    d1 = std::max(d1, std::abs(at(1e-2, t) - at(1e-3, t)));
    d2 = std::max(d2, std::abs(at(1e-3, t) - at(1e-4, t)));
  }
  EXPECT_GT(d1 / d2, 8.0);
  EXPECT_LT(d1 / d2, 12.0);
}

TEST(BosonicMode, LinearInConstants) {
  const SingleKSpec s = spec(-1, 2.0);
  const cplx a(0.3, -1.1), b(2.0, 0.5);
  const double t = 1.7;
  const cplx lhs = bosonic_mode(s, {a, b}, t);
  const cplx rhs = a * bosonic_basis_jet(s, Basis::first, t, 0).value() +
                   b * second_basis_multiplier(s) *
                       bosonic_basis_jet(s, Basis::second, t, 0).value();
  EXPECT_LT(rel_err(lhs, rhs), 1e-15);
  EXPECT_THROW(bosonic_mode(s, {0.0, 0.0}, t), InvalidArgument);
}

TEST(SmallK, CoincidesWithExactAtZero) {
  const SingleKSpec s = spec(1, 0.0);
  for (double t : {0.0, 0.4, 1.3}) {
    EXPECT_LT(rel_err(bosonic_mode_smallK(s, {1.0, 0.0}, t), bosonic_mode(s, {1.0, 0.0}, t)),
              1e-14);
  }
}

TEST(SmallK, DiscrepancyHalvesWithK) {
  for (int kappa : {1, -1}) {
    const TimeGrid g = window(kappa, 141);
    auto gap = [&](double K) {
      const SingleKSpec s = spec(kappa, K);
      double m = 0.0;
      for (double t : g.points()) {
        m = std::max(m, std::abs(bosonic_mode_smallK(s, {0.5, 0.5}, t) -
                                 bosonic_mode(s, {0.5, 0.5}, t)));
      }
      return m;
    };
    const double ratio = gap(1e-3) / gap(2e-3);
    EXPECT_NEAR(ratio, 0.5, 0.1) << kappa;
  }
}

TEST(SmallK, WarnsOutsideRegime) {
  WarningCapture cap;
  bosonic_mode_smallK(spec(1, 0.05), {1.0, 0.0}, 0.3);
  EXPECT_TRUE(cap.seen.empty());
  bosonic_mode_smallK(spec(1, 0.5), {1.0, 0.0}, 0.3);
  ASSERT_EQ(cap.seen.size(), 1u);
  EXPECT_NE(cap.seen[0].find("0.1"), std::string::npos);
}

TEST(FermionicReciprocal, ModulusConstantAtZeroK) {
  const SingleKSpec s = spec(1, 0.0);
  const double m0 = std::abs(fermionic_reciprocal(s, {1.0, 0.0}, 0.0));
  for (double t = 0.05; t < 1.4; t += 0.05) {
    EXPECT_NEAR(std::abs(fermionic_reciprocal(s, {1.0, 0.0}, t)), m0, 1e-10 * m0);
  }
}

TEST(FermionicFromCoupling, SatisfiesCoupledSystem) {
  for (int kappa : {1, -1}) {
    for (double K : {0.5, 2.0}) {
      const SingleKSpec s = spec(kappa, K);
      const ModeConstants c{1.0, 0.0};
      double worst = 0.0, worst_ode = 0.0;
      for (double t : window(kappa, 141).points()) {
        const Jet w2 = bosonic_mode_jet(s, c, t, 2);
        const Jet w1 = fermionic_from_coupling_jet(s, c, t, 2);
        const CouplingResiduals r = coupling_residuals(s, w1, w2, t);
        const double scale = std::abs(w1[1]) + std::abs(K * w1.value()) + std::abs(K * w2.value());
        worst = std::max(worst, std::abs(r.first) / scale);
        worst = std::max(worst, std::abs(r.second) / scale);
        const cplx ode = w1[2] + coeff_fermionic(s, t) * w1.value();
        worst_ode = std::max(worst_ode, std::abs(ode) / (std::abs(w1[2]) +
                                                         std::abs(coeff_fermionic(s, t) * w1.value())));
      }
      EXPECT_LT(worst, 1e-8) << kappa << " " << K;
      EXPECT_LT(worst_ode, 1e-8) << kappa << " " << K;
    }
  }
}

TEST(FermionicFromCoupling, FiniteDifferenceCrossCheck) {
  const SingleKSpec s = spec(1, 2.0);
  const ModeConstants c{0.5, 0.5};
  // stay clear of t = 0, the closed form jumps branch there
  const double t = 0.3, h = 1e-5;
  const cplx d = (bosonic_mode(s, c, t + h) - bosonic_mode(s, c, t - h)) / (2 * h);
  const cplx mass = cplx(0, 1) * riccati_particular(s.base, t) + 2.0;
  const cplx expect = (cplx(0, -1) * d + mass * bosonic_mode(s, c, t)) / 2.0;
  EXPECT_LT(rel_err(fermionic_from_coupling(s, c, t), expect), 1e-6);
}

TEST(FermionicFromCoupling, Errors) {
  EXPECT_THROW(fermionic_from_coupling(spec(1, 0.0), {1.0, 0.0}, 0.3), InvalidArgument);
  EXPECT_THROW(fermionic_from_coupling(spec(1, 0.5), {1.0, 0.0}, kPi / 2), SingularityError);
  EXPECT_THROW(fermionic_from_coupling_jet(spec(1, 0.5), {1.0, 0.0}, 0.3, 3), InvalidArgument);
}
