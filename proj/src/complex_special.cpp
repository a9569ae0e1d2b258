#include "kmodes/complex_special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <string>

#include "kmodes/errors.hpp"

namespace kmodes {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,  12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Radius of the disk in which the defining series is summed directly.
constexpr double kSeriesRadius = 0.8;
// Parameter differences closer than this to an integer make the Γ-weighted
// transformations cancel badly; those cases go to ODE continuation instead.
constexpr double kNearIntegerGap = 0.05;
// Taylor continuation steps use at most this fraction of the local radius
// of convergence.
constexpr double kTaylorStepFraction = 0.5;
constexpr double kTaylorStartRadius = 0.5;

cplx reduce_imag(cplx z) {
  double im = std::remainder(z.imag(), 2.0 * kPi);
  if (im <= -kPi) im += 2.0 * kPi;
  return {z.real(), im};
}

cplx log_sin_pi(cplx z) {
  if (std::abs(z.imag()) < 15.0) return log_principal(std::sin(kPi * z));
  const cplx i(0.0, 1.0);
  if (z.imag() > 0.0) {
    return std::log(i / 2.0) - i * kPi * z +
           std::log(1.0 - std::exp(2.0 * i * kPi * z));
  }
  return std::log(-i / 2.0) + i * kPi * z +
         std::log(1.0 - std::exp(-2.0 * i * kPi * z));
}

double distance_to_integer(cplx x) {
  return std::abs(x - std::round(x.real()));
}

bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

double stop_tolerance(const EvalOptions& opts) {
  return std::max(opts.target_rel_tol * 1e-2, 1e-17);
}

// Γ(num...)/Γ(den...), zero when a denominator argument is a pole.
cplx gamma_ratio(std::initializer_list<cplx> num,
                 std::initializer_list<cplx> den) {
  for (cplx d : den) {
    if (is_nonpositive_integer(d)) return 0.0;
  }
  cplx acc = 0.0;
  for (cplx n : num) acc += lngamma(n);
  for (cplx d : den) acc -= lngamma(d);
  return std::exp(acc);
}

struct ValueAndSlope {
  cplx value;
  cplx slope;
};

// Direct summation of the defining series, returning F and dF/dz.
ValueAndSlope direct_series(cplx a, cplx b, cplx c, cplx z,
                            const EvalOptions& opts) {
  const double tol = stop_tolerance(opts);
  const double guard =
      std::max({std::abs(a), std::abs(b), std::abs(c)}) + 2.0;
  cplx term = 1.0;
  cplx sum = 1.0;
  cplx slope = 0.0;
  int quiet = 0;
  for (int n = 0; n < opts.max_terms; ++n) {
    const double dn = n;
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0));
    // slope accumulates (n+1)·tₙ₊₁/z without dividing by z.
    slope += (dn + 1.0) * term;
    term *= z;
    sum += term;
    if (term == 0.0) {
      return {sum, z == 0.0 ? a * b / c : slope};
    }
    if (dn > guard && std::abs(term) <= tol * std::abs(sum)) {
      if (++quiet >= 2) {
        return {sum, slope};
      }
    } else {
      quiet = 0;
    }
  }
  throw NonConvergenceError("hyp2f1: direct series did not converge within " +
                            std::to_string(opts.max_terms) + " terms");
}

// Terminating series when a (or b) is a nonpositive integer.
cplx polynomial_sum(cplx a, cplx b, cplx c, cplx z) {
  const double na = is_nonpositive_integer(a) ? -a.real() : 1e300;
  const double nb = is_nonpositive_integer(b) ? -b.real() : 1e300;
  const long degree = static_cast<long>(std::min(na, nb));
  cplx term = 1.0;
  cplx sum = 1.0;
  for (long n = 0; n < degree; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
  }
  return sum;
}

cplx via_one_minus_z(cplx a, cplx b, cplx c, cplx z, const EvalOptions& opts) {
  const cplx w = 1.0 - z;
  const cplx s = c - a - b;
  cplx result = 0.0;
  const cplx g1 = gamma_ratio({c, s}, {c - a, c - b});
  if (g1 != 0.0) result += g1 * hyp2f1({a, b, 1.0 - s}, w, opts);
  const cplx g2 = gamma_ratio({c, -s}, {a, b});
  if (g2 != 0.0) {
    result += g2 * cpow_principal(w, s) * hyp2f1({c - a, c - b, 1.0 + s}, w, opts);
  }
  return result;
}

cplx via_inverse_z(cplx a, cplx b, cplx c, cplx z, const EvalOptions& opts) {
  const cplx w = 1.0 / z;
  const cplx minus_z = -z;
  cplx result = 0.0;
  const cplx g1 = gamma_ratio({c, b - a}, {b, c - a});
  if (g1 != 0.0) {
    result += g1 * cpow_principal(minus_z, -a) *
              hyp2f1({a, a - c + 1.0, a - b + 1.0}, w, opts);
  }
  const cplx g2 = gamma_ratio({c, a - b}, {a, c - b});
  if (g2 != 0.0) {
    result += g2 * cpow_principal(minus_z, -b) *
              hyp2f1({b, b - c + 1.0, b - a + 1.0}, w, opts);
  }
  return result;
}

// One Taylor step of the hypergeometric ODE from zc to zc + h.
ValueAndSlope taylor_step(cplx a, cplx b, cplx c, cplx zc, cplx h,
                          ValueAndSlope at, const EvalOptions& opts) {
  const double tol = stop_tolerance(opts);
  const cplx denom_base = zc * (1.0 - zc);
  const cplx lin = c - (a + b + 1.0) * zc;
  const cplx lead = 1.0 - 2.0 * zc;
  cplx e0 = at.value;
  cplx e1 = at.slope * h;
  cplx sum = e0 + e1;
  cplx dsum = e1;  // Σ n·eₙ
  int quiet = 0;
  for (int n = 0; n < opts.max_terms; ++n) {
    const double dn = n;
    const cplx e2 = ((dn + a) * (dn + b) * e0 * h * h -
                     (lead * dn + lin) * (dn + 1.0) * e1 * h) /
                    (denom_base * (dn + 2.0) * (dn + 1.0));
    sum += e2;
    dsum += (dn + 2.0) * e2;
    if (std::abs(e2) + std::abs(e1) <= tol * std::abs(sum) && n > 3) {
      if (++quiet >= 2) return {sum, dsum / h};
    } else {
      quiet = 0;
    }
    e0 = e1;
    e1 = e2;
  }
  throw NonConvergenceError("hyp2f1: Taylor continuation step did not converge");
}

double distance_point_to_segment(cplx point, cplx from, cplx to) {
  const cplx dir = to - from;
  const double len2 = std::norm(dir);
  if (len2 == 0.0) return std::abs(point - from);
  double s = ((point - from) * std::conj(dir)).real() / len2;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(point - (from + s * dir));
}

cplx taylor_continuation(cplx a, cplx b, cplx c, cplx z,
                         const EvalOptions& opts) {
  // Path: a ray from the origin, detouring around z = 1 when the ray would
  // pass close to it. Real z > 1 goes below, matching the cut convention.
  std::array<cplx, 2> targets{};
  int n_targets = 0;
  cplx direction = z / std::abs(z);
  const bool on_cut = z.imag() == 0.0 && z.real() > 1.0;
  if (std::abs(z) > 1.0 &&
      (on_cut || distance_point_to_segment(1.0, 0.0, z) < 0.25)) {
    const cplx waypoint(1.0, z.imag() > 0.0 ? 0.5 : -0.5);
    targets[n_targets++] = waypoint;
    direction = waypoint / std::abs(waypoint);
  }
  targets[n_targets++] = z;

  cplx zc = kTaylorStartRadius * direction;
  ValueAndSlope state = direct_series(a, b, c, zc, opts);
  for (int k = 0; k < n_targets; ++k) {
    const cplx target = targets[static_cast<std::size_t>(k)];
    for (int steps = 0;; ++steps) {
      const cplx remaining = target - zc;
      const double dist = std::abs(remaining);
      if (dist == 0.0) break;
      if (steps > 100000) {
        throw NonConvergenceError("hyp2f1: continuation path did not terminate");
      }
      const double radius = std::min(std::abs(zc), std::abs(1.0 - zc));
      const double max_step = kTaylorStepFraction * radius;
      const cplx h = dist <= max_step ? remaining : remaining * (max_step / dist);
      state = taylor_step(a, b, c, zc, h, state, opts);
      zc = dist <= max_step ? target : zc + h;
    }
  }
  return state.value;
}

}  // namespace

void EvalOptions::validate() const {
  if (!(target_rel_tol > 0.0 && target_rel_tol < 1.0)) {
    throw InvalidArgument("EvalOptions: target_rel_tol must lie in (0, 1)");
  }
  if (max_terms < 1) {
    throw InvalidArgument("EvalOptions: max_terms must be at least 1");
  }
}

cplx log_principal(cplx z) {
  if (z.imag() == 0.0 && z.real() < 0.0) {
    return {std::log(-z.real()), kPi};
  }
  return std::log(z);
}

cplx cpow_principal(cplx z, cplx w) {
  if (z == 0.0) {
    if (w.real() > 0.0) return 0.0;
    throw InvalidArgument("cpow_principal: zero base with Re(exponent) <= 0");
  }
  if (w == 0.0) return 1.0;
  return std::exp(w * log_principal(z));
}

Jet pow_principal(const Jet& g, cplx w) {
  const cplx z = g.value();
  const cplx p0 = cpow_principal(z, w);
  const cplx inv = 1.0 / z;
  const cplx p1 = w * p0 * inv;
  const cplx p2 = (w - 1.0) * p1 * inv;
  const cplx p3 = (w - 2.0) * p2 * inv;
  return compose({p0, p1, p2, p3}, g);
}

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 &&
         z.real() == std::round(z.real());
}

cplx lngamma(cplx z) {
  if (!is_finite(z)) throw InvalidArgument("lngamma: non-finite argument");
  if (is_nonpositive_integer(z)) {
    throw PoleError("lngamma: pole at nonpositive integer " +
                    std::to_string(z.real()));
  }
  if (z.real() < 0.5) {
    return reduce_imag(std::log(kPi) - log_sin_pi(z) - lngamma(1.0 - z));
  }
  const cplx zm = z - 1.0;
  cplx series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    series += kLanczosCoeffs[i] / (zm + static_cast<double>(i));
  }
  const cplx t = zm + kLanczosG + 0.5;
  const cplx result = 0.5 * std::log(2.0 * kPi) + (zm + 0.5) * std::log(t) -
                      t + std::log(series);
  return reduce_imag(result);
}

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-lngamma(z));
}

cplx hyp2f1(const HypParams& p, cplx z, const EvalOptions& opts) {
  opts.validate();
  const cplx a = p.a, b = p.b, c = p.c;
  if (!is_finite(a) || !is_finite(b) || !is_finite(c) || !is_finite(z)) {
    throw InvalidArgument("hyp2f1: non-finite parameter or argument");
  }
  const bool a_poly = is_nonpositive_integer(a);
  const bool b_poly = is_nonpositive_integer(b);
  if (is_nonpositive_integer(c)) {
    const bool ok = (a_poly && a.real() >= c.real()) ||
                    (b_poly && b.real() >= c.real());
    if (!ok) {
      throw DegenerateParameterError(
          "hyp2f1: c is a nonpositive integer and the series does not "
          "terminate before its pole");
    }
  }
  if (z == 0.0) return 1.0;
  if (a_poly || b_poly) return polynomial_sum(a, b, c, z);
  if (c == a) return cpow_principal(1.0 - z, -b);
  if (c == b) return cpow_principal(1.0 - z, -a);
  if (z == 1.0) {
    if ((c - a - b).real() <= 0.0) {
      throw DivergenceError("hyp2f1: divergent at z = 1 (Re(c-a-b) <= 0)");
    }
    return gamma_ratio({c, c - a - b}, {c - a, c - b});
  }

  const double mod_z = std::abs(z);
  if (mod_z <= kSeriesRadius) return direct_series(a, b, c, z, opts).value;

  const cplx pfaff_arg = z / (z - 1.0);
  if (std::abs(pfaff_arg) <= kSeriesRadius) {
    return cpow_principal(1.0 - z, -a) *
           direct_series(a, c - b, c, pfaff_arg, opts).value;
  }

  const double mod_reflect = std::abs(1.0 - z);
  const double mod_inverse = 1.0 / mod_z;
  const bool reflect_ok = mod_reflect <= kSeriesRadius &&
                          distance_to_integer(c - a - b) >= kNearIntegerGap;
  const bool inverse_ok = mod_inverse <= kSeriesRadius &&
                          distance_to_integer(a - b) >= kNearIntegerGap;
  if (reflect_ok && (!inverse_ok || mod_reflect <= mod_inverse)) {
    return via_one_minus_z(a, b, c, z, opts);
  }
  if (inverse_ok) return via_inverse_z(a, b, c, z, opts);
  return taylor_continuation(a, b, c, z, opts);
}

cplx hyp2f1_deriv(const HypParams& p, cplx z, int order,
                  const EvalOptions& opts) {
  if (order < 0 || order > 3) {
    throw InvalidArgument("hyp2f1_deriv: order must be 0, 1, 2 or 3");
  }
  cplx factor = 1.0;
  for (int k = 0; k < order; ++k) {
    const double dk = k;
    factor *= (p.a + dk) * (p.b + dk) / (p.c + dk);
  }
  if (factor == 0.0) return 0.0;
  const double shift = order;
  return factor * hyp2f1({p.a + shift, p.b + shift, p.c + shift}, z, opts);
}

Jet hyp2f1_jet(const HypParams& p, const Jet& x, int order,
               const EvalOptions& opts) {
  std::array<cplx, 4> h{};
  for (int k = 0; k <= std::min(order, 3); ++k) {
    h[static_cast<std::size_t>(k)] = hyp2f1_deriv(p, x.value(), k, opts);
  }
  return compose(h, x);
}

}  // namespace kmodes
