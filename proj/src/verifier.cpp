#include "kmodes/verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "kmodes/errors.hpp"

namespace kmodes {

namespace {

using State = std::array<cplx, 2>;

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 - (-92097.0 / 339200),
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

State rhs(const CoeffFunction& coeff, double t, const State& y) {
  const cplx c = coeff(t);
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw NumericalFailure("integrator: coefficient is not finite at t = " +
                               std::to_string(t),
                           t);
  }
  return {y[1], -c * y[0]};
}

State axpy(const State& y, double h,
           std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [w, k] : terms) {
    out[0] += h * w * (*k)[0];
    out[1] += h * w * (*k)[1];
  }
  return out;
}

bool finite_state(const State& y) {
  for (const cplx& v : y) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

// Calls on_step(t0, y0, f0, t1, y1, f1) after every accepted step.
template <class OnStep>
State drive(const CoeffFunction& coeff, double t_from, double t_to, State y,
            const IntegratorOptions& opts, OnStep&& on_step) {
  opts.validate();
  const double span = t_to - t_from;
  if (span == 0.0) return y;
  const double dir = span > 0.0 ? 1.0 : -1.0;
  double t = t_from;
  State f = rhs(coeff, t, y);

  auto scale = [&](const State& a, const State& b, int i) {
    const cplx& va = a[static_cast<std::size_t>(i / 2)];
    const cplx& vb = b[static_cast<std::size_t>(i / 2)];
    const double ma = i % 2 == 0 ? std::abs(va.real()) : std::abs(va.imag());
    const double mb = i % 2 == 0 ? std::abs(vb.real()) : std::abs(vb.imag());
    return opts.abs_tol + opts.rel_tol * std::max(ma, mb);
  };

  // Initial step from the size of the state and its derivative.
  double h;
  {
    const double d0 = std::abs(y[0]) + std::abs(y[1]);
    const double d1 = std::abs(f[0]) + std::abs(f[1]);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min({h, std::abs(span), 0.1});
  }

  for (long step = 0;; ++step) {
    if (step >= opts.max_steps) {
      throw NumericalFailure("integrator: max_steps exceeded", t);
    }
    const double remaining = t_to - t;
    if (dir * remaining <= 0.0) break;
    bool last = false;
    if (h >= std::abs(remaining)) {
      h = std::abs(remaining);
      last = true;
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      throw NumericalFailure("integrator: step size underflow near t = " +
                                 std::to_string(t),
                             t);
    }
    const double hs = dir * h;
    const State& k1 = f;
    const State k2 = rhs(coeff, t + c2 * hs, axpy(y, hs, {{a21, &k1}}));
    const State k3 =
        rhs(coeff, t + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
    const State k4 = rhs(coeff, t + c4 * hs,
                         axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = rhs(
        coeff, t + c5 * hs,
        axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = rhs(coeff, t + hs,
                         axpy(y, hs,
                              {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4},
                               {a65, &k5}}));
    const State y_new = axpy(
        y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const double t_new = last ? t_to : t + hs;
    const State k7 = rhs(coeff, t_new, y_new);
    const State err = axpy(State{0.0, 0.0}, hs,
                           {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5},
                            {e6, &k6}, {e7, &k7}});
    double norm = 0.0;
    for (int i = 0; i < 4; ++i) {
      const cplx& v = err[static_cast<std::size_t>(i / 2)];
      const double comp = i % 2 == 0 ? v.real() : v.imag();
      const double r = comp / scale(y, y_new, i);
      norm += r * r;
    }
    norm = std::sqrt(norm / 4.0);
    if (!std::isfinite(norm) || !finite_state(y_new)) {
      h *= 0.2;
      continue;
    }
    if (norm <= 1.0) {
      on_step(t, y, f, t_new, y_new, k7);
      t = t_new;
      y = y_new;
      f = k7;
      if (last) break;
      const double factor =
          norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      h *= factor;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(norm, -0.2));
    }
  }
  return y;
}

cplx hermite(double s, double h, cplx y0, cplx d0, cplx y1, cplx d1) {
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 +
         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

}  // namespace

TimeGrid::TimeGrid(double t0, double t1, int n) : t0_(t0), t1_(t1), n_(n) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t0 < t1)) {
    throw InvalidArgument("TimeGrid: require finite t0 < t1");
  }
  if (n < 2) throw InvalidArgument("TimeGrid: require n >= 2");
}

TimeGrid::TimeGrid(double t0, double t1, int n,
                   const std::vector<SingularityMask>& masks)
    : TimeGrid(t0, t1, n) {
  for (int i = 0; i < n_; ++i) {
    for (const auto& m : masks) m.check(at(i), "TimeGrid");
  }
}

double TimeGrid::at(int i) const {
  if (i == n_ - 1) return t1_;
  return t0_ + (t1_ - t0_) * static_cast<double>(i) / static_cast<double>(n_ - 1);
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = at(i);
  return out;
}

void ComplexSeries::validate() const {
  if (values.size() != static_cast<std::size_t>(grid.size())) {
    throw InvalidArgument("ComplexSeries: values length does not match grid");
  }
}

void IntegratorOptions::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0) || !(abs_tol > 0.0 && abs_tol < 1.0)) {
    throw InvalidArgument("IntegratorOptions: tolerances must lie in (0, 1)");
  }
  if (max_steps < 1) throw InvalidArgument("IntegratorOptions: max_steps < 1");
}

ResidualReport ode_residual(const CoeffFunction& coeff,
                            const JetFunction& solution, const TimeGrid& grid,
                            bool keep_per_point) {
  ResidualReport report;
  report.argmax_t = grid.t0();
  double worst_rel = -1.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double t = grid.at(i);
    cplx c;
    Jet w;
    try {
      c = coeff(t);
      w = solution(t);
    } catch (const Error& e) {
      throw GridPointError("ode_residual at t = " + std::to_string(t) + ": " +
                               e.what(),
                           t);
    }
    const cplx r = w[2] + c * w.value();
    const double abs_r = std::abs(r);
    const double denom = std::abs(c * w.value()) + std::abs(w[2]);
    const double rel_r = denom > 0.0 ? abs_r / denom
                                     : (abs_r == 0.0 ? 0.0 : HUGE_VAL);
    report.max_abs = std::max(report.max_abs, abs_r);
    if (rel_r > worst_rel) {
      worst_rel = rel_r;
      report.argmax_t = t;
    }
    if (keep_per_point) {
      report.per_point_abs.push_back(abs_r);
      report.per_point_rel.push_back(rel_r);
    }
  }
  report.max_rel = std::max(worst_rel, 0.0);
  return report;
}

ComplexSeries integrate_second_order(const CoeffFunction& coeff, cplx w0,
                                     cplx w0prime, const TimeGrid& grid,
                                     const IntegratorOptions& opts) {
  ComplexSeries out{grid, {}};
  out.values.reserve(static_cast<std::size_t>(grid.size()));
  out.values.push_back(w0);
  int next = 1;
  drive(coeff, grid.t0(), grid.t1(), State{w0, w0prime}, opts,
        [&](double ta, const State& ya, const State& fa, double tb,
            const State& yb, const State& fb) {
          const double h = tb - ta;
          while (next < grid.size() && grid.at(next) <= tb) {
            const double s = (grid.at(next) - ta) / h;
            out.values.push_back(next == grid.size() - 1 && tb == grid.t1()
                                     ? yb[0]
                                     : hermite(s, h, ya[0], fa[0], yb[0], fb[0]));
            ++next;
          }
        });
  return out;
}

std::pair<cplx, cplx> integrate_to(const CoeffFunction& coeff, double t_from,
                                   double t_to, cplx w0, cplx w0prime,
                                   const IntegratorOptions& opts) {
  const State y = drive(coeff, t_from, t_to, State{w0, w0prime}, opts,
                        [](double, const State&, const State&, double,
                           const State&, const State&) {});
  return {y[0], y[1]};
}

SeriesDifference compare_series(const ComplexSeries& a, const ComplexSeries& b) {
  a.validate();
  b.validate();
  if (!(a.grid == b.grid)) {
    throw InvalidArgument("compare_series: grids differ");
  }
  SeriesDifference d;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double diff = std::abs(a.values[i] - b.values[i]);
    const double norm =
        std::max({std::abs(a.values[i]), std::abs(b.values[i]), 1e-300});
    d.max_abs_diff = std::max(d.max_abs_diff, diff);
    d.max_rel_diff = std::max(d.max_rel_diff, diff / norm);
  }
  return d;
}

cplx wronskian(const JetFunction& sol1, const JetFunction& sol2, double t) {
  const Jet f = sol1(t);
  const Jet g = sol2(t);
  return f.value() * g[1] - f[1] * g.value();
}

WronskianScan wronskian_scan(const JetFunction& sol1, const JetFunction& sol2,
                             const TimeGrid& grid) {
  WronskianScan scan;
  scan.reference = wronskian(sol1, sol2, grid.t0());
  double max_dev = 0.0;
  scan.max_abs = std::abs(scan.reference);
  for (int i = 1; i < grid.size(); ++i) {
    const cplx w = wronskian(sol1, sol2, grid.at(i));
    max_dev = std::max(max_dev, std::abs(w - scan.reference));
    scan.max_abs = std::max(scan.max_abs, std::abs(w));
  }
  scan.max_rel_variation = scan.max_abs > 0.0 ? max_dev / scan.max_abs : 0.0;
  return scan;
}

ComplexSeries sample(const JetFunction& f, const TimeGrid& grid) {
  ComplexSeries out{grid, {}};
  out.values.reserve(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    out.values.push_back(f(grid.at(i)).value());
  }
  return out;
}

SeriesDifference oracle_agreement(const CoeffFunction& coeff,
                                  const JetFunction& closed_form,
                                  const TimeGrid& grid,
                                  const IntegratorOptions& opts) {
  const Jet start = closed_form(grid.t0());
  const ComplexSeries numeric =
      integrate_second_order(coeff, start.value(), start[1], grid, opts);
  return compare_series(sample(closed_form, grid), numeric);
}

}  // namespace kmodes
