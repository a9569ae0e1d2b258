#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "kmodes/jet.hpp"
#include "kmodes/oscillator.hpp"

namespace kmodes {

/// Uniform grid t_i = t0 + i·(t1 − t0)/(n − 1), i = 0..n−1.
class TimeGrid {
 public:
  /// Throws InvalidArgument unless t0 < t1 (both finite) and n ≥ 2.
  TimeGrid(double t0, double t1, int n);
  /// Additionally throws SingularityError if any point is excluded by a
  /// mask.
  TimeGrid(double t0, double t1, int n,
           const std::vector<SingularityMask>& masks);

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  int size() const { return n_; }
  double at(int i) const;
  std::vector<double> points() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t0_;
  double t1_;
  int n_;
};

struct ComplexSeries {
  TimeGrid grid;
  std::vector<cplx> values;

  /// Throws InvalidArgument unless values.size() == grid.size().
  void validate() const;
};

struct ResidualReport {
  double max_abs = 0.0;
  /// Normalized pointwise by |c(t)w(t)| + |w″(t)|.
  double max_rel = 0.0;
  double argmax_t = 0.0;
  std::vector<double> per_point_abs;
  std::vector<double> per_point_rel;
};

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_steps = 1'000'000;

  void validate() const;
};

using CoeffFunction = std::function<cplx(double)>;
/// Returns at least value, first and second derivative at t.
using JetFunction = std::function<Jet(double)>;

/// r(t) = w″(t) + c(t)·w(t) on every grid point. Evaluation errors are
/// re-raised as GridPointError carrying the offending t.
ResidualReport ode_residual(const CoeffFunction& coeff,
                            const JetFunction& solution, const TimeGrid& grid,
                            bool keep_per_point = false);

/// Adaptive Dormand–Prince 5(4) integration of (w, w′)′ = (w′, −c(t)w) from
/// grid.t0(), sampled at the grid through cubic Hermite dense output.
/// Throws NumericalFailure on step-size underflow or non-finite state.
ComplexSeries integrate_second_order(const CoeffFunction& coeff, cplx w0,
                                     cplx w0prime, const TimeGrid& grid,
                                     const IntegratorOptions& opts = {});

/// Same integrator between two times in either direction; returns the
/// final (w, w′).
std::pair<cplx, cplx> integrate_to(const CoeffFunction& coeff, double t_from,
                                   double t_to, cplx w0, cplx w0prime,
                                   const IntegratorOptions& opts = {});

struct SeriesDifference {
  double max_abs_diff = 0.0;
  double max_rel_diff = 0.0;
};

/// Pointwise maxima; relative differences use max(|a|, |b|, 1e−300).
/// Throws InvalidArgument on grid mismatch.
SeriesDifference compare_series(const ComplexSeries& a, const ComplexSeries& b);

/// sol1·sol2′ − sol1′·sol2 at t.
cplx wronskian(const JetFunction& sol1, const JetFunction& sol2, double t);

struct WronskianScan {
  cplx reference;  ///< value at the first grid point
  /// max |W(t) − W(t0)| / max |W|.
  double max_rel_variation = 0.0;
  double max_abs = 0.0;
};
WronskianScan wronskian_scan(const JetFunction& sol1, const JetFunction& sol2,
                             const TimeGrid& grid);

/// Samples a closed form on the grid.
ComplexSeries sample(const JetFunction& f, const TimeGrid& grid);

/// Oracle comparison: integrate from the closed form's own value and
/// derivative at grid.t0() and compare over the grid.
SeriesDifference oracle_agreement(const CoeffFunction& coeff,
                                  const JetFunction& closed_form,
                                  const TimeGrid& grid,
                                  const IntegratorOptions& opts = {});

}  // namespace kmodes
