#include "kmodes/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "kmodes/applications.hpp"
#include "kmodes/errors.hpp"
#include "kmodes/kmode_multi.hpp"
#include "kmodes/kmode_single.hpp"

namespace kmodes::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

cplx parse_complex(const std::string& flag, const std::string& text) {
  auto parse_part = [&](std::string_view part) {
    double v = 0.0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    if (!part.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || first == last) {
      throw InvalidArgument(flag + ": expected a number or re,im pair, got '" +
                            text + "'");
    }
    return v;
  };
  const auto comma = text.find(',');
  const std::string_view sv(text);
  if (comma == std::string::npos) return {parse_part(sv), 0.0};
  return {parse_part(sv.substr(0, comma)), parse_part(sv.substr(comma + 1))};
}

double clean(double v) { return v == 0.0 ? 0.0 : v; }

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return clean(v);
}

json pair_json(cplx v) { return json::array({number(v.real()), number(v.imag())}); }

json grid_json(const TimeGrid& g) {
  return {{"t0", number(g.t0())}, {"t1", number(g.t1())}, {"n", g.size()}};
}

json report_json(const ResidualReport& r) {
  return {{"max_abs", number(r.max_abs)},
          {"max_rel", number(r.max_rel)},
          {"argmax_t", number(r.argmax_t)}};
}

// Evaluates f on the grid; singular or undefined points become NaN.
std::vector<cplx> evaluate_masked(const std::function<cplx(double)>& f,
                                  const TimeGrid& grid) {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    try {
      out.push_back(f(grid.at(i)));
    } catch (const SingularityError&) {
      out.emplace_back(kNaN, kNaN);
    } catch (const ZeroDivisionError&) {
      out.emplace_back(kNaN, kNaN);
    }
  }
  return out;
}

struct Output {
  std::string format = "csv";
  std::string path;

  void add_to(CLI::App* sub, bool with_format = true) {
    if (with_format) {
      sub->add_option("--format", format, "csv or json")
          ->check(CLI::IsMember({"csv", "json"}));
    }
    sub->add_option("--out", path, "output file (default: standard output)");
  }
};

struct GridFlags {
  double t0 = 0.0;
  double t1 = 1.4;
  int n = 500;

  void add_to(CLI::App* sub, const char* lo = "--t0", const char* hi = "--t1") {
    sub->add_option(lo, t0, "start of the window");
    sub->add_option(hi, t1, "end of the window");
    sub->add_option("--n", n, "number of grid points")
        ->check(CLI::Range(2, 50'000'000));
  }

  TimeGrid grid(const char* hi = "--t1") const {
    if (!std::isfinite(t0) || !std::isfinite(t1) || !(t0 < t1)) {
      throw InvalidArgument(std::string(hi) +
                            ": window end must exceed its start");
    }
    return TimeGrid(t0, t1, n);
  }
};

struct ModeFlags {
  int kappa = 1;
  double omega0 = 1.0;
  std::string alpha = "1,0";
  std::string beta = "0,0";

  void add_to(CLI::App* sub) {
    sub->add_option("--kappa", kappa, "branch, +1 or -1")
        ->check(CLI::IsMember({-1, 1}));
    sub->add_option("--omega0", omega0, "oscillator frequency")
        ->check(CLI::PositiveNumber);
    sub->add_option("--alpha", alpha, "first constant as re,im");
    sub->add_option("--beta", beta, "second constant as re,im");
  }

  OscillatorSpec base() const {
    OscillatorSpec b;
    b.kappa = branch_from_int(kappa);
    b.omega0 = omega0;
    return b;
  }

  ModeConstants constants() const {
    ModeConstants c{parse_complex("--alpha", alpha),
                    parse_complex("--beta", beta)};
    if (c.alpha == 0.0 && c.beta == 0.0) {
      throw InvalidArgument("--alpha/--beta: both constants are zero");
    }
    return c;
  }
};

void emit_series(const std::string& format, const json& params,
                 const ComplexSeries& series, std::ostream& os) {
  if (format == "csv") {
    write_csv(series, os);
    return;
  }
  json values = json::array();
  for (const cplx& v : series.values) values.push_back(pair_json(v));
  const json doc = {{"params", params},
                    {"grid", grid_json(series.grid)},
                    {"values", values}};
  os << doc.dump(2) << '\n';
}

json table_json(const Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::array();
    for (double v : r) row.push_back(number(v));
    rows.push_back(row);
  }
  return {{"columns", t.columns}, {"rows", rows}};
}

void finish_output(const Output& o, const std::string& data, std::ostream& out) {
  if (o.path.empty()) {
    out << data;
    out.flush();
    if (!out) throw NumericalFailure("cannot write to standard output", 0.0);
    return;
  }
  std::ofstream f(o.path, std::ios::binary | std::ios::trunc);
  f << data;
  f.close();
  if (!f) throw NumericalFailure("cannot write output file " + o.path, 0.0);
}

struct EvalCommand {
  ModeFlags mode;
  GridFlags grid;
  Output output;
  double K = 0.0;
  std::string quantity = "bosonic";

  void add_to(CLI::App* sub) {
    mode.add_to(sub);
    grid.add_to(sub);
    output.add_to(sub);
    sub->add_option("--K", K, "coupling constant");
    sub->add_option("--quantity", quantity,
                    "bosonic, bosonic-smallk, fermionic or reciprocal")
        ->check(CLI::IsMember(
            {"bosonic", "bosonic-smallk", "fermionic", "reciprocal"}));
  }

  std::string execute() const {
    const SingleKSpec spec{mode.base(), K};
    spec.validate();
    const ModeConstants consts = mode.constants();
    const TimeGrid g = grid.grid();
    std::function<cplx(double)> f;
    if (quantity == "bosonic") {
      f = [&](double t) { return bosonic_mode(spec, consts, t); };
    } else if (quantity == "bosonic-smallk") {
      f = [&](double t) { return bosonic_mode_smallK(spec, consts, t); };
    } else if (quantity == "fermionic") {
      f = [&](double t) { return fermionic_from_coupling(spec, consts, t); };
    } else {
      f = [&](double t) { return fermionic_reciprocal(spec, consts, t); };
    }
    const ComplexSeries series{g, evaluate_masked(f, g)};
    const json params = {{"kappa", mode.kappa}, {"omega0", mode.omega0},
                         {"K", K},              {"alpha", pair_json(consts.alpha)},
                         {"beta", pair_json(consts.beta)},
                         {"quantity", quantity}};
    std::ostringstream os;
    emit_series(output.format, params, series, os);
    return os.str();
  }
};

struct MultiFlags {
  double K1 = 0.0, K2 = 0.0, K1p = 0.0, K2p = 0.0;

  void add_to(CLI::App* sub) {
    sub->add_option("--K1", K1, "first diagonal coupling");
    sub->add_option("--K2", K2, "second diagonal coupling");
    sub->add_option("--K1p", K1p, "first off-diagonal coupling");
    sub->add_option("--K2p", K2p, "second off-diagonal coupling");
  }

  MultiKSpec spec(const OscillatorSpec& base) const {
    MultiKSpec s{base, K1, K2, K1p, K2p};
    s.validate();
    return s;
  }

  json params() const {
    return {{"K1", K1}, {"K2", K2}, {"K1p", K1p}, {"K2p", K2p}};
  }
};

struct EvalMultiCommand {
  ModeFlags mode;
  GridFlags grid;
  Output output;
  MultiFlags k;
  std::string quantity = "w";

  void add_to(CLI::App* sub) {
    mode.add_to(sub);
    grid.add_to(sub);
    output.add_to(sub);
    k.add_to(sub);
    sub->add_option("--quantity", quantity,
                    "w (gauge-restored mode) or z (gauge-free mode)")
        ->check(CLI::IsMember({"w", "z"}));
  }

  std::string execute() const {
    const MultiKSpec spec = k.spec(mode.base());
    const ModeConstants consts = mode.constants();
    const TimeGrid g = grid.grid();
    const bool gauge = quantity == "w";
    const ComplexSeries series{
        g, evaluate_masked(
               [&](double t) {
                 const cplx z = z_mode(spec, consts, t);
                 return gauge ? w_from_z(spec, z, t) : z;
               },
               g)};
    json params = {{"kappa", mode.kappa}, {"omega0", mode.omega0}};
    params.update(k.params());
    params["alpha"] = pair_json(consts.alpha);
    params["beta"] = pair_json(consts.beta);
    params["quantity"] = quantity;
    std::ostringstream os;
    emit_series(output.format, params, series, os);
    return os.str();
  }
};

struct VerifyCommand {
  ModeFlags mode;
  GridFlags grid;
  Output output;
  MultiFlags k;
  double K = 0.0;
  double tol = 1e-8;
  CLI::App* sub = nullptr;
  bool passed = true;

  void add_to(CLI::App* s) {
    sub = s;
    mode.add_to(s);
    grid.add_to(s);
    output.add_to(s, false);
    k.add_to(s);
    s->add_option("--K", K, "coupling constant (single-K verification)");
    s->add_option("--tol", tol, "pass threshold for max_rel")
        ->check(CLI::PositiveNumber);
  }

  bool multi() const {
    for (const char* name : {"--K1", "--K2", "--K1p", "--K2p"}) {
      if (sub->count(name) > 0) return true;
    }
    return false;
  }

  template <class BasisFn>
  static json term_entry(const char* name, const CoeffFunction& coeff,
                         BasisFn&& basis, const TimeGrid& g) {
    json entry = {{"name", name}};
    // probe first: ode_residual wraps errors with the grid point
    try {
      basis(g.t0());
    } catch (const DegenerateParameterError& e) {
      entry["skipped"] = e.what();
      return entry;
    } catch (const Error&) {
    }
    entry.update(report_json(ode_residual(coeff, basis, g)));
    return entry;
  }

  std::string execute() {
    const OscillatorSpec base = mode.base();
    const ModeConstants consts = mode.constants();
    if (multi() && sub->count("--K") > 0) {
      throw InvalidArgument("--K: cannot be combined with --K1/--K2/--K1p/--K2p");
    }
    const TimeGrid plain = grid.grid();
    const TimeGrid g(plain.t0(), plain.t1(), plain.size(),
                     {SingularityMask(base)});
    CoeffFunction coeff;
    JetFunction solution;
    json params = {{"kappa", mode.kappa}, {"omega0", mode.omega0}};
    json terms = json::array();
    std::optional<ResidualReport> gauge;
    // spec objects must outlive the closures
    std::optional<SingleKSpec> single;
    std::optional<MultiKSpec> multi_spec;
    if (multi()) {
      multi_spec = k.spec(base);
      const MultiKSpec& s = *multi_spec;
      params.update(k.params());
      coeff = [&s](double t) { return coeff_Z(s, Component::bosonic, t); };
      solution = [&s, consts](double t) { return z_mode_jet(s, consts, t); };
      terms.push_back(term_entry(
          "first", coeff, [&s](double t) { return z_basis_jet(s, Basis::first, t); }, g));
      terms.push_back(term_entry(
          "second", coeff,
          [&s](double t) { return z_basis_jet(s, Basis::second, t); }, g));
      gauge = gauge_residual(s, consts, g);
    } else {
      single = SingleKSpec{base, K};
      single->validate();
      const SingleKSpec& s = *single;
      params["K"] = K;
      coeff = [&s](double t) { return coeff_bosonic(s, t); };
      solution = [&s, consts](double t) { return bosonic_mode_jet(s, consts, t); };
      terms.push_back(term_entry(
          "first", coeff,
          [&s](double t) { return bosonic_basis_jet(s, Basis::first, t); }, g));
      terms.push_back(term_entry(
          "second", coeff,
          [&s](double t) { return bosonic_basis_jet(s, Basis::second, t); }, g));
    }
    params["alpha"] = pair_json(consts.alpha);
    params["beta"] = pair_json(consts.beta);

    const ResidualReport rep = ode_residual(coeff, solution, g);
    double max_rel = rep.max_rel;
    double max_abs = rep.max_abs;
    double argmax = rep.argmax_t;
    if (gauge && gauge->max_rel > max_rel) {
      max_rel = gauge->max_rel;
      argmax = gauge->argmax_t;
    }
    if (gauge) max_abs = std::max(max_abs, gauge->max_abs);

    json oracle;
    try {
      const SeriesDifference d = oracle_agreement(coeff, solution, g);
      oracle = {{"max_abs_diff", number(d.max_abs_diff)},
                {"max_rel_diff", number(d.max_rel_diff)}};
    } catch (const NumericalFailure& e) {
      oracle = {{"error", e.what()}};
    }

    passed = max_rel <= tol;
    json report = {{"max_abs", number(max_abs)},
                   {"max_rel", number(max_rel)},
                   {"argmax_t", number(argmax)},
                   {"tol", tol},
                   {"pass", passed},
                   {"mode", report_json(rep)},
                   {"terms", terms}};
    if (gauge) report["gauge"] = report_json(*gauge);
    report["oracle"] = oracle;
    const json doc = {{"params", params}, {"grid", grid_json(g)}, {"report", report}};
    return doc.dump(2) + "\n";
  }
};

struct FigureCommand {
  std::string name;
  Output output;
  int nt = 0;
  int nK = 0;

  void add_to(CLI::App* sub) {
    const auto names = figure_names();
    sub->add_option("name", name, "fig1 ... fig9")
        ->required()
        ->check(CLI::IsMember(names));
    output.add_to(sub);
    sub->add_option("--nt", nt, "time samples (default per preset)")
        ->check(CLI::Range(2, 10'000'000));
    sub->add_option("--nK", nK, "K samples for fig1/fig2 (default 41)")
        ->check(CLI::Range(2, 100'000));
  }

  std::string execute() const {
    const Table t = figure_dataset(name, nt, nK);
    std::ostringstream os;
    if (output.format == "csv") {
      write_csv(t, os);
    } else {
      json doc = {{"params", {{"figure", name}}}};
      doc.update(table_json(t));
      os << doc.dump(2) << '\n';
    }
    return os.str();
  }
};

struct SchumannCommand {
  Output output;
  double Q = 1.0;
  double omega0 = 1.0;

  void add_to(CLI::App* sub) {
    output.add_to(sub);
    sub->add_option("--Q", Q, "cavity quality factor")
        ->required()
        ->check(CLI::PositiveNumber);
    sub->add_option("--omega0", omega0, "unshifted frequency")
        ->check(CLI::PositiveNumber);
  }

  std::string execute() const {
    const cplx w2 = schumann_shift({Q, omega0});
    std::ostringstream os;
    if (output.format == "csv") {
      os << "re,im\n"
         << format_number(w2.real()) << ',' << format_number(w2.imag()) << '\n';
    } else {
      const json doc = {{"params", {{"Q", Q}, {"omega0", omega0}}},
                        {"value", pair_json(w2)}};
      os << doc.dump(2) << '\n';
    }
    return os.str();
  }
};

struct WaveguideCommand {
  Output output;
  GridFlags grid{0.0, 1.4, 500};
  int kappa = 1;
  double k0 = 1.0;
  double K = 0.0;

  void add_to(CLI::App* sub) {
    output.add_to(sub);
    grid.add_to(sub, "--x0", "--x1");
    sub->add_option("--kappa", kappa, "branch, +1 or -1")
        ->check(CLI::IsMember({-1, 1}));
    sub->add_option("--k0", k0, "vacuum wavenumber")->check(CLI::PositiveNumber);
    sub->add_option("--K", K, "coupling constant");
  }

  std::string execute() const {
    const WaveguideSpec spec{k0, K, branch_from_int(kappa)};
    spec.validate();
    const TimeGrid g = grid.grid("--x1");
    Table t{{"x", "nb_re", "nb_im", "nf_re", "nf_im"}, {}};
    for (int i = 0; i < g.size(); ++i) {
      const double x = g.at(i);
      try {
        const IndexProfiles p = waveguide_profiles(spec, x);
        t.rows.push_back({x, p.n_b_sq.real(), p.n_b_sq.imag(), p.n_f_sq.real(),
                          p.n_f_sq.imag()});
      } catch (const SingularityError&) {
        t.rows.push_back({x, kNaN, kNaN, kNaN, kNaN});
      }
    }
    std::ostringstream os;
    if (output.format == "csv") {
      write_csv(t, os);
    } else {
      json doc = {{"params", {{"kappa", kappa}, {"k0", k0}, {"K", K}}},
                  {"grid", grid_json(g)}};
      doc.update(table_json(t));
      os << doc.dump(2) << '\n';
    }
    return os.str();
  }
};

struct ScarfCommand {
  Output output;
  double a = 1.0;
  std::string s = "0";
  std::string lambda = "0";
  std::string alpha = "1,0";
  std::string beta = "0,0";
  std::optional<double> x0, x1;
  int n = 500;

  void add_to(CLI::App* sub) {
    output.add_to(sub);
    sub->add_option("--a", a, "lattice parameter")->check(CLI::PositiveNumber);
    sub->add_option("--s", s, "potential parameter as re,im");
    sub->add_option("--lambda", lambda, "spectral parameter as re,im");
    sub->add_option("--alpha", alpha, "first constant as re,im");
    sub->add_option("--beta", beta, "second constant as re,im");
    sub->add_option("--x0", x0, "window start (default 1e-3*a)");
    sub->add_option("--x1", x1, "window end (default a/2)");
    sub->add_option("--n", n, "number of grid points")
        ->check(CLI::Range(2, 50'000'000));
  }

  std::string execute() const {
    const ScarfSpec spec{a, parse_complex("--s", s),
                         parse_complex("--lambda", lambda)};
    spec.validate();
    const ModeConstants consts{parse_complex("--alpha", alpha),
                               parse_complex("--beta", beta)};
    if (consts.alpha == 0.0 && consts.beta == 0.0) {
      throw InvalidArgument("--alpha/--beta: both constants are zero");
    }
    const double r = scarf_exclusion_radius(spec);
    const double lo = x0.value_or(r);
    const double hi = x1.value_or(0.5 * a);
    if (!(lo > 0.0) || !(hi <= 0.5 * a)) {
      throw InvalidArgument("--x0/--x1: window must lie in (0, a/2]");
    }
    const TimeGrid g = GridFlags{lo, hi, n}.grid("--x1");
    std::vector<cplx> values;
    values.reserve(static_cast<std::size_t>(g.size()));
    for (int i = 0; i < g.size(); ++i) {
      values.push_back(scarf_solution(spec, consts, g.at(i)));
    }
    const ComplexSeries series{g, values};
    std::ostringstream os;
    if (output.format == "csv") {
      write_csv(series, os);
      return os.str();
    }
    json doc = {{"params",
                 {{"a", a},
                  {"s", pair_json(spec.s)},
                  {"lambda", pair_json(spec.lambda)},
                  {"alpha", pair_json(consts.alpha)},
                  {"beta", pair_json(consts.beta)}}},
                {"grid", grid_json(g)}};
    json vals = json::array();
    for (const cplx& v : values) vals.push_back(pair_json(v));
    doc["values"] = vals;
    // residual only where the derivatives stay bounded
    const double rlo = std::max(lo, r);
    const double rhi = std::min(hi, 0.5 * a - r);
    if (rlo < rhi) {
      doc["report"] = report_json(
          scarf_residual(spec, consts, TimeGrid(rlo, rhi, n)));
    }
    os << doc.dump(2) << '\n';
    return os.str();
  }
};

int fail(std::ostream& err, int code, const std::string& msg) {
  err << "error: " << msg << '\n';
  return code;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, clean(v));
  return std::string(buf, res.ptr);
}

void write_csv(const ComplexSeries& series, std::ostream& os) {
  series.validate();
  os << "t,re,im\n";
  for (int i = 0; i < series.grid.size(); ++i) {
    const cplx v = series.values[static_cast<std::size_t>(i)];
    os << format_number(series.grid.at(i)) << ',' << format_number(v.real())
       << ',' << format_number(v.imag()) << '\n';
  }
}

void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_number(row[i]);
    }
    os << '\n';
  }
}

std::vector<std::string> figure_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5",
          "fig6", "fig7", "fig8", "fig9"};
}

Table figure_dataset(std::string_view name, int nt, int nK) {
  const auto names = figure_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw InvalidArgument("unknown figure preset '" + std::string(name) + "'");
  }
  const int fig = name.back() - '0';
  const OscillatorSpec base;  // ω₀ = 1, κ = +1
  const ModeConstants half{0.5, 0.5};
  auto mode_at = [&](double K, double t) {
    const SingleKSpec spec{base, K};
    // at K = 0 the second basis function does not exist
    const ModeConstants consts = K == 0.0 ? ModeConstants{0.5, 0.0} : half;
    return bosonic_mode(spec, consts, t);
  };
  auto masked = [](const std::function<cplx()>& f) {
    try {
      return f();
    } catch (const SingularityError&) {
      return cplx(kNaN, kNaN);
    } catch (const ZeroDivisionError&) {
      return cplx(kNaN, kNaN);
    }
  };

  Table table;
  if (fig <= 2) {
    const TimeGrid tg(0.0, 10.0, nt > 0 ? nt : 1001);
    const TimeGrid kg(0.0, 4.0, nK > 0 ? nK : 41);
    table.columns = {"t", "K", "re", "im"};
    for (int j = 0; j < kg.size(); ++j) {
      const double K = kg.at(j);
      for (int i = 0; i < tg.size(); ++i) {
        const double t = tg.at(i);
        const cplx v = masked([&] { return mode_at(K, t); });
        table.rows.push_back({t, K, v.real(), v.imag()});
      }
    }
    return table;
  }

  const TimeGrid tg(0.0, 20.0, nt > 0 ? nt : 2001);
  const double K = (fig == 3 || fig == 4 || fig == 8) ? 0.01 : 2.0;
  if (fig <= 7) {
    table.columns = {"t", "re", "im"};
    for (int i = 0; i < tg.size(); ++i) {
      const double t = tg.at(i);
      cplx v = masked([&] { return mode_at(K, t); });
      if (fig == 6 && !std::isnan(v.real())) {
        v = {std::clamp(v.real(), -0.5, 0.5), std::clamp(v.imag(), -0.5, 0.5)};
      }
      table.rows.push_back({t, v.real(), v.imag()});
    }
    return table;
  }

  table.columns = {"t", "re", "im", "ref"};
  const SingularityMask mask(base);
  for (int i = 0; i < tg.size(); ++i) {
    const double t = tg.at(i);
    const cplx v = masked([&] {
      const cplx w = mode_at(K, t);
      if (w == 0.0) throw ZeroDivisionError("node");
      return -1.0 / w;
    });
    const double ref = mask.excludes(t) ? kNaN : -1.0 / std::cos(t);
    table.rows.push_back({t, v.real(), v.imag(), ref});
  }
  return table;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Closed-form K-modes of the extended oscillator", "kmodes"};
  app.require_subcommand(1);

  EvalCommand eval;
  EvalMultiCommand eval_multi;
  VerifyCommand verify;
  FigureCommand figure;
  SchumannCommand schumann;
  WaveguideCommand waveguide;
  ScarfCommand scarf;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a single-K mode on a grid");
  eval.add_to(eval_cmd);
  auto* multi_cmd = app.add_subcommand("eval-multi", "evaluate a multi-K mode on a grid");
  eval_multi.add_to(multi_cmd);
  auto* verify_cmd = app.add_subcommand("verify", "certify a closed form against its ODE");
  verify.add_to(verify_cmd);
  auto* figure_cmd = app.add_subcommand("figure", "write a figure preset dataset");
  figure.add_to(figure_cmd);
  auto* app_cmd = app.add_subcommand("app", "application calculators");
  app_cmd->require_subcommand(1);
  auto* schumann_cmd = app_cmd->add_subcommand("schumann", "cavity eigenfrequency shift");
  schumann.add_to(schumann_cmd);
  auto* waveguide_cmd = app_cmd->add_subcommand("waveguide", "index profiles");
  waveguide.add_to(waveguide_cmd);
  auto* scarf_cmd = app_cmd->add_subcommand("scarf", "Scarf crystal solution");
  scarf.add_to(scarf_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, kInvalidInput, e.what());
  }

  try {
    Output* target = nullptr;
    std::string data;
    if (eval_cmd->parsed()) {
      data = eval.execute();
      target = &eval.output;
    } else if (multi_cmd->parsed()) {
      data = eval_multi.execute();
      target = &eval_multi.output;
    } else if (verify_cmd->parsed()) {
      data = verify.execute();
      target = &verify.output;
    } else if (figure_cmd->parsed()) {
      data = figure.execute();
      target = &figure.output;
    } else if (schumann_cmd->parsed()) {
      data = schumann.execute();
      target = &schumann.output;
    } else if (waveguide_cmd->parsed()) {
      data = waveguide.execute();
      target = &waveguide.output;
    } else {
      data = scarf.execute();
      target = &scarf.output;
    }
    finish_output(*target, data, out);
    if (verify_cmd->parsed() && !verify.passed) {
      err << "verification failed: max_rel above --tol\n";
      return kVerificationFailed;
    }
    return kOk;
  } catch (const InvalidArgument& e) {
    return fail(err, kInvalidInput, e.what());
  } catch (const DomainError& e) {
    return fail(err, kInvalidInput, e.what());
  } catch (const DegenerateParameterError& e) {
    return fail(err, kInvalidInput, e.what());
  } catch (const SingularityError& e) {
    return fail(err, kInvalidInput, e.what());
  } catch (const std::exception& e) {
    return fail(err, kNumericalFailure, e.what());
  }
}

}  // namespace kmodes::cli
