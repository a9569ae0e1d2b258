#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kmodes/verifier.hpp"

namespace kmodes::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInvalidInput = 2,
  kNumericalFailure = 3,
};

/// Entry point behind the executable. `args` excludes the program name.
/// Data goes to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Shortest round-trip decimal form; −0 prints as 0, NaN as "nan".
std::string format_number(double v);

/// `t,re,im` with LF line endings.
void write_csv(const ComplexSeries& series, std::ostream& os);

/// Rectangular numeric table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
void write_csv(const Table& table, std::ostream& os);

std::vector<std::string> figure_names();

/// Dataset of a figure preset (ω₀ = 1, κ = +1, α = β = ½). nt / nK = 0
/// selects the preset default. Masked points are NaN.
Table figure_dataset(std::string_view name, int nt = 0, int nK = 0);

}  // namespace kmodes::cli
