#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "argl/lvalues.hpp"

namespace argl {

/// Locale-independent decimal with 15 significant digits.
std::string format_decimal(double x);

/// CSV with header q,j,re_L,im_L,arg,branch_residual; one row per
/// non-principal character in j order. `comments` are written first as "# " lines.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep, const std::vector<std::string>& comments = {});

/// Inverse of write_sweep_csv; '#' lines are skipped.
SweepResult read_sweep_csv(std::istream& in);

/// Split on commas; throws DomainError on malformed numbers.
std::vector<double> parse_decimal_list(std::string_view text);

}  // namespace argl
