#pragma once

#include <string>
#include <vector>

#include "crsim/scenario.hpp"

namespace crsim {

// Renders one line chart: rows grouped by `series` (one polyline each),
// x from `x_col`, y the mean of `y_col` over rows sharing (series, x).
// NaN y values are dropped; an empty selection throws
// std::invalid_argument. Output is self-contained SVG markup and is
// byte-identical for identical inputs.
std::string emit_plot(const std::vector<ResultRow>& rows, const std::string& x_col,
                      const std::string& y_col, const std::string& series_col);

}  // namespace crsim
