#pragma once

#include <string>
#include <string_view>

#include "omcool/table.hpp"

namespace omcool {

/// Render a table as a standalone SVG document.
///
/// Two axes: heatmap of `column` with one rectangle per grid point, color
/// normalized to the column's finite min/max. One axis: line chart of
/// `column`, or of every n_f_* (else p_e_*) column when `column` is empty,
/// with one series per distinct value of the first text column if any.
/// NaN cells render as gray cells or gaps. Throws DomainError for an empty
/// table or a table with no axes.
std::string render_svg(const ResultTable& table, std::string_view column = {});

}  // namespace omcool
