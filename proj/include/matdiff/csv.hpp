#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "matdiff/sde.hpp"

namespace matdiff {

/// %.17g: enough digits to round-trip any float64.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// "x1_1,x1_2,...": upper-triangle entry names, 1-based.
inline std::vector<std::string> upper_triangle_names(std::size_t dim, std::string_view prefix = "x") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j)
      names.push_back(std::string(prefix) + std::to_string(i + 1) + "_" + std::to_string(j + 1));
  return names;
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

/// One row per grid point: time, then the d(d+1)/2 upper-triangle entries.
inline void write_solution_csv(std::ostream& out, const TimeGrid& grid, const std::vector<SymmetricMatrix>& states,
                               std::string_view prefix = "x") {
  const std::size_t d = states.front().dim();
  std::vector<std::string> header{"time"};
  for (auto& name : upper_triangle_names(d, prefix)) header.push_back(std::move(name));
  write_csv_row(out, header);
  for (std::size_t k = 0; k < states.size(); ++k) {
    std::vector<std::string> row{format_double(grid.time(k))};
    for (double v : states[k].upper_triangle()) row.push_back(format_double(v));
    write_csv_row(out, row);
  }
}

inline void write_solution_csv(std::ostream& out, const PathSolution& sol) {
  write_solution_csv(out, sol.grid, sol.states);
}

}  // namespace matdiff
