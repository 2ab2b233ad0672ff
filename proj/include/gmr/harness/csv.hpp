#pragma once

#include <string>
#include <vector>

#include "gmr/gexp/lattice.hpp"
#include "gmr/sp/loss.hpp"
#include "gmr/sp/process.hpp"

namespace gmr::harness {

/// Shortest decimal text that parses back to exactly v.
std::string format_double(double v);

struct TraceRow {
  double t = 0.0;
  double A = 0.0;
  double E_l_X = 0.0;   // E[l(t, X_t)]
  double E_X = 0.0;     // E[X_t]
  double E_absX_p = 0.0;  // E[|X_t|^p]
};

std::vector<TraceRow> trace_rows(const sp::ProcessOnLattice& X, const sp::DeterministicPath& A,
                                 const sp::LossSpec& loss, const gexp::PathLattice& lattice, double p);

/// Header `t,A,E_l_X,E_X,E_absX_p` and one line per row.
std::string trace_csv(const std::vector<TraceRow>& rows);

/// Header line and one line of values.
std::string single_row_csv(const std::vector<std::string>& columns, const std::vector<double>& values);

}  // namespace gmr::harness
