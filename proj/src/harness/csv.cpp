#include "gmr/harness/csv.hpp"

#include <charconv>
#include <cmath>

#include "gmr/errors.hpp"
#include "gmr/gexp/expectation.hpp"

namespace gmr::harness {

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<TraceRow> trace_rows(const sp::ProcessOnLattice& X, const sp::DeterministicPath& A,
                                 const sp::LossSpec& loss, const gexp::PathLattice& lattice, double p) {
  std::vector<TraceRow> rows;
  for (int k = X.first_step(); k <= X.last_step(); ++k) {
    const double t = lattice.grid().time(k);
    const auto x = X.at(k);
    TraceRow row;
    row.t = t;
    row.A = A.at(k);
    row.E_l_X = gexp::sup_expectation_of(x, [&](double v) { return loss.l(t, v); });
    row.E_X = gexp::sup_expectation_of(x);
    row.E_absX_p = gexp::sup_expectation_of(x, [p](double v) { return std::pow(std::abs(v), p); });
    rows.push_back(row);
  }
  return rows;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = "t,A,E_l_X,E_X,E_absX_p\n";
  for (const auto& r : rows) {
    out += format_double(r.t) + ',' + format_double(r.A) + ',' + format_double(r.E_l_X) + ',' +
           format_double(r.E_X) + ',' + format_double(r.E_absX_p) + '\n';
  }
  return out;
}

std::string single_row_csv(const std::vector<std::string>& columns, const std::vector<double>& values) {
  if (columns.size() != values.size()) throw PreconditionError("CSV column and value counts differ");
  std::string header;
  std::string line;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    header += (i ? "," : "") + columns[i];
    line += (i ? "," : "") + format_double(values[i]);
  }
  return header + '\n' + line + '\n';
}

}  // namespace gmr::harness
