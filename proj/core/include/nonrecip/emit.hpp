#pragma once

#include "nonrecip/sweep.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nonrecip {

/// CSV header for a sweep along `axis`. Delta sweeps use
///   delta_over_omega_m,T_a,T_c,phi_a_rad,phi_c_rad,tau_a_s,tau_c_s,status
/// other axes prepend a column named after the axis.
[[nodiscard]] std::string csv_header(SweepAxis axis);

/// Writes rows as CSV (17 significant digits, LF endings, NaN as "nan") or
/// as a JSON array of objects with the same field names (NaN as null).
void write_rows(std::ostream& out, const std::vector<SpectrumRow>& rows, OutputFormat format,
                SweepAxis axis = SweepAxis::Delta);

/// write_rows into a file; "-" or an empty path writes to stdout. Throws
/// std::runtime_error if the file cannot be written or `rows` is empty.
void emit(const std::vector<SpectrumRow>& rows, OutputFormat format, const std::string& path,
          SweepAxis axis = SweepAxis::Delta);

/// Parses the JSON emitted by write_rows. Complex amplitudes are not part of
/// the output and come back as NaN.
[[nodiscard]] std::vector<SpectrumRow> parse_rows_json(const std::string& text,
                                                       SweepAxis axis = SweepAxis::Delta);

}  // namespace nonrecip
