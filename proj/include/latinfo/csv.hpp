#pragma once

#include <iosfwd>
#include <string>

#include "latinfo/sample_matrix.hpp"

namespace latinfo {

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

/// Comma-separated, header row required, no quoting, no blank lines.
/// Errors are InputError with 1-based line and column diagnostics.
SampleMatrix parse_csv(std::istream& in, const std::string& source = "<input>");
SampleMatrix read_csv(const std::string& path);

void write_csv(std::ostream& out, const SampleMatrix& data);

}  // namespace latinfo
