#pragma once

// Text formats.
//
// Model files hold one `key = value` pair per line; `#` starts a comment.
//
//   n = 12                 # required, integer >= 1
//   p = 0.4                # required, 0 < p < 1
//   term = {2, 0.3}        # repeatable: {m, alpha}
//   pair_sum_alpha = 0.1   # optional
//
// Vectors are either one value per line or a JSON array.

#include <iosfwd>
#include <string>
#include <vector>

#include "vwergm/model.hpp"

namespace vwergm {

ModelSpec parse_spec(std::istream& in, const std::string& origin = "<input>");
ModelSpec read_spec_file(const std::string& path);
void write_spec(std::ostream& out, const ModelSpec& spec);
std::string format_spec(const ModelSpec& spec);

std::vector<double> parse_vector(std::istream& in, const std::string& origin = "<input>");
std::vector<double> read_vector_file(const std::string& path);
void write_vector_csv(std::ostream& out, const std::vector<double>& v);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace vwergm
