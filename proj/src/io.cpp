#include "vwergm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "vwergm/error.hpp"

namespace vwergm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  const auto h = s.find('#');
  return h == std::string::npos ? s : s.substr(0, h);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& text, const std::string& origin, int line, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    fail(origin, line, "expected a finite number for " + what + ", got '" + t + "'");
  return v;
}

int to_int(const std::string& text, const std::string& origin, int line, const std::string& what) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    fail(origin, line, "expected an integer for " + what + ", got '" + t + "'");
  return v;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(path + ": cannot open file");
  return f;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

ModelSpec parse_spec(std::istream& in, const std::string& origin) {
  std::optional<int> n;
  std::optional<double> p;
  std::optional<double> pair;
  std::vector<CliqueTerm> terms;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string body = trim(strip_comment(raw));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key == "n") {
      if (n) fail(origin, line, "duplicate field 'n'");
      n = to_int(value, origin, line, "n");
    } else if (key == "p") {
      if (p) fail(origin, line, "duplicate field 'p'");
      p = to_double(value, origin, line, "p");
    } else if (key == "pair_sum_alpha") {
      if (pair) fail(origin, line, "duplicate field 'pair_sum_alpha'");
      pair = to_double(value, origin, line, "pair_sum_alpha");
    } else if (key == "term") {
      if (value.size() < 2 || value.front() != '{' || value.back() != '}')
        fail(origin, line, "term must be written as {m, alpha}");
      const std::string inner = value.substr(1, value.size() - 2);
      const auto comma = inner.find(',');
      if (comma == std::string::npos || inner.find(',', comma + 1) != std::string::npos)
        fail(origin, line, "term must be written as {m, alpha}");
      terms.push_back({to_int(inner.substr(0, comma), origin, line, "term order m"),
                       to_double(inner.substr(comma + 1), origin, line, "term weight alpha")});
    } else {
      fail(origin, line, "unknown field '" + key + "'");
    }
  }
  if (!n) throw ParseError(origin + ": missing required field 'n'");
  if (!p) throw ParseError(origin + ": missing required field 'p'");
  try {
    return ModelSpec(*n, *p, terms, pair);
  } catch (const InvalidParameter& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

ModelSpec read_spec_file(const std::string& path) {
  auto f = open_or_throw(path);
  return parse_spec(f, path);
}

void write_spec(std::ostream& out, const ModelSpec& spec) {
  out << "n = " << spec.n() << "\n";
  out << "p = " << format_double(spec.p()) << "\n";
  for (const auto& t : spec.terms()) out << "term = {" << t.m << ", " << format_double(t.alpha) << "}\n";
  if (spec.pair_sum_alpha()) out << "pair_sum_alpha = " << format_double(*spec.pair_sum_alpha()) << "\n";
}

std::string format_spec(const ModelSpec& spec) {
  std::ostringstream os;
  write_spec(os, spec);
  return os.str();
}

std::vector<double> parse_vector(std::istream& in, const std::string& origin) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string t = trim(text);
  std::vector<double> out;
  if (!t.empty() && t.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(origin + ": invalid JSON array: " + e.what());
    }
    if (!j.is_array()) throw ParseError(origin + ": expected a JSON array");
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number()) throw ParseError(origin + ": element " + std::to_string(i) + " is not a number");
      out.push_back(j[i].get<double>());
    }
    return out;
  }
  std::istringstream lines(text);
  std::string raw;
  int line = 0;
  while (std::getline(lines, raw)) {
    ++line;
    const std::string body = trim(strip_comment(raw));
    if (body.empty()) continue;
    out.push_back(to_double(body, origin, line, "vector entry"));
  }
  return out;
}

std::vector<double> read_vector_file(const std::string& path) {
  auto f = open_or_throw(path);
  return parse_vector(f, path);
}

void write_vector_csv(std::ostream& out, const std::vector<double>& v) {
  for (double x : v) out << format_double(x) << "\n";
}

}  // namespace vwergm
