#include "tbg/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tbg {

namespace {

long long parse_int(const std::string& text) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer in polynomial text: '" + text + "'");
  }
  if (used != text.size())
    throw std::invalid_argument("bad integer in polynomial text: '" + text + "'");
  return value;
}

template <typename T>
void write_array(std::ostringstream& os, const std::vector<T>& values) {
  os << "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ", ";
    os << values[i];
  }
  os << "]";
}

}  // namespace

std::string format_poly(const LaurentPoly& F) {
  if (F.is_zero()) return "lo=0;0";
  const int lo = *F.lowest_degree();
  const int hi = *F.highest_degree();
  std::ostringstream os;
  os << "lo=" << lo << ";";
  for (int d = lo; d <= hi; ++d) {
    if (d > lo) os << ",";
    os << F.coeff(d);
  }
  return os.str();
}

LaurentPoly parse_poly(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.rfind("lo=", 0) != 0)
    throw std::invalid_argument("polynomial text must start with 'lo=': '" + text + "'");
  const std::size_t semi = s.find(';');
  if (semi == std::string::npos)
    throw std::invalid_argument("polynomial text is missing ';': '" + text + "'");
  const long long lo = parse_int(s.substr(3, semi - 3));
  const std::string body = s.substr(semi + 1);
  if (body.empty())
    throw std::invalid_argument("polynomial text has no coefficients: '" + text + "'");
  LaurentPoly F;
  long long degree = lo;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    const std::string piece =
        comma == std::string::npos ? body.substr(start) : body.substr(start, comma - start);
    F.set_coeff(static_cast<int>(degree), parse_int(piece));
    ++degree;
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return F;
}

std::string format_class(const NClass& cls) {
  std::string out;
  if (cls.negated) out += "-";
  out += class_tag_name(cls.tag);
  return out;
}

std::string format_ball_json(const BallTable& table) {
  std::ostringstream os;
  os << "{\"k\": " << table.k << ", \"radius\": " << table.radius
     << ", \"sphere_sizes\": ";
  write_array(os, table.sphere_sizes);
  os << ", \"ball_sizes\": ";
  write_array(os, table.ball_sizes);
  os << "}";
  return os.str();
}

std::string format_ball_csv(const BallTable& table) {
  std::ostringstream os;
  os << "radius,sphere,ball\n";
  for (int r = 0; r <= table.radius; ++r)
    os << r << "," << table.sphere_sizes[static_cast<std::size_t>(r)] << ","
       << table.ball_sizes[static_cast<std::size_t>(r)] << "\n";
  return os.str();
}

std::string format_series_json(const SeriesResult& result) {
  std::ostringstream os;
  os << "{\"k\": " << result.k << ", \"numerator\": ";
  write_array(os, result.series.numerator().coefficients_ascending());
  os << ", \"denominator\": ";
  write_array(os, result.series.denominator().coefficients_ascending());
  os << ", \"verified_radius\": " << result.verified_radius << ", \"coefficients\": ";
  write_array(os, result.coefficients);
  os << "}";
  return os.str();
}

std::string format_trace_line(const RewriteStep& step) {
  std::ostringstream os;
  os << rule_name(step.rule) << " span=[" << step.span_low << "," << step.span_high
     << "] " << format_poly(step.before) << " -> " << format_poly(step.after)
     << " L=" << step.len_before << "->" << step.len_after;
  return os.str();
}

std::string enumerate_csv_header() { return "index,poly,class,type,length,x0,x1"; }

std::string format_enumerate_row(std::size_t index, const EnumeratedWord& word,
                                 const Vec2& x) {
  std::ostringstream os;
  os << index << ",\"" << format_poly(word.poly) << "\"," << format_class(word.cls.cls)
     << "," << type_tag_name(word.cls.type) << "," << word.length << "," << x.x0 << ","
     << x.x1;
  return os.str();
}

}  // namespace tbg
