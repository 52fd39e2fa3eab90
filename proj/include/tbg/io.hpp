#pragma once

#include <cstddef>
#include <string>

#include "tbg/group.hpp"
#include "tbg/laurent.hpp"
#include "tbg/reduction.hpp"
#include "tbg/series.hpp"
#include "tbg/successor.hpp"

namespace tbg {

/// Text form "lo=<low degree>;c_lo,...,c_hi" with ascending coefficients.
/// The zero polynomial prints as "lo=0;0".
std::string format_poly(const LaurentPoly& F);

/// Parses the text form; spaces are ignored, leading and trailing zero
/// coefficients are trimmed. Throws std::invalid_argument on malformed input.
LaurentPoly parse_poly(const std::string& text);

/// Class tag with the sign of the generalized family, e.g. "S+" or "-U-2".
std::string format_class(const NClass& cls);

std::string format_ball_json(const BallTable& table);
std::string format_ball_csv(const BallTable& table);

std::string format_series_json(const SeriesResult& result);

/// One line per rewrite step: rule, span, word before and after, length
/// before and after.
std::string format_trace_line(const RewriteStep& step);

std::string enumerate_csv_header();
std::string format_enumerate_row(std::size_t index, const EnumeratedWord& word,
                                 const Vec2& x);

}  // namespace tbg
