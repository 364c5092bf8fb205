#pragma once

// Text forms shared by the CLI and configuration files.
//
//   variety   r,t:a1,...,ar          2,2:0,1  is X_3(0,1)
//   bundle    lambda,mu              3,4
//   rational  p, p/q or a decimal    7/2, 3.25, 1e3
//   point     [q0:...:q_{t-1}];[y0:...:y_r]
//   grid      comma list of rationals, or geom:start:ratio:count,
//             or lin:start:step:count

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "hk/geometry.hpp"
#include "hk/heights.hpp"

namespace hk {

// All parsers throw ParseError with a message naming the offending text.
HKVariety parse_variety(std::string_view text);
LineBundleClass parse_bundle(std::string_view text);
mpq_class parse_rational(std::string_view text);
HKRationalPoint parse_point(std::string_view text);
std::vector<mpq_class> parse_grid(std::string_view text);

std::string format_rational(const mpq_class& q);

}  // namespace hk
