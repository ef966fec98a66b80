#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace flatsurf {

using Q = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "p/q" or "p"; throws ParseError.
Q parse_rational(const std::string& s);
std::string to_string(const Q& x);

BigInt floor_q(const Q& x);
// x mod w in [0, w), w > 0.
Q mod_q(const Q& x, const Q& w);

}  // namespace flatsurf
