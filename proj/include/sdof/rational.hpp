#pragma once

#include <boost/rational.hpp>

#include <string>
#include <utility>

namespace sdof {

// Exact rational arithmetic for state fractions, d.o.f. pairs and region
// geometry. int64 components are ample at desk scale; boost::rational keeps
// values normalized after every operation.
using Rat = boost::rational<long long>;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

// Accepts "3/4", "-1/2", "0.25", "2". Decimal forms are converted exactly in
// base 10. Throws SdofError(ParseError) on anything else.
Rat parse_rational(const std::string& text);

// "3/4" when the denominator is not 1, plain "2" otherwise.
std::string format_rational(const Rat& r);

double rat_to_double(const Rat& r);

struct RatPoint {
  Rat x{0};
  Rat y{0};
  friend bool operator==(const RatPoint&, const RatPoint&) = default;
};

inline RatPoint swapped(const RatPoint& p) { return {p.y, p.x}; }

}  // namespace sdof
