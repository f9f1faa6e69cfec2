#include "sdof/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "sdof/error.hpp"

namespace sdof {

namespace {

long long parse_int(const std::string& s) {
  if (s.empty()) fail(Errc::ParseError, "empty integer");
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    fail(Errc::ParseError, "bad integer '" + s + "'");
  }
  if (pos != s.size()) fail(Errc::ParseError, "trailing characters in '" + s + "'");
  return v;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string s = text;
  // trim
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) fail(Errc::ParseError, "empty rational");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    long long num = parse_int(s.substr(0, slash));
    long long den = parse_int(s.substr(slash + 1));
    if (den == 0) fail(Errc::ParseError, "zero denominator in '" + text + "'");
    return Rat(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty()) fail(Errc::ParseError, "bad decimal '" + text + "'");
    bool neg = !head.empty() && head.front() == '-';
    if (!head.empty() && (head.front() == '-' || head.front() == '+')) head.erase(head.begin());
    long long ipart = head.empty() ? 0 : parse_int(head);
    long long den = 1;
    for (char c : frac) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        fail(Errc::ParseError, "bad decimal '" + text + "'");
      if (den > 1'000'000'000'000'000LL)
        fail(Errc::ParseError, "decimal too long '" + text + "'");
      den *= 10;
    }
    long long fpart = parse_int(frac);
    Rat r = Rat(ipart) + Rat(fpart, den);
    return neg ? -r : r;
  }
  return Rat(parse_int(s));
}

std::string format_rational(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double rat_to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace sdof
