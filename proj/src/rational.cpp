#include "abcprop/rational.hpp"

#include "abcprop/errors.hpp"

namespace abcprop {

Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_fraction(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw InputError("malformed rational '" + text + "'");
  mpz_class d(den[0] == '+' ? den.substr(1) : den);
  if (d == 0) throw InputError("zero denominator in '" + text + "'");
  Rational q(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
  q.canonicalize();
  return q;
}

}  // namespace abcprop
