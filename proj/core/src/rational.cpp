#include "pcsn/rational.hpp"

#include "pcsn/errors.hpp"

#include <cctype>

namespace pcsn {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

} // namespace

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw DomainError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
      throw DomainError("malformed rational literal: " + text);
    mpz_class num_z(num, 10), den_z(den, 10);
    if (den_z == 0) throw DomainError("zero denominator: " + text);
    Rat r(num_z, den_z);
    r.canonicalize();
    return r;
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!is_integer_token(whole) || frac.empty() || !is_integer_token(frac) ||
        frac[0] == '-' || frac[0] == '+')
      throw DomainError("malformed decimal literal: " + text);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(whole + frac, 10);
    Rat r(digits, scale);
    r.canonicalize();
    return r;
  }
  if (!is_integer_token(text)) throw DomainError("malformed rational literal: " + text);
  return Rat(mpz_class(text, 10));
}

std::string rat_to_string(const Rat& value) {
  mpz_class den = value.get_den();
  unsigned long twos = 0, fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 2);
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), 5);
    ++fives;
  }
  if (den != 1) return rat_to_fraction(value);
  if (value.get_den() == 1) return value.get_num().get_str();

  // Scale to an integer over 10^k with k = max(twos, fives).
  unsigned long k = twos > fives ? twos : fives;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, k);
  mpz_class scaled = value.get_num() * (pow10 / value.get_den());
  bool neg = scaled < 0;
  mpz_class mag = neg ? mpz_class(-scaled) : scaled;
  std::string digits = mag.get_str();
  if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
  digits.insert(digits.size() - k, ".");
  return (neg ? "-" : "") + digits;
}

std::string rat_to_fraction(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

} // namespace pcsn
