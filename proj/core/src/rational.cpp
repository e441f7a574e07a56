#include "xsmoo/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace xsmoo {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_rational(std::string_view text) {
  throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_rational(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) bad_rational(text);
    value = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac))) bad_rational(text);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class digits(std::string(whole) + std::string(frac.empty() ? "" : frac), 10);
    value = Rational(digits, scale);
  } else {
    if (!all_digits(body)) bad_rational(text);
    value = Rational(mpz_class(std::string(body), 10));
  }
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

mpz_class floor(const Rational& value) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Rational pow2(long exponent) {
  mpz_class p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(p);
  return Rational(mpz_class(1), p);
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace xsmoo
