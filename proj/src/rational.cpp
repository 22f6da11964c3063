#include "fairassign/rational.hpp"

#include <cctype>

namespace fairassign {

namespace {

bool parse_integer(const std::string& text, mpz_class* out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  if (mpz_set_str(out->get_mpz_t(), text.c_str(), 10) != 0) return false;
  return true;
}

}  // namespace

std::optional<Rat> rat_from_string(const std::string& text) {
  const std::size_t slash = text.find('/');
  mpz_class num, den(1);
  if (slash == std::string::npos) {
    if (!parse_integer(text, &num)) return std::nullopt;
  } else {
    if (!parse_integer(text.substr(0, slash), &num)) return std::nullopt;
    if (!parse_integer(text.substr(slash + 1), &den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  Rat value(num, den);
  value.canonicalize();
  return value;
}

std::string rat_to_string(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string rat_to_decimal(const Rat& value, int places) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));

  const bool negative = sgn(value) < 0;
  mpz_class num = abs(value.get_num()) * scale;
  const mpz_class den = value.get_den();

  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
              den.get_mpz_t());

  // Round half to even on the exact remainder.
  const mpz_class twice = rem * 2;
  if (twice > den || (twice == den && mpz_odd_p(quot.get_mpz_t()))) {
    quot += 1;
  }

  mpz_class whole, frac;
  mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), quot.get_mpz_t(),
              scale.get_mpz_t());

  std::string frac_str = frac.get_str();
  frac_str.insert(frac_str.begin(), places - frac_str.size(), '0');

  std::string out;
  if (negative && (whole != 0 || frac != 0)) out += "-";
  out += whole.get_str();
  if (places > 0) {
    out += ".";
    out += frac_str;
  }
  return out;
}

}  // namespace fairassign
