#include "cclass/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cclass {

std::string to_string(const Q& q) { return q.get_str(); }

Q parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  auto slash = body.find('/');
  bool ok = slash == std::string_view::npos
                ? digits(body)
                : digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  if (!ok) throw std::invalid_argument("not a rational: " + std::string(text));
  Q q(std::string(text), 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  q.canonicalize();
  return q;
}

Q factorial(int k) {
  if (k < 0) throw std::invalid_argument("factorial of a negative integer");
  Z r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return Q(r);
}

Q binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Q(r);
}

}  // namespace cclass
