#include "gfrob/scalar.hpp"

#include <cctype>

namespace gfrob {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
  if (p > (std::int64_t{1} << 31)) throw std::invalid_argument("field modulus too large");
  return Field{p};
}

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string s) { return (!s.empty() && s[0] == '+') ? s.substr(1) : s; };
  auto slash = t.find('/');
  mpq_class q;
  if (slash == std::string::npos) {
    if (!valid_int(t)) throw std::invalid_argument("bad rational literal '" + text + "'");
    q = mpq_class(mpz_class(strip_plus(t)));
  } else {
    std::string a = t.substr(0, slash), b = t.substr(slash + 1);
    if (!valid_int(a) || !valid_int(b)) throw std::invalid_argument("bad rational literal '" + text + "'");
    mpz_class den(strip_plus(b));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    q = mpq_class(mpz_class(strip_plus(a)), den);
  }
  return Rational(q);
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

ModP::ModP(std::int64_t v, std::int64_t p) : v_(v), p_(p) {
  if (p_ < 0) throw std::invalid_argument("negative modulus");
  if (p_ > 0) {
    v_ %= p_;
    if (v_ < 0) v_ += p_;
  }
}

std::int64_t ModP::common(std::int64_t p, std::int64_t q) {
  if (p == 0) return q;
  if (q == 0 || p == q) return p;
  throw FieldMismatch("mixed prime fields F" + std::to_string(p) + " and F" + std::to_string(q));
}

ModP& ModP::operator+=(const ModP& o) {
  std::int64_t m = common(p_, o.p_);
  *this = ModP(v_ + o.v_, m);
  return *this;
}

ModP& ModP::operator-=(const ModP& o) {
  std::int64_t m = common(p_, o.p_);
  *this = ModP(v_ - o.v_, m);
  return *this;
}

ModP& ModP::operator*=(const ModP& o) {
  std::int64_t m = common(p_, o.p_);
  if (m == 0) {
    *this = ModP(v_ * o.v_);
    return *this;
  }
  ModP a(v_, m), b(o.v_, m);
  *this = ModP(static_cast<std::int64_t>((static_cast<__int128>(a.v_) * b.v_) % m), m);
  return *this;
}

ModP ModP::inverse() const {
  if (p_ == 0) {
    if (v_ == 1 || v_ == -1) return *this;
    throw std::domain_error("cannot invert integer literal " + std::to_string(v_) + " without a modulus");
  }
  if (v_ == 0) throw std::domain_error("division by zero");
  // extended Euclid
  std::int64_t a = v_, m = p_, x0 = 1, x1 = 0;
  while (m != 0) {
    std::int64_t q = a / m;
    std::int64_t t = a - q * m;
    a = m;
    m = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return ModP(x0, p_);
}

ModP& ModP::operator/=(const ModP& o) {
  std::int64_t m = common(p_, o.p_);
  ModP b = o.p_ == m ? o : ModP(o.v_, m);
  ModP a = p_ == m ? *this : ModP(v_, m);
  *this = a * b.inverse();
  return *this;
}

bool operator==(const ModP& a, const ModP& b) {
  std::int64_t m = ModP::common(a.p_, b.p_);
  if (m == 0) return a.v_ == b.v_;
  return ModP(a.v_, m).v_ == ModP(b.v_, m).v_;
}

}  // namespace gfrob
