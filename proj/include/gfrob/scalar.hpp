#ifndef GFROB_SCALAR_HPP
#define GFROB_SCALAR_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <gmpxx.h>
#include <Eigen/Core>

namespace gfrob {

struct FieldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/* Field descriptor carried alongside matrices. p == 0 means the rationals. */
struct Field {
  std::int64_t p = 0;

  static Field rationals() { return Field{0}; }
  static Field prime(std::int64_t p);  // throws std::invalid_argument unless p is prime

  bool is_rational() const { return p == 0; }
  std::string str() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
  bool operator==(const Field&) const = default;
};

bool is_prime(std::int64_t n);

// Arbitrary-precision fraction in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  template <typename I, typename = std::enable_if_t<std::is_integral_v<I>>>
  Rational(I n) : q_(static_cast<long>(n)) {}
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  static Rational parse(const std::string& text);  // "a", "-a", "a/b"

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  std::string str() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  // zero shortcuts: matrices here are mostly sparse
  Rational& operator+=(const Rational& o) {
    if (!o.is_zero()) q_ += o.q_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    if (!o.is_zero()) q_ -= o.q_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) q_ = 0;
    else q_ *= o.q_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  static Rational from_int(long long n, const Field&) { return Rational(static_cast<long>(n)); }

 private:
  mpq_class q_{0};
};

/*
 * Residue modulo a prime. A modulus of 0 marks an integer literal that has not
 * been tied to a field yet; Eigen builds Scalar(0) and Scalar(1) that way.
 * Literals adopt the modulus of the other operand.
 */
class ModP {
 public:
  ModP() = default;
  template <typename I, typename = std::enable_if_t<std::is_integral_v<I>>>
  ModP(I n) : v_(static_cast<std::int64_t>(n)), p_(0) {}
  ModP(std::int64_t v, std::int64_t p);

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  std::string str() const { return std::to_string(v_); }

  ModP operator-() const { return p_ == 0 ? ModP(-v_) : ModP(p_ - v_, p_); }
  ModP& operator+=(const ModP& o);
  ModP& operator-=(const ModP& o);
  ModP& operator*=(const ModP& o);
  ModP& operator/=(const ModP& o);
  ModP inverse() const;

  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b);
  friend bool operator!=(const ModP& a, const ModP& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const ModP& r) { return os << r.str(); }

  static ModP from_int(long long n, const Field& f) { return ModP(n, f.p); }

 private:
  static std::int64_t common(std::int64_t p, std::int64_t q);
  std::int64_t v_ = 0;
  std::int64_t p_ = 0;
};

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const ModP& x) { return x.is_zero(); }

// Scalar name for reports.
template <typename S> const char* scalar_kind();
template <> inline const char* scalar_kind<Rational>() { return "rational"; }
template <> inline const char* scalar_kind<ModP>() { return "prime-field"; }

}  // namespace gfrob

namespace Eigen {

template <>
struct NumTraits<gfrob::Rational> : GenericNumTraits<gfrob::Rational> {
  typedef gfrob::Rational Real;
  typedef gfrob::Rational NonInteger;
  typedef gfrob::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<gfrob::ModP> : GenericNumTraits<gfrob::ModP> {
  typedef gfrob::ModP Real;
  typedef gfrob::ModP NonInteger;
  typedef gfrob::ModP Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif
