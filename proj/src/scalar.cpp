#include "peripack/scalar.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace peripack {

namespace mp = boost::multiprecision;

Scalar Scalar::exact_ratio(long long num, long long den) {
  if (den == 0) throw Error("scalar: zero denominator");
  return Scalar(Rational(BigInt(num), BigInt(den)));
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_mode(o);
  if (is_exact()) return Scalar(Rational(*exact_ + *o.exact_));
  return Scalar(value_ + o.value_, std::max(eps_, o.eps_));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_mode(o);
  if (is_exact()) return Scalar(Rational(*exact_ - *o.exact_));
  return Scalar(value_ - o.value_, std::max(eps_, o.eps_));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_mode(o);
  if (is_exact()) return Scalar(Rational(*exact_ * *o.exact_));
  return Scalar(value_ * o.value_, std::max(eps_, o.eps_));
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_same_mode(o);
  if (is_exact()) {
    if (o.exact_->is_zero()) throw Error("scalar: division by zero");
    return Scalar(Rational(*exact_ / *o.exact_));
  }
  if (o.value_ == 0.0) throw Error("scalar: division by zero");
  return Scalar(value_ / o.value_, std::max(eps_, o.eps_));
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-*exact_));
  return Scalar(-value_, eps_);
}

Scalar Scalar::mul_int(long long k) const {
  if (is_exact()) return Scalar(Rational(*exact_ * k));
  return Scalar(value_ * static_cast<double>(k), eps_);
}

Scalar Scalar::div_int(long long k) const {
  if (k == 0) throw Error("scalar: division by zero");
  if (is_exact()) return Scalar(Rational(*exact_ / k));
  return Scalar(value_ / static_cast<double>(k), eps_);
}

bool Scalar::eq(const Scalar& o) const {
  check_same_mode(o);
  if (is_exact()) return *exact_ == *o.exact_;
  const double tol = std::max(eps_, o.eps_) *
                     std::max({1.0, std::fabs(value_), std::fabs(o.value_)});
  return std::fabs(value_ - o.value_) <= tol;
}

int Scalar::sign() const {
  if (is_exact()) return exact_->sign();
  if (std::fabs(value_) <= eps_ * std::max(1.0, std::fabs(value_))) return 0;
  return value_ > 0 ? 1 : -1;
}

int Scalar::compare_value(const Scalar& a, const Scalar& b) {
  a.check_same_mode(b);
  if (a.is_exact()) {
    if (*a.exact_ < *b.exact_) return -1;
    if (*a.exact_ > *b.exact_) return 1;
    return 0;
  }
  if (a.value_ < b.value_) return -1;
  if (a.value_ > b.value_) return 1;
  return 0;
}

Scalar Scalar::sqrt_float() const {
  double v = to_double();
  if (v < 0) throw Error("scalar: sqrt of negative value");
  return Scalar(std::sqrt(v), is_exact() ? kDefaultEps : eps_);
}

std::optional<Scalar> Scalar::try_exact_sqrt() const {
  if (!is_exact() || exact_->sign() < 0) return std::nullopt;
  const BigInt num = mp::numerator(*exact_);
  const BigInt den = mp::denominator(*exact_);
  const BigInt rn = mp::sqrt(num);
  const BigInt rd = mp::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Scalar(Rational(rn, rd));
}

std::string Scalar::str() const {
  return is_exact() ? rational_str(*exact_) : double_str(value_);
}

Scalar parse_rational(const std::string& text) {
  const auto bad = [&] { return Error("scalar: malformed rational '" + text + "'"); };
  const auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return s.find_first_not_of("0123456789", i) == std::string::npos;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_int(text)) throw bad();
    return Scalar::exact(Rational(BigInt(text)));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) throw bad();
  const BigInt d(den);
  if (d == 0) throw bad();
  return Scalar::exact(Rational(BigInt(num), d));
}

std::string rational_str(const Rational& r) {
  const BigInt num = mp::numerator(r);
  const BigInt den = mp::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string double_str(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int ceil_log2(unsigned long long n) {
  if (n == 0) throw Error("ceil_log2: zero argument");
  int bits = 0;
  unsigned long long x = n;
  while (x > 1) {
    x >>= 1;
    ++bits;
  }
  // bits == floor(log2(n)); bump unless n is a power of two
  return ((n & (n - 1)) == 0) ? bits : bits + 1;
}

}  // namespace peripack
