#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace peripack {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { Exact, Float };

inline constexpr double kDefaultEps = 1e-9;

// A number that is either an arbitrary-precision rational or a double with an
// attached comparison tolerance. The two kinds never mix: any binary operation
// across modes throws. Irrational results (square roots, pi multiples) are
// produced in Float mode only; exact callers that need them use the dedicated
// coefficient accessors instead.
class Scalar {
 public:
  Scalar() : mode_(Mode::Float), value_(0.0), eps_(kDefaultEps) {}

  static Scalar exact(long long n) { return Scalar(Rational(n)); }
  static Scalar exact(Rational r) { return Scalar(std::move(r)); }
  static Scalar exact_ratio(long long num, long long den);
  static Scalar real(double v, double eps = kDefaultEps) { return Scalar(v, eps); }

  // The rational payload is immutable and shared, so copies are cheap.
  Scalar(const Scalar&) = default;
  Scalar& operator=(const Scalar&) = default;
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(Scalar&&) noexcept = default;

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::Exact; }
  double eps() const { return eps_; }
  double to_double() const {
    return is_exact() ? exact_->convert_to<double>() : value_;
  }
  const Rational& rational() const {
    if (!is_exact()) throw Error("scalar: rational() on a float value");
    return *exact_;
  }
  // Drops exactness; used when a formula leaves rational arithmetic.
  Scalar as_float(double eps = kDefaultEps) const { return real(to_double(), eps); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }
  Scalar mul_int(long long k) const;
  Scalar div_int(long long k) const;

  // Tolerance-aware predicates: in Float mode |a-b| <= eps*max(1,|a|,|b|)
  // counts as equal; Exact mode compares exactly.
  bool eq(const Scalar& o) const;
  bool lt(const Scalar& o) const { return !eq(o) && raw_less(o); }
  bool gt(const Scalar& o) const { return o.lt(*this); }
  bool le(const Scalar& o) const { return !gt(o); }
  bool ge(const Scalar& o) const { return !lt(o); }

  // Sign with the same tolerance convention (Float: |v| <= eps is zero).
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  // Strict value ordering with no tolerance, for sorting and sweeps.
  static int compare_value(const Scalar& a, const Scalar& b);

  // Float square root of the magnitude; valid in either mode, result Float.
  Scalar sqrt_float() const;
  // Exact square root when the value is a perfect rational square.
  std::optional<Scalar> try_exact_sqrt() const;

  static Scalar zero(Mode m) { return m == Mode::Exact ? exact(0) : real(0.0); }
  static Scalar from_int(Mode m, long long n) {
    return m == Mode::Exact ? exact(n) : real(static_cast<double>(n));
  }

  std::string str() const;  // "p/q" when exact, shortest decimal otherwise

 private:
  explicit Scalar(Rational r)
      : mode_(Mode::Exact), value_(0.0), eps_(0.0),
        exact_(std::make_shared<const Rational>(std::move(r))) {}
  Scalar(double v, double eps) : mode_(Mode::Float), value_(v), eps_(eps) {}

  bool raw_less(const Scalar& o) const { return compare_value(*this, o) < 0; }
  void check_same_mode(const Scalar& o) const {
    if (mode_ != o.mode_) throw Error("scalar: mixed exact/float arithmetic");
  }

  Mode mode_;
  double value_;
  double eps_;
  std::shared_ptr<const Rational> exact_;
};

// Parses "p/q" or "p" (decimal integers, optional sign) into an exact scalar.
Scalar parse_rational(const std::string& text);
// Canonical "p/q" (or "p" when the denominator is 1) in lowest terms.
std::string rational_str(const Rational& r);
// Shortest round-trip decimal form of a double.
std::string double_str(double v);

// ceil(log2(n)) for n >= 1, computed on integers.
int ceil_log2(unsigned long long n);

}  // namespace peripack
