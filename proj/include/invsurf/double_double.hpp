#pragma once

// Unevaluated-sum "double-double" scalar: value = hi + lo with |lo| <= ulp(hi)/2.
// Used where error-free transformations are needed to keep a recurrence
// compensated (the Schmeisser division chain), not as a general multiprecision type.

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>

namespace invsurf {

class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double x) : hi_(x), lo_(0.0) {}  // NOLINT: implicit by design of a scalar type
  constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

  static DoubleDouble from_u64(std::uint64_t v) {
    const auto high = static_cast<double>(v >> 32) * 4294967296.0;
    const auto low = static_cast<double>(v & 0xffffffffULL);
    return DoubleDouble(high) + DoubleDouble(low);
  }

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  explicit operator double() const { return hi_ + lo_; }

  friend DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi_, -a.lo_}; }

  friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    double s, e;
    two_sum(a.hi_, b.hi_, s, e);
    double t, f;
    two_sum(a.lo_, b.lo_, t, f);
    e += t;
    quick_two_sum(s, e, s, e);
    e += f;
    quick_two_sum(s, e, s, e);
    return {s, e};
  }

  friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }

  friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    double p, e;
    two_prod(a.hi_, b.hi_, p, e);
    e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    quick_two_sum(p, e, p, e);
    return {p, e};
  }

  friend DoubleDouble operator/(const DoubleDouble& a, const DoubleDouble& b) {
    // Long division: q1 + q2 + q3 with two Newton-style corrections.
    const double q1 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * DoubleDouble(q1);
    const double q2 = r.hi_ / b.hi_;
    r = r - b * DoubleDouble(q2);
    const double q3 = r.hi_ / b.hi_;
    double s, e;
    quick_two_sum(q1, q2, s, e);
    return DoubleDouble(s, e) + DoubleDouble(q3);
  }

  DoubleDouble& operator+=(const DoubleDouble& b) { return *this = *this + b; }
  DoubleDouble& operator-=(const DoubleDouble& b) { return *this = *this - b; }
  DoubleDouble& operator*=(const DoubleDouble& b) { return *this = *this * b; }
  DoubleDouble& operator/=(const DoubleDouble& b) { return *this = *this / b; }

  friend bool operator==(const DoubleDouble& a, const DoubleDouble& b) { return a.hi_ == b.hi_ && a.lo_ == b.lo_; }
  friend bool operator!=(const DoubleDouble& a, const DoubleDouble& b) { return !(a == b); }
  friend bool operator<(const DoubleDouble& a, const DoubleDouble& b) {
    return a.hi_ < b.hi_ || (a.hi_ == b.hi_ && a.lo_ < b.lo_);
  }
  friend bool operator>(const DoubleDouble& a, const DoubleDouble& b) { return b < a; }
  friend bool operator<=(const DoubleDouble& a, const DoubleDouble& b) { return !(b < a); }
  friend bool operator>=(const DoubleDouble& a, const DoubleDouble& b) { return !(a < b); }

  friend DoubleDouble abs(const DoubleDouble& a) { return a.hi_ < 0.0 ? -a : a; }
  friend DoubleDouble sqrt(const DoubleDouble& a) {
    if (a.hi_ <= 0.0) return DoubleDouble(std::sqrt(a.hi_));
    // One Newton step on top of the double estimate doubles the precision.
    const double x = std::sqrt(a.hi_);
    const DoubleDouble r = a - DoubleDouble(x) * DoubleDouble(x);
    return DoubleDouble(x) + DoubleDouble(r.hi_ / (2.0 * x));
  }

  friend std::ostream& operator<<(std::ostream& os, const DoubleDouble& a) { return os << a.hi_ << "+" << a.lo_; }

 private:
  static void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
  }
  static void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
  }
  static void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

inline double to_double(const DoubleDouble& x) { return static_cast<double>(x); }
inline double to_double(double x) { return x; }
inline double to_double(long double x) { return static_cast<double>(x); }

}  // namespace invsurf

namespace Eigen {

template <>
struct NumTraits<invsurf::DoubleDouble> : GenericNumTraits<invsurf::DoubleDouble> {
  using Real = invsurf::DoubleDouble;
  using NonInteger = invsurf::DoubleDouble;
  using Nested = invsurf::DoubleDouble;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 10
  };
  static inline Real epsilon() { return Real(4.93038065763132e-32); }
  static inline Real dummy_precision() { return Real(1e-28); }
  static inline Real highest() { return Real(std::numeric_limits<double>::max()); }
  static inline Real lowest() { return Real(std::numeric_limits<double>::lowest()); }
  static inline int digits10() { return 31; }
};

}  // namespace Eigen
