#pragma once

#include <span>
#include <vector>

namespace spinorlat {

// Floating-point expansion holding an exact sum of doubles and of products
// of doubles. value() is the correctly rounded result, so two sums that are
// equal as real numbers always report the same double.
class ExactSum {
 public:
  ExactSum() = default;
  explicit ExactSum(double x) { add(x); }

  void add(double x);
  void add_product(double a, double b);
  void add_product(double a, double b, double c);
  ExactSum& operator+=(const ExactSum& other);
  ExactSum operator-() const;

  double value() const;
  int sign() const;
  bool is_zero() const { return parts_.empty(); }
  std::span<const double> parts() const { return parts_; }

  friend ExactSum operator+(ExactSum a, const ExactSum& b) { return a += b; }
  friend bool operator==(const ExactSum& a, const ExactSum& b) { return (a + (-b)).is_zero(); }

 private:
  // Non-overlapping, increasing magnitude, no zeros.
  std::vector<double> parts_;
};

}  // namespace spinorlat
