#include "spinorlat/exact_sum.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace spinorlat {

namespace {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  e = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Shewchuk's GROW-EXPANSION with zero elimination.
void grow(std::vector<double>& parts, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("ExactSum: non-finite term");
  if (x == 0) return;
  std::vector<double> out;
  out.reserve(parts.size() + 1);
  double q = x;
  for (double p : parts) {
    double s, e;
    two_sum(q, p, s, e);
    if (e != 0) out.push_back(e);
    q = s;
  }
  if (q != 0) out.push_back(q);
  parts.swap(out);
}

int expansion_sign(const std::vector<double>& parts) {
  if (parts.empty()) return 0;
  return parts.back() > 0 ? 1 : -1;
}

}  // namespace

void ExactSum::add(double x) { grow(parts_, x); }

void ExactSum::add_product(double a, double b) {
  double p, e;
  two_product(a, b, p, e);
  grow(parts_, e);
  grow(parts_, p);
}

void ExactSum::add_product(double a, double b, double c) {
  double p, e;
  two_product(a, b, p, e);
  add_product(e, c);
  add_product(p, c);
}

ExactSum& ExactSum::operator+=(const ExactSum& other) {
  const std::vector<double> copy = other.parts_;
  for (double x : copy) grow(parts_, x);
  return *this;
}

ExactSum ExactSum::operator-() const {
  ExactSum r = *this;
  for (double& x : r.parts_) x = -x;
  return r;
}

int ExactSum::sign() const { return expansion_sign(parts_); }

double ExactSum::value() const {
  if (parts_.empty()) return 0.0;
  double s = 0;
  for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) s += *it;
  // Walk s to the correctly rounded value by exact comparison of the
  // residual against half an ulp in its direction.
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<double> r = parts_;
    grow(r, -s);
    const int dir = expansion_sign(r);
    if (dir == 0) return s;
    const double t = std::nextafter(s, dir > 0 ? std::numeric_limits<double>::infinity()
                                               : -std::numeric_limits<double>::infinity());
    const double half = 0.5 * (t - s);
    std::vector<double> d = r;
    grow(d, -half);
    const int cmp = expansion_sign(d) * dir;
    if (cmp < 0) return s;
    if (cmp > 0) {
      s = t;
      continue;
    }
    // Exact tie: round half to even.
    std::int64_t bits_s;
    std::memcpy(&bits_s, &s, sizeof s);
    return (bits_s & 1) == 0 ? s : t;
  }
  return s;
}

}  // namespace spinorlat
