#pragma once

// Per-variable degree bounds for polynomials in (r, s, t). Running a
// straight-line formula on DegVec instead of field elements yields, for each
// variable, an upper bound on the degree of the polynomial that formula
// computes: sums take the maximum, products add. Cancellation is ignored, so
// the bound is never too small.

#include <algorithm>
#include <array>

#include "ttd/error.hpp"

namespace ttd {

class DegVec {
 public:
  DegVec() = default;
  static DegVec variable(int v) {
    DegVec d;
    d.zero_ = false;
    d.deg_[v] = 1;
    return d;
  }
  static DegVec constant() {
    DegVec d;
    d.zero_ = false;
    return d;
  }

  DegVec zero_like() const { return DegVec(); }
  DegVec from_int(long n) const { return n == 0 ? DegVec() : constant(); }
  bool is_zero() const { return zero_; }
  const std::array<int, 3>& degrees() const { return deg_; }

  DegVec operator-() const { return *this; }
  friend DegVec operator+(const DegVec& a, const DegVec& b) {
    if (a.zero_) return b;
    if (b.zero_) return a;
    DegVec d = a;
    for (int i = 0; i < 3; ++i) d.deg_[i] = std::max(a.deg_[i], b.deg_[i]);
    return d;
  }
  friend DegVec operator-(const DegVec& a, const DegVec& b) { return a + b; }
  friend DegVec operator*(const DegVec& a, const DegVec& b) {
    if (a.zero_ || b.zero_) return DegVec();
    DegVec d = a;
    for (int i = 0; i < 3; ++i) d.deg_[i] = a.deg_[i] + b.deg_[i];
    return d;
  }
  DegVec& operator+=(const DegVec& o) { return *this = *this + o; }
  DegVec& operator-=(const DegVec& o) { return *this = *this + o; }
  DegVec& operator*=(const DegVec& o) { return *this = *this * o; }
  // Only constants are invertible.
  DegVec inv() const {
    if (zero_ || deg_ != std::array<int, 3>{0, 0, 0})
      throw Error(Errc::invariant_violation, "degree tracker: division by a non-constant");
    return *this;
  }
  friend DegVec operator/(const DegVec& a, const DegVec& b) { return a * b.inv(); }

  // Componentwise maximum over a collection, ignoring zeros.
  template <class It>
  static std::array<int, 3> bound(It first, It last) {
    std::array<int, 3> b{0, 0, 0};
    for (; first != last; ++first) {
      if (first->is_zero()) continue;
      for (int i = 0; i < 3; ++i) b[i] = std::max(b[i], first->deg_[i]);
    }
    return b;
  }

 private:
  bool zero_ = true;
  std::array<int, 3> deg_{0, 0, 0};
};

}  // namespace ttd
