#pragma once

#include "ngas/numeric.hpp"

namespace ngas {

// Element a + b*sqrt(d) of Q(sqrt d) for a fixed rational radicand d shared by the operands.
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(int a) : a_(a) {}
  QuadSurd(Rational a, Rational b = 0, Rational d = 0) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

  static QuadSurd root(const Rational& d) { return QuadSurd(0, 1, d); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_part() const { return b_; }
  const Rational& radicand() const { return d_; }

  Real value() const { return to_real(a_) + to_real(b_) * mp::sqrt(to_real(d_)); }

  friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) { return {x.a_ + y.a_, x.b_ + y.b_, pick(x, y)}; }
  friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) { return {x.a_ - y.a_, x.b_ - y.b_, pick(x, y)}; }
  friend QuadSurd operator-(const QuadSurd& x) { return {-x.a_, -x.b_, x.d_}; }
  friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
    Rational d = pick(x, y);
    return {x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d};
  }
  friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) {
    Rational d = pick(x, y);
    Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * d;
    if (norm == 0) throw std::domain_error("division by zero in Q(sqrt d)");
    return x * QuadSurd(y.a_ / norm, -y.b_ / norm, d);
  }
  QuadSurd& operator+=(const QuadSurd& y) { return *this = *this + y; }
  friend bool operator==(const QuadSurd& x, const QuadSurd& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  // Plain rationals carry d = 0; the radicand of the other operand wins.
  static Rational pick(const QuadSurd& x, const QuadSurd& y) { return x.d_ != 0 ? x.d_ : y.d_; }

  Rational a_ = 0;
  Rational b_ = 0;
  Rational d_ = 0;
};

}  // namespace ngas
