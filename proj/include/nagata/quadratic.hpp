#pragma once

// Exact arithmetic in the ring Q[sqrt(n) : n >= 0].  An expression is a
// finite sum  q_1 + sum_n q_n * sqrt(n)  over square-free radicands n >= 2,
// with the key n = 1 holding the rational part.  Square roots of distinct
// square-free integers are linearly independent over Q, so a normalized
// expression is zero exactly when its term map is empty; every sign decision
// below is exact, never a fixed-precision guess.

#include <compare>
#include <map>
#include <string>

#include "nagata/numeric.hpp"

namespace nagata {

class QuadraticExpr {
public:
    QuadraticExpr() = default;
    QuadraticExpr(const Rat& q);
    QuadraticExpr(const Int& n);
    QuadraticExpr(long n);

    // sqrt(n) with the square part extracted: sqrt(s^2 f) = s sqrt(f).
    static QuadraticExpr sqrt_of(const Int& n);

    const std::map<Int, Rat>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    // Rational part (coefficient of the key 1).
    Rat rational_part() const;

    QuadraticExpr operator-() const;
    QuadraticExpr& operator+=(const QuadraticExpr& o);
    QuadraticExpr& operator-=(const QuadraticExpr& o);
    QuadraticExpr& operator*=(const QuadraticExpr& o);

    friend QuadraticExpr operator+(QuadraticExpr a, const QuadraticExpr& b) { return a += b; }
    friend QuadraticExpr operator-(QuadraticExpr a, const QuadraticExpr& b) { return a -= b; }
    friend QuadraticExpr operator*(QuadraticExpr a, const QuadraticExpr& b) { return a *= b; }

    bool operator==(const QuadraticExpr& o) const { return terms_ == o.terms_; }

    // Exact sign (-1, 0, +1).  Zero is structural; otherwise the value is
    // bracketed by directed-rounding intervals at doubling precision until the
    // interval excludes zero, which linear independence guarantees happens.
    int sign() const;

    static int compare(const QuadraticExpr& a, const QuadraticExpr& b) { return (a - b).sign(); }

    // Human form, e.g. "3/2 + 5*sqrt(2) - sqrt(14)"; "0" when zero.
    std::string str() const;

    // Fixed-point decimal with the given number of fractional digits,
    // round-to-nearest at generous precision.  Display only.
    std::string decimal(int digits = 30) const;

private:
    void put(const Int& radicand, const Rat& coeff);

    std::map<Int, Rat> terms_;
};

}  // namespace nagata
