#pragma once

// Exact arithmetic base types. All lattice data is arbitrary precision:
// overflow must be impossible by construction, not merely unlikely.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace nagata {

using Int = mpz_class;
using Rat = mpq_class;

inline int sign_of(const Int& x) { return sgn(x); }
inline int sign_of(const Rat& x) { return sgn(x); }

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

// "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Int sum_of(const std::vector<Int>& v) {
    Int s = 0;
    for (const auto& x : v) s += x;
    return s;
}

inline Int sum_of_squares(const std::vector<Int>& v) {
    Int s = 0;
    for (const auto& x : v) s += x * x;
    return s;
}

}  // namespace nagata
