#include "nagata/coverage.hpp"

#include <mpfr.h>

#include <stdexcept>

#include "nagata/picard.hpp"

namespace nagata {

std::string to_string(Coverage c) {
    switch (c) {
        case Coverage::Case1: return "Case1";
        case Coverage::Case2: return "Case2";
        case Coverage::Square: return "Square";
        case Coverage::NotCovered: return "NotCovered";
    }
    return "?";
}

SqrtProfile sqrt_profile(const Int& r) {
    if (r < 2) throw std::invalid_argument("sqrt_profile: r must be >= 2");
    SqrtProfile p;
    p.r = r;
    p.k = isqrt(r);
    p.alpha = r - p.k * p.k;
    p.square = p.alpha == 0;
    p.epsilon = QuadraticExpr::sqrt_of(r) - QuadraticExpr(p.k);
    p.coverage = theorem_covers(r);
    return p;
}

Coverage theorem_covers(const Int& r) {
    if (r < 2) throw std::invalid_argument("theorem_covers: r must be >= 2");
    Int k = isqrt(r);
    Int alpha = r - k * k;
    if (alpha == 0) return Coverage::Square;
    if (k < 3) return Coverage::NotCovered;
    if (alpha % 2 == 1) {
        // eps > 1/sqrt(2k-1)  <=>  sqrt(r) > k + 1/sqrt(2k-1).  Squaring
        // twice (everything positive, alpha >= 1) gives the integer form
        // (alpha(2k-1) - 1)^2 > 4k^2(2k-1).
        Int t = 2 * k - 1;
        Int lhs = alpha * t - 1;
        return lhs * lhs > 4 * k * k * t ? Coverage::Case1 : Coverage::NotCovered;
    }
    if (alpha < 6) return Coverage::NotCovered;
    // eps <= 2(sqrt(2) - 1), exact comparison in Q[sqrt(2), sqrt(r)].
    QuadraticExpr eps = QuadraticExpr::sqrt_of(r) - QuadraticExpr(k);
    QuadraticExpr bound = QuadraticExpr(Rat(2)) * QuadraticExpr::sqrt_of(2) - QuadraticExpr(2);
    return QuadraticExpr::compare(eps, bound) <= 0 ? Coverage::Case2 : Coverage::NotCovered;
}

CorollaryResult corollary_condition(const Int& d, const Int& mu, const Int& r) {
    CorollaryResult res;
    res.chi_value = chi(d, mu, r);
    res.threshold = make_rat(r * mu, 2) - 4;
    res.holds = 2 * res.chi_value > r * mu - 8;
    res.coverage = theorem_covers(r);
    return res;
}

NefTarget nef_target(const Int& r, const Int& mu) {
    if (r < 2 || mu < 1) throw std::invalid_argument("nef_target: need r >= 2, mu >= 1");
    if (is_perfect_square(r))
        throw std::invalid_argument("nef_target: r = " + to_string(r) +
                                    " is a perfect square; the strict bound has no minimum "
                                    "witness independent of ties");
    NefTarget t;
    t.r_mu_square = r * mu * mu;
    t.d = isqrt(t.r_mu_square) + 1;
    t.d_square = t.d * t.d;
    if (t.d_square <= t.r_mu_square) throw std::logic_error("nef_target: certificate broken");
    return t;
}

std::vector<SqrtProfile> scan_profiles(const Int& r_lo, const Int& r_hi) {
    if (r_lo < 2 || r_hi < r_lo)
        throw std::invalid_argument("scan_profiles: need 2 <= r_lo <= r_hi");
    std::vector<SqrtProfile> out;
    for (Int r = r_lo; r <= r_hi; ++r) out.push_back(sqrt_profile(r));
    return out;
}

Coverage float_coverage(const Int& r, long precision_bits) {
    if (r < 2) throw std::invalid_argument("float_coverage: r must be >= 2");
    Int k = isqrt(r);
    Int alpha = r - k * k;
    if (alpha == 0) return Coverage::Square;
    if (k < 3) return Coverage::NotCovered;

    mpfr_t eps, bound, tmp;
    mpfr_inits2(precision_bits, eps, bound, tmp, (mpfr_ptr) nullptr);
    mpfr_set_z(eps, r.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(eps, eps, MPFR_RNDN);
    mpfr_sub_z(eps, eps, k.get_mpz_t(), MPFR_RNDN);

    Coverage result = Coverage::NotCovered;
    if (alpha % 2 == 1) {
        // 1 / sqrt(2k-1)
        mpfr_set_z(bound, Int(2 * k - 1).get_mpz_t(), MPFR_RNDN);
        mpfr_sqrt(bound, bound, MPFR_RNDN);
        mpfr_ui_div(bound, 1, bound, MPFR_RNDN);
        if (mpfr_cmp(eps, bound) > 0) result = Coverage::Case1;
    } else if (alpha >= 6) {
        // 2(sqrt(2) - 1)
        mpfr_set_ui(bound, 2, MPFR_RNDN);
        mpfr_sqrt(bound, bound, MPFR_RNDN);
        mpfr_sub_ui(bound, bound, 1, MPFR_RNDN);
        mpfr_mul_ui(bound, bound, 2, MPFR_RNDN);
        if (mpfr_cmp(eps, bound) <= 0) result = Coverage::Case2;
    }
    mpfr_clears(eps, bound, tmp, (mpfr_ptr) nullptr);
    return result;
}

}  // namespace nagata
