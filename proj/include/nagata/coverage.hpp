#pragma once

// Arithmetic profile of a blowup count r: write sqrt(r) = k + eps with
// k = floor(sqrt(r)) and alpha = r - k^2, so 2 k eps + eps^2 = alpha.  The
// covered cases of the lower-bound theorem are decided exactly: no floating
// comparison ever feeds a verdict.

#include <string>
#include <vector>

#include "nagata/numeric.hpp"
#include "nagata/quadratic.hpp"

namespace nagata {

enum class Coverage { Case1, Case2, Square, NotCovered };
std::string to_string(Coverage c);

struct SqrtProfile {
    Int r;
    Int k;                 // floor(sqrt(r))
    Int alpha;             // r - k^2
    bool square;           // alpha == 0
    QuadraticExpr epsilon;  // sqrt(r) - k, zero when square
    Coverage coverage;
};

SqrtProfile sqrt_profile(const Int& r);  // pre: r >= 2

// Case 1: alpha odd, k >= 3, eps > 1/sqrt(2k-1); the strict inequality is
// decided in the equivalent integer form (alpha(2k-1) - 1)^2 > 4k^2(2k-1).
// Case 2: alpha even, alpha >= 6, k >= 3, eps <= 2(sqrt(2)-1), decided by
// exact quadratic-expression comparison.  Perfect squares report Square.
Coverage theorem_covers(const Int& r);

// The characteristic threshold chi(d, mu, r) > r mu / 2 - 4, evaluated as
// the integer inequality 2 chi > r mu - 8.  `covered` mirrors
// theorem_covers(r); when r is not covered the bound carries no conclusion
// and callers should treat `holds` as vacuous.
struct CorollaryResult {
    bool holds;
    Int chi_value;
    Rat threshold;  // r mu / 2 - 4
    Coverage coverage;
};
CorollaryResult corollary_condition(const Int& d, const Int& mu, const Int& r);

// Least degree d with d^2 > r mu^2 (r not a perfect square, so ties are
// impossible): d = isqrt(r mu^2) + 1.  The certificate carries both squares.
struct NefTarget {
    Int d;
    Int d_square;
    Int r_mu_square;
};
NefTarget nef_target(const Int& r, const Int& mu);

// One profile per r in [r_lo, r_hi].
std::vector<SqrtProfile> scan_profiles(const Int& r_lo, const Int& r_hi);

// Coverage recomputed with floating-point arithmetic at the given binary
// precision; used only to cross-validate the exact path on strict
// inequalities.
Coverage float_coverage(const Int& r, long precision_bits);

}  // namespace nagata
