#pragma once

// Machine replays of the five steps of the lower-bound construction for the
// uniform system (d; mu^r), d = k mu + j.  Each step materializes its mosaic
// bundle, asserts that the restrictions are exactly the displayed classes,
// and evaluates every displayed inequality as an exact margin (a quadratic
// expression plus its sign).  Steps run on any admissible (r, mu, j); when
// the step's hypotheses fail, the report is marked hypothetical with one note
// per violated hypothesis, but all quantities are still computed.

#include <string>
#include <vector>

#include "nagata/coverage.hpp"
#include "nagata/cremona.hpp"
#include "nagata/mosaic.hpp"
#include "nagata/picard.hpp"
#include "nagata/quadratic.hpp"

namespace nagata {

struct TraceMargin {
    std::string name;
    QuadraticExpr value;
    int sign;           // exact sign of value
    std::string claim;  // "positive" | "nonnegative" | "negative"
    bool pass;
};

struct TraceCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct TraceClassEntry {
    std::string name;
    std::string cls;  // canonical string
};

struct TraceIntersection {
    std::string name;
    Rat value;
};

struct TraceReport {
    std::string step;
    Int r, mu, j;
    Int k, alpha;
    QuadraticExpr epsilon;
    Coverage coverage;
    bool hypothetical = false;
    std::vector<std::string> hypothesis_notes;
    std::vector<TraceClassEntry> classes;
    std::vector<TraceIntersection> intersections;
    std::vector<TraceMargin> margins;
    std::vector<TraceCheck> checks;
    TransformLog transforms;  // Cremona steps replayed inside the trace
    bool pass = true;         // every check and margin claim holds
};

// Step 1: degenerate the plane blown up at r points into the target
// component carrying 2k+alpha-1 points and the component carrying
// (k-1)^2 - 1 points, and verify the restrictions and the degree margin
// d - sqrt(r) mu = j - eps mu.
TraceReport trace_step1(const Int& r, const Int& mu, const Int& j);

// Step 2: the Cremona identity
//   (k mu + j : (k-1) mu; mu^(2k+alpha-1))  ->  (k j + mu : (k-1) j; j^(2k-2) mu^(alpha+1))
// via rule2 with s = k-1, cross-checked against the elementary-transform
// factorization.
TraceReport trace_step2(const Int& r, const Int& mu, const Int& j);

// Step 3 (odd remainder): two-component mosaic for the step-2 class, the
// auxiliary curve K of degree L.K = kj - (alpha+1) mu / 2, and the margins
// L.K + mu(1+eps^2)/2 = k(j - eps mu) and eps(alpha-1)/2 - (1+eps^2)/2.
TraceReport trace_step3(const Int& r, const Int& mu, const Int& j);

// Step 4 (even remainder, eps <= sqrt(3)-1): 3x2 mosaic plus its 1x2
// coarsening, the curve K with L.K = (k-1)j - alpha mu / 2, the negative
// curve Lambda with L.Lambda = j - mu, and the coefficient margins
// k eps - 2 >= 0 and 1 - eps^2/2 > 0.
TraceReport trace_step4(const Int& r, const Int& mu, const Int& j);

// Step 5 (even remainder, sqrt(3)-1 <= eps <= 2(sqrt(2)-1)): 2x2 mosaic and
// 2x1 coarsening, curves K, J with L.K = (k-1)j + (1 - alpha/2) mu, the
// Cremona normal form of the second coarse component, the negative curve
// Lambda with L.Lambda = 2(j - mu), and the quadratic
// (5/2) eps^2 - (3 + 3/k) eps + (1 + 2/k) with its discriminant.
TraceReport trace_step5(const Int& r, const Int& mu, const Int& j);

// Discriminant of the step-5 quadratic: 9/k^2 - 2/k - 1.
Rat step5_discriminant(const Int& k);

}  // namespace nagata
