#pragma once

// Independent ground truth for generic linear-system dimensions: the number
// of degree-<= d monomials minus the rank of the interpolation matrix whose
// rows are the order-< mu_i Taylor conditions at random points of a large
// prime field.  Special point configurations can only lower the rank, so the
// maximal rank seen across trials is the generic one with overwhelming
// probability; trials and seed make each number reproducible and auditable.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nagata/cremona.hpp"
#include "nagata/picard.hpp"

namespace nagata {

inline constexpr std::uint64_t kDefaultPrime = 2147483647ULL;  // 2^31 - 1

struct OracleParams {
    std::uint64_t prime = kDefaultPrime;  // odd prime, must exceed the degree
    int trials = 5;
    std::uint64_t seed = 0;
};

struct InterpolationProblem {
    Int d;
    std::vector<Int> mults;  // negative entries are clamped to 0
    std::uint64_t prime = kDefaultPrime;
    int trials = 5;
    std::uint64_t seed = 0;
};

InterpolationProblem make_problem(const PicardClass& c, const OracleParams& p = {});

struct H0Result {
    Int h0;        // monomial count - max rank over trials
    Int expected;  // max(0, chi_class)
    bool special;  // h0 != expected
    std::vector<Int> coranks;  // per-trial corank, trial order
    Int rows, cols;
    bool clamped;  // some negative multiplicity was clamped
};

// Builds the interpolation matrix per trial at uniformly random distinct
// points with coordinates in [1, p-1] and row-reduces it mod p.  Entry for
// monomial x^a y^b and condition (dx, dy) at (x, y) is
// fall(a,dx) fall(b,dy) x^(a-dx) y^(b-dy), with falling factorials reduced
// mod p; p > d keeps them nonzero.  h0 = columns - max rank.
H0Result h0_generic(const InterpolationProblem& problem);

struct HrCheck {
    bool independent;  // h0 == max(0, chi) and full row rank when chi >= 0
    Int h0;
    Int chi;
    H0Result detail;
};

// The uniform system (d; mu^r): do r generic mu-fold points impose
// independent conditions on degree-d curves?
HrCheck hr_check(const Int& d, const Int& mu, const Int& r, const OracleParams& p = {});

// A plane-level transformation for the invariance check.
struct TransformSpec {
    std::string kind;                  // "elementary" | "reduce"
    std::size_t i = 0, j = 1, k = 2;   // centers, "elementary" only
};

struct InvarianceResult {
    bool equal;
    PicardClass image;  // transformed class (reduce: final standard form)
    H0Result before, after;
};

// Generic h0 is a Cremona invariant: compares the oracle value on a class and
// on its transform.  Requires both degrees nonnegative.
InvarianceResult cremona_invariance_check(const PicardClass& c, const TransformSpec& t,
                                          const OracleParams& p = {});

// Memoizes h0_generic keyed by the clamped, zero-trimmed, sorted class, so
// exhaustive scans share work across queries.
class H0Cache {
public:
    explicit H0Cache(OracleParams params) : params_(params) {}

    const H0Result& get(const PicardClass& c);

    const OracleParams& params() const { return params_; }
    std::size_t size() const { return memo_.size(); }
    std::size_t hits() const { return hits_; }

private:
    OracleParams params_;
    std::map<std::string, H0Result> memo_;
    std::size_t hits_ = 0;
};

struct NefCrossCheck {
    bool consistent;
    NefVerdict verdict;  // is_nef_small on L
    // Effective classes (h0 > 0) pairing negatively with a declared-nef L;
    // when L is declared non-nef and its violator is not effective, the
    // violator lands here instead.
    std::vector<PicardClass> counterexamples;
    std::optional<Int> violator_h0;  // oracle h0 of the violator, when any
    std::size_t scanned = 0;
};

// Exhaustive cross-validation of is_nef_small against the oracle's effective
// classes: every class with degree and multiplicities in [0, bound].
// Desk scale only: r <= 5, bound <= 6.
NefCrossCheck nef_cross_check(const PicardClass& L, const Int& bound, const OracleParams& p = {},
                              H0Cache* cache = nullptr);

}  // namespace nagata
