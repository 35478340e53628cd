#include "nagata/interp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "nagata/rng.hpp"

namespace nagata {

namespace {

using u64 = std::uint64_t;

// Desk-scale guard: dense elimination beyond this is a caller bug.
constexpr long kMaxSide = 4096;

u64 mulmod(u64 a, u64 b, u64 p) { return a * b % p; }  // p < 2^31, no overflow

u64 powmod(u64 a, u64 e, u64 p) {
    u64 acc = 1 % p;
    while (e) {
        if (e & 1) acc = mulmod(acc, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return acc;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

std::size_t rank_mod_p(std::vector<std::vector<u64>>& m, std::size_t cols, u64 p) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        u64 inv = invmod(m[rank][col], p);
        for (std::size_t c = col; c < cols; ++c) m[rank][c] = mulmod(m[rank][c], inv, p);
        for (std::size_t r = rank + 1; r < m.size(); ++r) {
            u64 f = m[r][col];
            if (!f) continue;
            for (std::size_t c = col; c < cols; ++c)
                m[r][c] = submod(m[r][c], mulmod(f, m[rank][c], p), p);
        }
        ++rank;
    }
    return rank;
}

struct ClampedProblem {
    long d;
    std::vector<long> mults;  // positive entries only
    bool clamped;
    long rows, cols;
};

ClampedProblem clamp_and_size(const InterpolationProblem& problem) {
    if (problem.d < 0)
        throw std::invalid_argument("h0_generic: degree must be nonnegative");
    if (problem.trials < 1) throw std::invalid_argument("h0_generic: trials must be >= 1");
    if (problem.prime < 2 || problem.prime > kDefaultPrime)
        throw std::invalid_argument("h0_generic: prime must lie in [2, 2^31 - 1]");
    if (Int(static_cast<unsigned long>(problem.prime)) <= problem.d)
        throw std::invalid_argument(
            "h0_generic: prime must exceed the degree (derivatives collapse mod p)");

    if (problem.d > 2 * kMaxSide)
        throw std::invalid_argument("h0_generic: degree beyond desk scale");
    ClampedProblem out;
    out.d = problem.d.get_si();
    out.clamped = false;
    out.rows = 0;
    out.cols = (out.d + 1) * (out.d + 2) / 2;
    for (const Int& m : problem.mults) {
        if (m < 0) {
            out.clamped = true;
            continue;
        }
        if (m == 0) continue;
        if (m > out.d + 1) {
            // Conditions of order > d already kill everything monomial by
            // monomial; capping keeps the matrix small without changing rank
            // beyond full column rank.
            out.mults.push_back(out.d + 1);
        } else {
            out.mults.push_back(m.get_si());
        }
        long mu = out.mults.back();
        out.rows += mu * (mu + 1) / 2;
    }
    if (out.rows > kMaxSide || out.cols > kMaxSide)
        throw std::invalid_argument("h0_generic: interpolation matrix beyond desk scale");
    return out;
}

// fall[n][t] = n (n-1) ... (n-t+1) mod p, for 0 <= t <= n <= d.
std::vector<std::vector<u64>> falling_factorials(long d, u64 p) {
    std::vector<std::vector<u64>> fall(static_cast<std::size_t>(d) + 1);
    for (long n = 0; n <= d; ++n) {
        auto& row = fall[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(n) + 1, 1);
        for (long t = 1; t <= n; ++t)
            row[static_cast<std::size_t>(t)] =
                mulmod(row[static_cast<std::size_t>(t - 1)],
                       static_cast<u64>(n - t + 1) % p, p);
    }
    return fall;
}

std::size_t trial_rank(const ClampedProblem& cp, u64 p, SplitMix64& rng,
                       const std::vector<std::vector<u64>>& fall) {
    std::set<std::pair<u64, u64>> used;
    std::vector<std::pair<u64, u64>> pts;
    pts.reserve(cp.mults.size());
    while (pts.size() < cp.mults.size()) {
        u64 x = 1 + rng.below(p - 1);
        u64 y = 1 + rng.below(p - 1);
        if (used.insert({x, y}).second) pts.push_back({x, y});
    }

    std::vector<std::vector<u64>> m;
    m.reserve(static_cast<std::size_t>(cp.rows));
    std::vector<u64> px(static_cast<std::size_t>(cp.d) + 1), py(px.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        px[0] = py[0] = 1;
        for (long e = 1; e <= cp.d; ++e) {
            px[static_cast<std::size_t>(e)] = mulmod(px[static_cast<std::size_t>(e - 1)], pts[i].first, p);
            py[static_cast<std::size_t>(e)] = mulmod(py[static_cast<std::size_t>(e - 1)], pts[i].second, p);
        }
        long mu = cp.mults[i];
        for (long dx = 0; dx < mu; ++dx)
            for (long dy = 0; dy + dx < mu; ++dy) {
                std::vector<u64> row(static_cast<std::size_t>(cp.cols), 0);
                std::size_t col = 0;
                for (long a = 0; a <= cp.d; ++a)
                    for (long b = 0; b <= cp.d - a; ++b, ++col)
                        if (dx <= a && dy <= b) {
                            u64 e = mulmod(fall[static_cast<std::size_t>(a)][static_cast<std::size_t>(dx)],
                                           fall[static_cast<std::size_t>(b)][static_cast<std::size_t>(dy)], p);
                            e = mulmod(e, px[static_cast<std::size_t>(a - dx)], p);
                            row[col] = mulmod(e, py[static_cast<std::size_t>(b - dy)], p);
                        }
                m.push_back(std::move(row));
            }
    }
    return rank_mod_p(m, static_cast<std::size_t>(cp.cols), p);
}

PicardClass clamped_class(const InterpolationProblem& problem) {
    PicardClass c;
    c.degree = problem.d;
    c.mults.reserve(problem.mults.size());
    for (const Int& m : problem.mults) c.mults.push_back(m < 0 ? Int(0) : m);
    return c;
}

}  // namespace

InterpolationProblem make_problem(const PicardClass& c, const OracleParams& p) {
    return InterpolationProblem{c.degree, c.mults, p.prime, p.trials, p.seed};
}

H0Result h0_generic(const InterpolationProblem& problem) {
    ClampedProblem cp = clamp_and_size(problem);
    std::vector<std::vector<u64>> fall = falling_factorials(cp.d, problem.prime);

    H0Result out;
    out.rows = cp.rows;
    out.cols = cp.cols;
    out.clamped = cp.clamped;
    std::size_t best = 0;
    for (int t = 0; t < problem.trials; ++t) {
        SplitMix64 rng = split_stream(problem.seed, static_cast<u64>(t));
        std::size_t rank = trial_rank(cp, problem.prime, rng, fall);
        best = std::max(best, rank);
        out.coranks.push_back(Int(static_cast<unsigned long>(
            static_cast<std::size_t>(cp.cols) - rank)));
    }
    out.h0 = Int(static_cast<unsigned long>(static_cast<std::size_t>(cp.cols) - best));
    Int chi = chi_class(clamped_class(problem));
    out.expected = chi > 0 ? chi : Int(0);
    out.special = out.h0 != out.expected;
    return out;
}

HrCheck hr_check(const Int& d, const Int& mu, const Int& r, const OracleParams& p) {
    if (mu < 0) throw std::invalid_argument("hr_check: mu must be nonnegative");
    if (r < 0) throw std::invalid_argument("hr_check: r must be nonnegative");
    if (r > kMaxSide) throw std::invalid_argument("hr_check: r beyond desk scale");
    InterpolationProblem problem{d, std::vector<Int>(static_cast<std::size_t>(r.get_ui()), mu),
                                 p.prime, p.trials, p.seed};
    HrCheck out;
    out.detail = h0_generic(problem);
    out.h0 = out.detail.h0;
    out.chi = chi(d, mu, r);
    Int max_rank = out.detail.cols - out.detail.h0;
    bool full_row_rank = max_rank == out.detail.rows;
    out.independent = out.h0 == std::max(Int(0), out.chi) && (out.chi < 0 || full_row_rank);
    return out;
}

InvarianceResult cremona_invariance_check(const PicardClass& c, const TransformSpec& t,
                                          const OracleParams& p) {
    InvarianceResult out;
    if (t.kind == "elementary") {
        out.image = elementary_quadratic(c, t.i, t.j, t.k);
    } else if (t.kind == "reduce") {
        out.image = reduce(c).result;
    } else {
        throw std::invalid_argument("cremona_invariance_check: unknown transform kind " + t.kind);
    }
    if (c.degree < 0 || out.image.degree < 0)
        throw std::invalid_argument(
            "cremona_invariance_check: degree negative on one side, no plane model to compare");
    out.before = h0_generic(make_problem(c, p));
    out.after = h0_generic(make_problem(out.image, p));
    out.equal = out.before.h0 == out.after.h0;
    return out;
}

const H0Result& H0Cache::get(const PicardClass& c) {
    PicardClass key;
    key.degree = c.degree;
    for (const Int& m : c.mults)
        if (m > 0) key.mults.push_back(m);
    std::sort(key.mults.begin(), key.mults.end(), [](const Int& x, const Int& y) { return x > y; });
    std::string k = to_string(key);
    auto it = memo_.find(k);
    if (it != memo_.end()) {
        ++hits_;
        return it->second;
    }
    H0Result res = h0_generic(make_problem(key, params_));
    return memo_.emplace(std::move(k), std::move(res)).first->second;
}

NefCrossCheck nef_cross_check(const PicardClass& L, const Int& bound, const OracleParams& p,
                              H0Cache* cache) {
    if (L.r() > 5) throw std::invalid_argument("nef_cross_check: r must be <= 5");
    if (bound < 0 || bound > 6)
        throw std::invalid_argument("nef_cross_check: bound must lie in [0, 6]");

    std::optional<H0Cache> local;
    if (!cache) {
        local.emplace(p);
        cache = &*local;
    }

    NefCrossCheck out;
    out.verdict = is_nef_small(L);

    if (!out.verdict.nef) {
        out.violator_h0 = cache->get(*out.verdict.violator).h0;
        out.consistent = *out.violator_h0 > 0;
        if (!out.consistent) out.counterexamples.push_back(*out.verdict.violator);
        return out;
    }

    PicardClass c;
    c.mults.assign(L.r(), Int(0));
    for (c.degree = 0; c.degree <= bound; ++c.degree) {
        for (;;) {
            ++out.scanned;
            if (cache->get(c).h0 > 0 && intersect(L, c) < 0) out.counterexamples.push_back(c);
            std::size_t pos = 0;
            while (pos < c.mults.size() && c.mults[pos] == bound) c.mults[pos++] = 0;
            if (pos == c.mults.size()) break;
            ++c.mults[pos];
        }
    }
    out.consistent = out.counterexamples.empty();
    return out;
}

}  // namespace nagata
