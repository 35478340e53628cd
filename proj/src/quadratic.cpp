#include "nagata/quadratic.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace nagata {

QuadraticExpr::QuadraticExpr(const Rat& q) { put(1, q); }
QuadraticExpr::QuadraticExpr(const Int& n) { put(1, Rat(n)); }
QuadraticExpr::QuadraticExpr(long n) { put(1, Rat(n)); }

void QuadraticExpr::put(const Int& radicand, const Rat& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(radicand, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

QuadraticExpr QuadraticExpr::sqrt_of(const Int& n) {
    if (n < 0) throw std::invalid_argument("sqrt_of: negative radicand");
    if (n == 0) return {};
    // Pull the square part out by trial division; radicands here stay small
    // (bounded by products of blowup counts), so this is never the hot path.
    Int square_root = 1, rest = 1, m = n;
    if (is_perfect_square(m)) {
        square_root = isqrt(m);
        m = 1;
    }
    for (Int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        unsigned long mult = 0;
        while (m % p == 0) {
            m /= p;
            ++mult;
        }
        for (unsigned long i = 0; i + 1 < mult; i += 2) square_root *= p;
        if (mult % 2 == 1) rest *= p;
    }
    rest *= m;  // leftover is 1 or prime
    QuadraticExpr e;
    if (rest == 1)
        e.put(1, Rat(square_root));
    else
        e.put(rest, Rat(square_root));
    return e;
}

bool QuadraticExpr::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rat QuadraticExpr::rational_part() const {
    auto it = terms_.find(1);
    return it == terms_.end() ? Rat(0) : it->second;
}

QuadraticExpr QuadraticExpr::operator-() const {
    QuadraticExpr r;
    for (const auto& [n, q] : terms_) r.terms_.emplace(n, -q);
    return r;
}

QuadraticExpr& QuadraticExpr::operator+=(const QuadraticExpr& o) {
    for (const auto& [n, q] : o.terms_) put(n, q);
    return *this;
}

QuadraticExpr& QuadraticExpr::operator-=(const QuadraticExpr& o) {
    for (const auto& [n, q] : o.terms_) put(n, -q);
    return *this;
}

QuadraticExpr& QuadraticExpr::operator*=(const QuadraticExpr& o) {
    // sqrt(a)*sqrt(b) = g*sqrt((a/g)(b/g)) with g = gcd(a,b); the product of
    // coprime square-free numbers is square-free, so terms stay normalized.
    QuadraticExpr result;
    for (const auto& [n1, q1] : terms_) {
        for (const auto& [n2, q2] : o.terms_) {
            Int g;
            mpz_gcd(g.get_mpz_t(), n1.get_mpz_t(), n2.get_mpz_t());
            Int radicand = (n1 / g) * (n2 / g);
            result.put(radicand, q1 * q2 * Rat(g));
        }
    }
    terms_ = std::move(result.terms_);
    return *this;
}

namespace {

// Accumulates a directed-rounding enclosure of the expression at `prec` bits.
void enclose(const std::map<Int, Rat>& terms, mpfr_prec_t prec, mpfr_t lo, mpfr_t hi) {
    mpfr_set_prec(lo, prec);
    mpfr_set_prec(hi, prec);
    mpfr_set_zero(lo, 0);
    mpfr_set_zero(hi, 0);
    mpfr_t sd, su, td, tu;
    mpfr_inits2(prec, sd, su, td, tu, (mpfr_ptr) nullptr);
    for (const auto& [n, q] : terms) {
        // [sd, su] encloses sqrt(n) (exactly 1 for the rational part).
        if (n == 1) {
            mpfr_set_ui(sd, 1, MPFR_RNDD);
            mpfr_set_ui(su, 1, MPFR_RNDU);
        } else {
            mpfr_set_z(sd, n.get_mpz_t(), MPFR_RNDD);
            mpfr_set_z(su, n.get_mpz_t(), MPFR_RNDU);
            mpfr_sqrt(sd, sd, MPFR_RNDD);
            mpfr_sqrt(su, su, MPFR_RNDU);
        }
        // [td, tu] encloses q*sqrt(n); sqrt(n) > 0, so the sign of q decides
        // which endpoint pairs with which rounding mode.
        if (sgn(q) > 0) {
            mpfr_set_q(td, q.get_mpq_t(), MPFR_RNDD);
            mpfr_mul(td, td, sd, MPFR_RNDD);
            mpfr_set_q(tu, q.get_mpq_t(), MPFR_RNDU);
            mpfr_mul(tu, tu, su, MPFR_RNDU);
        } else {
            mpfr_set_q(td, q.get_mpq_t(), MPFR_RNDD);
            mpfr_mul(td, td, su, MPFR_RNDD);
            mpfr_set_q(tu, q.get_mpq_t(), MPFR_RNDU);
            mpfr_mul(tu, tu, sd, MPFR_RNDU);
        }
        mpfr_add(lo, lo, td, MPFR_RNDD);
        mpfr_add(hi, hi, tu, MPFR_RNDU);
    }
    mpfr_clears(sd, su, td, tu, (mpfr_ptr) nullptr);
}

}  // namespace

int QuadraticExpr::sign() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1) return sgn(terms_.begin()->second);
    bool all_pos = true, all_neg = true;
    for (const auto& [n, q] : terms_) {
        if (sgn(q) > 0)
            all_neg = false;
        else
            all_pos = false;
    }
    if (all_pos) return 1;
    if (all_neg) return -1;

    mpfr_t lo, hi;
    mpfr_inits2(64, lo, hi, (mpfr_ptr) nullptr);
    int result = 0;
    bool decided = false;
    for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t(1) << 20); prec *= 2) {
        enclose(terms_, prec, lo, hi);
        if (mpfr_sgn(lo) > 0) {
            result = 1;
            decided = true;
            break;
        }
        if (mpfr_sgn(hi) < 0) {
            result = -1;
            decided = true;
            break;
        }
    }
    mpfr_clears(lo, hi, (mpfr_ptr) nullptr);
    if (!decided)
        throw std::logic_error(
            "QuadraticExpr::sign: interval refinement failed to separate a "
            "structurally nonzero expression from zero");
    return result;
}

std::string QuadraticExpr::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [n, q] : terms_) {
        Rat a = abs(q);
        std::string mag;
        if (n == 1)
            mag = to_string(a);
        else if (a == 1)
            mag = "sqrt(" + to_string(n) + ")";
        else
            mag = to_string(a) + "*sqrt(" + to_string(n) + ")";
        if (out.empty())
            out = (sgn(q) < 0 ? "-" : "") + mag;
        else
            out += (sgn(q) < 0 ? " - " : " + ") + mag;
    }
    return out;
}

std::string QuadraticExpr::decimal(int digits) const {
    mpfr_t acc, t;
    mpfr_inits2(256 + 8 * static_cast<mpfr_prec_t>(digits), acc, t, (mpfr_ptr) nullptr);
    mpfr_set_zero(acc, 0);
    for (const auto& [n, q] : terms_) {
        if (n == 1) {
            mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
        } else {
            mpfr_set_z(t, n.get_mpz_t(), MPFR_RNDN);
            mpfr_sqrt(t, t, MPFR_RNDN);
            mpfr_mul_q(t, t, q.get_mpq_t(), MPFR_RNDN);
        }
        mpfr_add(acc, acc, t, MPFR_RNDN);
    }
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", digits, acc);
    std::string s(buf);
    mpfr_free_str(buf);
    mpfr_clears(acc, t, (mpfr_ptr) nullptr);
    return s;
}

}  // namespace nagata
