#include "nagata/picard.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nagata {

Int intersect(const PicardClass& a, const PicardClass& b) {
    if (a.r() != b.r())
        throw std::invalid_argument("intersect: classes live on different blowups (r " +
                                    std::to_string(a.r()) + " vs " + std::to_string(b.r()) + ")");
    Int s = a.degree * b.degree;
    for (std::size_t i = 0; i < a.mults.size(); ++i) s -= a.mults[i] * b.mults[i];
    return s;
}

Int self_intersection(const PicardClass& c) { return intersect(c, c); }

PicardClass canonical_class(std::size_t r) {
    return PicardClass{-3, std::vector<Int>(r, Int(-1))};
}

Int canonical_pairing(const PicardClass& c) {
    return -3 * c.degree + sum_of(c.mults);
}

Int chi(const Int& d, const Int& mu, const Int& r) {
    return (d + 1) * (d + 2) / 2 - r * mu * (mu + 1) / 2;
}

Int chi_class(const PicardClass& c) {
    return 1 + (self_intersection(c) - canonical_pairing(c)) / 2;
}

DeficitCertificate nagata_deficit(const PicardClass& c) {
    if (c.degree < 0) throw std::invalid_argument("nagata_deficit: negative degree");
    DeficitCertificate cert;
    cert.mult_sum = sum_of(c.mults);
    cert.rhs_square = Int(c.r()) * c.degree * c.degree;
    if (cert.mult_sum < 0) {
        // sqrt(r) d >= 0, so the deficit is strictly negative.
        cert.lhs_square = 0;
        cert.sign = -1;
        return cert;
    }
    cert.lhs_square = cert.mult_sum * cert.mult_sum;
    cert.sign = cmp(cert.lhs_square, cert.rhs_square);
    if (cert.sign != 0) cert.sign = cert.sign > 0 ? 1 : -1;
    return cert;
}

RuledClass ruled_f1(Int d, Int e, std::vector<Int> mults) {
    return RuledClass{Surface::F1, std::move(d), std::move(e), std::move(mults)};
}

RuledClass ruled_f0(Int a, Int b, std::vector<Int> mults) {
    return RuledClass{Surface::F0, std::move(a), std::move(b), std::move(mults)};
}

RuledClass ruled_f1_product(const Int& u, const Int& v, std::vector<Int> mults) {
    return RuledClass{Surface::F1, u, u - v, std::move(mults)};
}

Int self_intersection(const RuledClass& c) {
    Int s = c.surface == Surface::F1 ? Int(c.a * c.a - c.b * c.b) : Int(2 * c.a * c.b);
    return s - sum_of_squares(c.mults);
}

Int anticanonical_degree(const RuledClass& c) {
    Int s = c.surface == Surface::F1 ? Int(3 * c.a - c.b) : Int(2 * c.a + 2 * c.b);
    return s - sum_of(c.mults);
}

Int pair_ruled(const RuledClass& x, const RuledClass& y) {
    if (x.surface != y.surface)
        throw std::invalid_argument("pair_ruled: classes on different surfaces");
    Int s = x.surface == Surface::F1 ? Int(x.a * y.a - x.b * y.b) : Int(x.a * y.b + x.b * y.a);
    std::size_t n = std::min(x.mults.size(), y.mults.size());
    for (std::size_t i = 0; i < n; ++i) s -= x.mults[i] * y.mults[i];
    return s;
}

RuledClass ruled_canonical(Surface s, std::size_t r) {
    std::vector<Int> m(r, Int(-1));
    return s == Surface::F1 ? ruled_f1(-3, -1, std::move(m)) : ruled_f0(-2, -2, std::move(m));
}

PicardClass from_ruled(const RuledClass& c) {
    if (c.surface == Surface::F1) {
        std::vector<Int> m;
        m.reserve(c.mults.size() + 1);
        m.push_back(c.b);
        m.insert(m.end(), c.mults.begin(), c.mults.end());
        return PicardClass{c.a, std::move(m)};
    }
    if (c.mults.empty())
        throw std::invalid_argument(
            "from_ruled: an F0 class needs at least one blown-up point to reach the plane");
    const Int& m1 = c.mults.front();
    std::vector<Int> m;
    m.reserve(c.mults.size() + 1);
    m.push_back(c.a - m1);
    m.push_back(c.b - m1);
    m.insert(m.end(), c.mults.begin() + 1, c.mults.end());
    return PicardClass{c.a + c.b - m1, std::move(m)};
}

RuledClass to_ruled(const PicardClass& c, Surface target) {
    if (target == Surface::F1) {
        if (c.r() < 1) throw std::invalid_argument("to_ruled: F1 needs r >= 1");
        return ruled_f1(c.degree, c.mults.front(),
                        std::vector<Int>(c.mults.begin() + 1, c.mults.end()));
    }
    if (c.r() < 2) throw std::invalid_argument("to_ruled: F0 needs r >= 2");
    // Invert (a x b; m1,...) -> (a+b-m1; a-m1, b-m1, ...).
    Int m1 = c.degree - c.mults[0] - c.mults[1];
    std::vector<Int> m;
    m.reserve(c.r() - 1);
    m.push_back(m1);
    m.insert(m.end(), c.mults.begin() + 2, c.mults.end());
    return ruled_f0(c.degree - c.mults[1], c.degree - c.mults[0], std::move(m));
}

namespace {

void append_mults(std::string& out, const std::vector<Int>& mults) {
    out += "; ";
    for (std::size_t i = 0; i < mults.size(); ++i) {
        if (i) out += ',';
        out += mults[i].get_str();
    }
    out += ')';
}

}  // namespace

std::string to_string(const PicardClass& c) {
    std::string out = "(" + c.degree.get_str();
    if (c.mults.empty()) return out + ";)";
    append_mults(out, c.mults);
    return out;
}

std::string to_string(const RuledClass& c) {
    std::string out = "(";
    if (c.surface == Surface::F1)
        out += c.a.get_str() + ":" + c.b.get_str();
    else
        out += c.a.get_str() + " x " + c.b.get_str();
    if (c.mults.empty())
        out += ";)";
    else
        append_mults(out, c.mults);
    return out + (c.surface == Surface::F1 ? "@F1" : "@F0");
}

namespace {

// Recursive-descent reader for the canonical class grammar.
struct ClassReader {
    const std::string& s;
    std::size_t pos = 0;

    explicit ClassReader(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c))
            throw std::invalid_argument("parse_class: expected '" + std::string(1, c) +
                                        "' at offset " + std::to_string(pos) + " in \"" + s + "\"");
    }

    Int integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits)
            throw std::invalid_argument("parse_class: expected an integer at offset " +
                                        std::to_string(start) + " in \"" + s + "\"");
        return Int(s.substr(start, pos - start));
    }

    // m or m^count.
    void mult_entry(std::vector<Int>& out) {
        Int value = integer();
        if (eat('^')) {
            Int count = integer();
            if (count < 0) throw std::invalid_argument("parse_class: negative power run");
            for (Int i = 0; i < count; ++i) out.push_back(value);
        } else {
            out.push_back(value);
        }
    }

    std::vector<Int> mult_list() {
        std::vector<Int> out;
        skip_ws();
        if (pos < s.size() && s[pos] == ')') return out;
        mult_entry(out);
        while (eat(',')) mult_entry(out);
        return out;
    }

    void done() {
        skip_ws();
        if (pos != s.size())
            throw std::invalid_argument("parse_class: trailing input \"" + s.substr(pos) +
                                        "\" in \"" + s + "\"");
    }
};

}  // namespace

ParsedClass parse_class(const std::string& text) {
    ClassReader r(text);
    r.expect('(');
    Int first = r.integer();
    ParsedClass result;
    r.skip_ws();
    if (r.pos < r.s.size() && (r.s[r.pos] == ':' || r.s[r.pos] == 'x' || r.s[r.pos] == 'X')) {
        bool f1 = r.s[r.pos] == ':';
        ++r.pos;
        Int second = r.integer();
        r.expect(';');
        std::vector<Int> mults = r.mult_list();
        r.expect(')');
        r.expect('@');
        r.skip_ws();
        std::string tag;
        while (r.pos < r.s.size() && std::isalnum(static_cast<unsigned char>(r.s[r.pos])))
            tag += r.s[r.pos++];
        if (tag == "F1" || tag == "f1") {
            if (!f1) throw std::invalid_argument("parse_class: 'a x b' form tagged @F1");
            result.surface = ruled_f1(first, second, std::move(mults));
        } else if (tag == "F0" || tag == "f0") {
            if (f1) throw std::invalid_argument("parse_class: 'd:e' form tagged @F0");
            result.surface = ruled_f0(first, second, std::move(mults));
        } else {
            throw std::invalid_argument("parse_class: unknown surface tag \"" + tag + "\"");
        }
        result.ruled = true;
        r.done();
        return result;
    }
    r.expect(';');
    std::vector<Int> mults = r.mult_list();
    r.expect(')');
    r.done();
    result.plane = PicardClass{std::move(first), std::move(mults)};
    return result;
}

PicardClass parse_plane_class(const std::string& text) {
    ParsedClass p = parse_class(text);
    if (p.ruled)
        throw std::invalid_argument("expected a plane class (d; m...), got \"" + text + "\"");
    return std::move(p.plane);
}

RuledClass parse_ruled_class(const std::string& text) {
    ParsedClass p = parse_class(text);
    if (!p.ruled)
        throw std::invalid_argument("expected a ruled-surface class ...@F0/@F1, got \"" + text +
                                    "\"");
    return std::move(p.surface);
}

PicardClass sorted_desc(const PicardClass& c) {
    PicardClass out = c;
    std::stable_sort(out.mults.begin(), out.mults.end(),
                     [](const Int& x, const Int& y) { return x > y; });
    return out;
}

}  // namespace nagata
