#pragma once

// Divisor classes on the blowup of the plane at r general points, in the
// basis (H; E_1..E_r): a class is written (d; m_1,...,m_r) for
// d*H - sum m_i E_i, with pairing  L.M = d d' - sum m_i m_i'.
//
// Classes on blowups of the Hirzebruch surfaces F_1 and F_0 = P1 x P1 carry a
// surface tag.  On F_1 we write (d : e; m...) for the class of H-degree d
// whose exceptional-section coefficient is e; the product norm is
// (u x v)_1 = (u : u - v).  On F_0, (a x b; m...) has bidegree (a, b).

#include <string>
#include <vector>

#include "nagata/numeric.hpp"

namespace nagata {

struct PicardClass {
    Int degree;
    std::vector<Int> mults;

    std::size_t r() const { return mults.size(); }

    bool operator==(const PicardClass&) const = default;
};

// d d' - sum m_i m_i'; the two classes must live on the same blowup.
Int intersect(const PicardClass& a, const PicardClass& b);

Int self_intersection(const PicardClass& c);

// K = (-3; -1, ..., -1).
PicardClass canonical_class(std::size_t r);

// K.L with K = canonical_class(r).
Int canonical_pairing(const PicardClass& c);

// Euler characteristic of the uniform system (d; mu^r):
// (d+1)(d+2)/2 - r mu(mu+1)/2.
Int chi(const Int& d, const Int& mu, const Int& r);

// Riemann-Roch characteristic 1 + (L.L - K.L)/2 of an arbitrary class.
Int chi_class(const PicardClass& c);

// Sign of sum(m) - sqrt(r) * d, decided exactly by comparing the squared
// integers (sum m)^2 and r d^2; the certificate carries both.
struct DeficitCertificate {
    int sign;        // -1, 0, +1
    Int mult_sum;    // sum m_i
    Int lhs_square;  // (sum m)^2, meaningful when mult_sum >= 0
    Int rhs_square;  // r d^2
};
DeficitCertificate nagata_deficit(const PicardClass& c);  // pre: degree >= 0

enum class Surface { F0, F1 };

struct RuledClass {
    Surface surface = Surface::F1;
    // F1: a = d (H-degree), b = e (exceptional-section coefficient).
    // F0: bidegree (a, b).
    Int a, b;
    std::vector<Int> mults;

    Int d() const { return a; }
    Int e() const { return b; }

    std::size_t r() const { return mults.size(); }

    bool operator==(const RuledClass&) const = default;
};

RuledClass ruled_f1(Int d, Int e, std::vector<Int> mults = {});
RuledClass ruled_f0(Int a, Int b, std::vector<Int> mults = {});
// (u x v)_1 = (u : u - v), the F1 class of product bidegree (u, v).
RuledClass ruled_f1_product(const Int& u, const Int& v, std::vector<Int> mults = {});

Int self_intersection(const RuledClass& c);  // F1: d^2-e^2-sum m^2; F0: 2ab-sum m^2

// -K.L: F1: 3d - e - sum m; F0: 2a + 2b - sum m.
Int anticanonical_degree(const RuledClass& c);

// Pairing of two classes on the same blown-up ruled surface.  Shorter
// multiplicity vectors are padded with zeros (classes that miss some of the
// blown-up points), so auxiliary curves can be paired with full restrictions.
Int pair_ruled(const RuledClass& x, const RuledClass& y);

// Canonical class of the ambient surface, with r multiplicity entries -1:
// F1: (-3 : -1; (-1)^r), F0: (-2 x -2; (-1)^r).
RuledClass ruled_canonical(Surface s, std::size_t r);

// Identification with plane classes.
// F1 (d : e; m...)  ->  (d; e, m...)   (contract the exceptional section).
// F0 (a x b; m1, m...) -> (a+b-m1; a-m1, b-m1, m...)  (needs >= 1 entry).
PicardClass from_ruled(const RuledClass& c);
// Inverse of from_ruled for the given target; F1 needs r >= 1, F0 needs r >= 2.
RuledClass to_ruled(const PicardClass& c, Surface target);

// Canonical textual forms, round-tripping through parse_class:
//   (d; m1,m2,...)      plane class
//   (d:e; m...)@F1      F1 class
//   (a x b; m...)@F0    F0 class
// Parsing is whitespace-insensitive and accepts power runs like 4^6.
std::string to_string(const PicardClass& c);
std::string to_string(const RuledClass& c);

struct ParsedClass {
    bool ruled = false;
    PicardClass plane;  // set when !ruled
    RuledClass surface;  // set when ruled
};
ParsedClass parse_class(const std::string& text);
PicardClass parse_plane_class(const std::string& text);
RuledClass parse_ruled_class(const std::string& text);

// Multiplicities sorted descending (stable).
PicardClass sorted_desc(const PicardClass& c);

}  // namespace nagata
