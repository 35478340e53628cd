#pragma once

// Mosaic degenerations: the plane blown up at r points degenerates to a grid
// of a*b ruled components S_{i,j}, i = 1..a counted bottom-up, j = 1..b
// counted right-to-left.  Column 1 components are blowups of F1, every other
// column is a blowup of F0 = P1 x P1.  A bundle assigns column degrees u_j,
// row degrees v_i and distributes point multiplicities over the components;
// restriction to S_{i,j} and to the axes (the curves where components glue)
// is pure bookkeeping, and the conservation report checks that the
// component-wise numbers reassemble the generic ones.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nagata/picard.hpp"

namespace nagata {

struct Mosaic {
    std::size_t a = 1, b = 1;
    // points[i-1][j-1] = number of blown-up points on S_{i,j}.
    std::vector<std::vector<std::size_t>> points;
};

// a x b mosaic with no points.
Mosaic make_mosaic(std::size_t a, std::size_t b);
Mosaic make_mosaic(std::size_t a, std::size_t b, std::vector<std::vector<std::size_t>> points);

std::size_t total_points(const Mosaic& m);

struct MosaicBundle {
    std::vector<Int> u;  // size b: column degrees, u.front() for the F1 column
    std::vector<Int> v;  // size a: row degrees, bottom-up
    // mults[i-1][j-1]: the multiplicities at the points of S_{i,j}.
    std::vector<std::vector<std::vector<Int>>> mults;
};

MosaicBundle make_bundle(const Mosaic& m, std::vector<Int> u, std::vector<Int> v,
                         std::vector<std::vector<std::vector<Int>>> mults = {});

// Checks dimensions of (m, l) and throws std::invalid_argument on mismatch.
void validate(const Mosaic& m, const MosaicBundle& l);

// Restriction to component S_{i,j} (1-based):
//   j = 1:  ((u_1 - sum_{k<i} v_k) x v_i)_1, i.e. (d : d - v_i)@F1
//   j > 1:  (u_j x v_i)@F0
RuledClass restrict(const Mosaic& m, const MosaicBundle& l, std::size_t i, std::size_t j);

// Axes.  Horizontal axis i (0 <= i <= a) separates rows i and i+1 (0 and a
// are the boundary), with one subaxis A(i,j) per column; A(i,0) and A(i,1)
// both name the F1-column subaxis.  Vertical subaxis B(i,j) (1 <= i <= a,
// 0 <= j <= b) separates columns j and j+1 within row i.
struct SubaxisId {
    char axis;  // 'A' or 'B'
    std::size_t i, j;
};
std::string to_string(const SubaxisId& id);

// Degree of the restriction of the bundle to a subaxis:
//   A(i,0) = A(i,1) -> u_1 - sum_{k<=i} v_k;  A(i,j) for j >= 2 -> u_j;
//   B(i,j) -> v_i.
Int restrict_axis(const Mosaic& m, const MosaicBundle& l, const SubaxisId& id);

// The class of a subaxis inside its adjacent component, with zero
// multiplicities at that component's points; `side` picks the component:
// horizontal subaxes bound the component below ("top") and above ("bottom"),
// vertical subaxes bound the component to their right ("left") and to their
// left ("right") -- the side names say which edge of the *component* the
// subaxis lies on.
enum class Side { Bottom, Top, Right, Left };
std::string to_string(Side s);

RuledClass subaxis_class_in(const Mosaic& m, std::size_t i, std::size_t j, Side side);

// ((sum u) x (sum v))_1 carrying every multiplicity, ordered by component
// (i, j) lexicographically, then by point index.
RuledClass general_fibre(const Mosaic& m, const MosaicBundle& l);

// Conservation of intersection numbers under degeneration: the sum of the
// component self-intersections equals the self-intersection of the general
// fibre, and the sum of (K_{S_ij} + [interior subaxes of S_ij]).(L|S_ij)
// equals K.(general fibre).  The interior subaxes form the double locus.
struct ConservationReport {
    Int sum_self, gen_self;
    Int sum_adjoint, gen_adjoint;
    bool conserved() const { return sum_self == gen_self && sum_adjoint == gen_adjoint; }
};
ConservationReport conservation_report(const Mosaic& m, const MosaicBundle& l);

// A candidate limit cycle: one optional class per component (nullopt = the
// component carries nothing) plus the declared contact degree with each of
// the component's four subaxes.
struct CycleComponent {
    std::optional<RuledClass> cls;
    Int contact_bottom = 0, contact_top = 0, contact_right = 0, contact_left = 0;

    const Int& contact(Side s) const;
    Int& contact(Side s);
};

struct CandidateCycle {
    // components[i-1][j-1], same layout as Mosaic::points.
    std::vector<std::vector<CycleComponent>> components;
};

// A cycle is good when: shapes match the mosaic; declared contacts are
// nonnegative, reproduce the intersection numbers with the subaxis classes,
// and vanish on empty components; the two declarations along each interior
// subaxis agree; and the per-axis totals across each full interior horizontal
// axis agree (a consequence of the subaxis matching, checked independently).
struct GoodnessReport {
    bool good = true;
    std::vector<std::string> failures;  // each names the offending subaxis/component
};
GoodnessReport check_good(const Mosaic& m, const MosaicBundle& l, const CandidateCycle& z);

// Adds an empty column on the left (Horizontal) or an empty row at the
// bottom (Vertical).  Extending the bundle with degree 0 for the new column
// or row leaves every restriction and the general fibre unchanged.
enum class ExtendDirection { Horizontal, Vertical };
Mosaic extend(const Mosaic& m, ExtendDirection dir);
MosaicBundle extend(const Mosaic& m, const MosaicBundle& l, ExtendDirection dir);

}  // namespace nagata
