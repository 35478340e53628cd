#include "nagata/mosaic.hpp"

#include <stdexcept>

namespace nagata {

Mosaic make_mosaic(std::size_t a, std::size_t b) {
    if (a < 1 || b < 1) throw std::invalid_argument("make_mosaic: need a, b >= 1");
    Mosaic m;
    m.a = a;
    m.b = b;
    m.points.assign(a, std::vector<std::size_t>(b, 0));
    return m;
}

Mosaic make_mosaic(std::size_t a, std::size_t b, std::vector<std::vector<std::size_t>> points) {
    Mosaic m = make_mosaic(a, b);
    if (points.size() != a) throw std::invalid_argument("make_mosaic: points row count != a");
    for (const auto& row : points)
        if (row.size() != b) throw std::invalid_argument("make_mosaic: points column count != b");
    m.points = std::move(points);
    return m;
}

std::size_t total_points(const Mosaic& m) {
    std::size_t n = 0;
    for (const auto& row : m.points)
        for (std::size_t p : row) n += p;
    return n;
}

MosaicBundle make_bundle(const Mosaic& m, std::vector<Int> u, std::vector<Int> v,
                         std::vector<std::vector<std::vector<Int>>> mults) {
    MosaicBundle l;
    l.u = std::move(u);
    l.v = std::move(v);
    if (mults.empty()) {
        l.mults.resize(m.a);
        for (std::size_t i = 0; i < m.a; ++i) {
            l.mults[i].resize(m.b);
            for (std::size_t j = 0; j < m.b; ++j)
                l.mults[i][j].assign(m.points[i][j], Int(0));
        }
    } else {
        l.mults = std::move(mults);
    }
    validate(m, l);
    return l;
}

void validate(const Mosaic& m, const MosaicBundle& l) {
    if (l.u.size() != m.b)
        throw std::invalid_argument("bundle: u has " + std::to_string(l.u.size()) +
                                    " entries, mosaic has " + std::to_string(m.b) + " columns");
    if (l.v.size() != m.a)
        throw std::invalid_argument("bundle: v has " + std::to_string(l.v.size()) +
                                    " entries, mosaic has " + std::to_string(m.a) + " rows");
    if (l.mults.size() != m.a) throw std::invalid_argument("bundle: multiplicity row count != a");
    for (std::size_t i = 0; i < m.a; ++i) {
        if (l.mults[i].size() != m.b)
            throw std::invalid_argument("bundle: multiplicity column count != b");
        for (std::size_t j = 0; j < m.b; ++j)
            if (l.mults[i][j].size() != m.points[i][j])
                throw std::invalid_argument("bundle: component (" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) + ") has " +
                                            std::to_string(m.points[i][j]) + " points but " +
                                            std::to_string(l.mults[i][j].size()) +
                                            " multiplicities");
    }
}

namespace {

void check_component_index(const Mosaic& m, std::size_t i, std::size_t j) {
    if (i < 1 || i > m.a || j < 1 || j > m.b)
        throw std::invalid_argument("component index (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") outside " + std::to_string(m.a) + "x" +
                                    std::to_string(m.b) + " mosaic");
}

// u_1 - sum_{k < i} v_k, the F1-column degree above row i-1.
Int f1_column_degree(const MosaicBundle& l, std::size_t i) {
    Int d = l.u.front();
    for (std::size_t k = 0; k + 1 < i; ++k) d -= l.v[k];
    return d;
}

}  // namespace

RuledClass restrict(const Mosaic& m, const MosaicBundle& l, std::size_t i, std::size_t j) {
    validate(m, l);
    check_component_index(m, i, j);
    const std::vector<Int>& mults = l.mults[i - 1][j - 1];
    if (j == 1) {
        Int d = f1_column_degree(l, i);
        return ruled_f1(d, d - l.v[i - 1], mults);
    }
    return ruled_f0(l.u[j - 1], l.v[i - 1], mults);
}

std::string to_string(const SubaxisId& id) {
    return std::string(1, id.axis) + "(" + std::to_string(id.i) + "," + std::to_string(id.j) +
           ")";
}

Int restrict_axis(const Mosaic& m, const MosaicBundle& l, const SubaxisId& id) {
    validate(m, l);
    if (id.axis == 'A') {
        if (id.i > m.a || id.j > m.b)
            throw std::invalid_argument("restrict_axis: " + to_string(id) + " out of range");
        if (id.j <= 1) {  // A(i,0) and A(i,1) are the F1-column subaxis
            Int d = f1_column_degree(l, id.i + 1);
            return d;
        }
        return l.u[id.j - 1];
    }
    if (id.axis == 'B') {
        if (id.i < 1 || id.i > m.a || id.j > m.b)
            throw std::invalid_argument("restrict_axis: " + to_string(id) + " out of range");
        return l.v[id.i - 1];
    }
    throw std::invalid_argument("restrict_axis: axis must be 'A' or 'B'");
}

std::string to_string(Side s) {
    switch (s) {
        case Side::Bottom: return "bottom";
        case Side::Top: return "top";
        case Side::Right: return "right";
        case Side::Left: return "left";
    }
    return "?";
}

RuledClass subaxis_class_in(const Mosaic& m, std::size_t i, std::size_t j, Side side) {
    check_component_index(m, i, j);
    std::vector<Int> zeros(m.points[i - 1][j - 1], Int(0));
    if (j == 1) {
        switch (side) {
            case Side::Bottom: return ruled_f1(1, 0, std::move(zeros));
            case Side::Top: return ruled_f1(0, -1, std::move(zeros));
            case Side::Right:
            case Side::Left: return ruled_f1(1, 1, std::move(zeros));  // a fibre
        }
    }
    switch (side) {
        case Side::Bottom:
        case Side::Top: return ruled_f0(0, 1, std::move(zeros));
        case Side::Right:
        case Side::Left: return ruled_f0(1, 0, std::move(zeros));
    }
    throw std::logic_error("subaxis_class_in: unreachable");
}

RuledClass general_fibre(const Mosaic& m, const MosaicBundle& l) {
    validate(m, l);
    std::vector<Int> mults;
    mults.reserve(total_points(m));
    for (std::size_t i = 0; i < m.a; ++i)
        for (std::size_t j = 0; j < m.b; ++j)
            mults.insert(mults.end(), l.mults[i][j].begin(), l.mults[i][j].end());
    return ruled_f1_product(sum_of(l.u), sum_of(l.v), std::move(mults));
}

namespace {

// K_{S_ij} twisted by the interior subaxes of the component: the adjoint
// class whose pairing with the restrictions is conserved in the limit.
RuledClass adjoint_twist(const Mosaic& m, std::size_t i, std::size_t j) {
    RuledClass t = ruled_canonical(j == 1 ? Surface::F1 : Surface::F0, m.points[i - 1][j - 1]);
    auto add = [&t, &m, i, j](Side side) {
        RuledClass ax = subaxis_class_in(m, i, j, side);
        t.a += ax.a;
        t.b += ax.b;
    };
    if (i < m.a) add(Side::Top);
    if (i > 1) add(Side::Bottom);
    if (j < m.b) add(Side::Left);
    if (j > 1) add(Side::Right);
    return t;
}

}  // namespace

ConservationReport conservation_report(const Mosaic& m, const MosaicBundle& l) {
    validate(m, l);
    ConservationReport rep;
    rep.sum_self = 0;
    rep.sum_adjoint = 0;
    for (std::size_t i = 1; i <= m.a; ++i) {
        for (std::size_t j = 1; j <= m.b; ++j) {
            RuledClass li = restrict(m, l, i, j);
            rep.sum_self += self_intersection(li);
            rep.sum_adjoint += pair_ruled(adjoint_twist(m, i, j), li);
        }
    }
    RuledClass gen = general_fibre(m, l);
    rep.gen_self = self_intersection(gen);
    rep.gen_adjoint = pair_ruled(ruled_canonical(Surface::F1, gen.r()), gen);
    return rep;
}

const Int& CycleComponent::contact(Side s) const {
    switch (s) {
        case Side::Bottom: return contact_bottom;
        case Side::Top: return contact_top;
        case Side::Right: return contact_right;
        case Side::Left: return contact_left;
    }
    throw std::logic_error("CycleComponent::contact: unreachable");
}

Int& CycleComponent::contact(Side s) {
    return const_cast<Int&>(static_cast<const CycleComponent&>(*this).contact(s));
}

GoodnessReport check_good(const Mosaic& m, const MosaicBundle& l, const CandidateCycle& z) {
    validate(m, l);
    if (z.components.size() != m.a)
        throw std::invalid_argument("check_good: cycle row count != a");
    for (std::size_t i = 0; i < m.a; ++i)
        if (z.components[i].size() != m.b)
            throw std::invalid_argument("check_good: cycle column count != b");
    for (std::size_t i = 1; i <= m.a; ++i) {
        for (std::size_t j = 1; j <= m.b; ++j) {
            const CycleComponent& comp = z.components[i - 1][j - 1];
            if (!comp.cls) continue;
            Surface expected = j == 1 ? Surface::F1 : Surface::F0;
            if (comp.cls->surface != expected)
                throw std::invalid_argument("check_good: component (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") has the wrong surface tag");
            if (comp.cls->r() != m.points[i - 1][j - 1])
                throw std::invalid_argument("check_good: component (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") has " +
                                            std::to_string(comp.cls->r()) +
                                            " multiplicities, mosaic has " +
                                            std::to_string(m.points[i - 1][j - 1]) + " points");
        }
    }

    GoodnessReport rep;
    auto fail = [&rep](std::string msg) {
        rep.good = false;
        rep.failures.push_back(std::move(msg));
    };
    auto name = [](std::size_t i, std::size_t j) {
        return "S(" + std::to_string(i) + "," + std::to_string(j) + ")";
    };

    for (std::size_t i = 1; i <= m.a; ++i) {
        for (std::size_t j = 1; j <= m.b; ++j) {
            const CycleComponent& comp = z.components[i - 1][j - 1];
            for (Side side : {Side::Bottom, Side::Top, Side::Right, Side::Left}) {
                const Int& declared = comp.contact(side);
                if (declared < 0)
                    fail(name(i, j) + " declares negative contact on its " + to_string(side) +
                         " subaxis");
                if (!comp.cls) {
                    if (declared != 0)
                        fail(name(i, j) + " is empty but declares contact " +
                             to_string(declared) + " on its " + to_string(side) + " subaxis");
                    continue;
                }
                Int actual = pair_ruled(*comp.cls, subaxis_class_in(m, i, j, side));
                if (actual != declared)
                    fail(name(i, j) + " declares contact " + to_string(declared) + " on its " +
                         to_string(side) + " subaxis but the class pairs to " +
                         to_string(actual));
            }
        }
    }

    // Interior matching, subaxis by subaxis.
    for (std::size_t i = 1; i + 1 <= m.a; ++i) {
        for (std::size_t j = 1; j <= m.b; ++j) {
            const Int& below = z.components[i - 1][j - 1].contact_top;
            const Int& above = z.components[i][j - 1].contact_bottom;
            if (below != above)
                fail("subaxis " + to_string(SubaxisId{'A', i, j}) + " sees contact " +
                     to_string(below) + " from " + name(i, j) + " but " + to_string(above) +
                     " from " + name(i + 1, j));
        }
    }
    for (std::size_t i = 1; i <= m.a; ++i) {
        for (std::size_t j = 1; j + 1 <= m.b; ++j) {
            const Int& right_comp = z.components[i - 1][j - 1].contact_left;
            const Int& left_comp = z.components[i - 1][j].contact_right;
            if (right_comp != left_comp)
                fail("subaxis " + to_string(SubaxisId{'B', i, j}) + " sees contact " +
                     to_string(right_comp) + " from " + name(i, j) + " but " +
                     to_string(left_comp) + " from " + name(i, j + 1));
        }
    }

    // Whole-axis totals across each interior horizontal axis.
    for (std::size_t i = 1; i + 1 <= m.a; ++i) {
        Int below = 0, above = 0;
        for (std::size_t j = 1; j <= m.b; ++j) {
            below += z.components[i - 1][j - 1].contact_top;
            above += z.components[i][j - 1].contact_bottom;
        }
        if (below != above)
            fail("horizontal axis " + std::to_string(i) + " total contact " + to_string(below) +
                 " from below != " + to_string(above) + " from above");
    }
    return rep;
}

Mosaic extend(const Mosaic& m, ExtendDirection dir) {
    Mosaic out = m;
    if (dir == ExtendDirection::Horizontal) {
        ++out.b;
        for (auto& row : out.points) row.push_back(0);
    } else {
        ++out.a;
        out.points.insert(out.points.begin(), std::vector<std::size_t>(m.b, 0));
    }
    return out;
}

MosaicBundle extend(const Mosaic& m, const MosaicBundle& l, ExtendDirection dir) {
    validate(m, l);
    MosaicBundle out = l;
    if (dir == ExtendDirection::Horizontal) {
        out.u.push_back(0);
        for (auto& row : out.mults) row.emplace_back();
    } else {
        out.v.insert(out.v.begin(), Int(0));
        out.mults.insert(out.mults.begin(),
                         std::vector<std::vector<Int>>(m.b, std::vector<Int>{}));
    }
    return out;
}

}  // namespace nagata
