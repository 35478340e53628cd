#include "nagata/jsonio.hpp"

#include <sstream>
#include <stdexcept>

namespace nagata {

Json json_of(const Int& x) {
    if (x.fits_slong_p()) return Json(x.get_si());
    return Json(to_string(x));
}

Json json_of(const Rat& q) {
    return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

Json json_of(const QuadraticExpr& e) {
    Json terms = Json::object();
    for (const auto& [radicand, coeff] : e.terms()) terms[to_string(radicand)] = to_string(coeff);
    return Json{{"terms", terms}, {"decimal", e.decimal()}};
}

Json json_of(const PicardClass& c) { return Json(to_string(c)); }
Json json_of(const RuledClass& c) { return Json(to_string(c)); }

Json json_of(const DeficitCertificate& c) {
    return Json{{"sign", c.sign},
                {"mult_sum", json_of(c.mult_sum)},
                {"lhs_square", json_of(c.lhs_square)},
                {"rhs_square", json_of(c.rhs_square)}};
}

Json json_of(const TransformStep& s) {
    Json params = Json::object();
    if (s.s) params["s"] = *s.s;
    params["indices"] = s.indices;
    return Json{{"kind", s.kind}, {"params", params}, {"before", s.before}, {"after", s.after}};
}

Json json_of(const TransformLog& log) {
    Json steps = Json::array();
    for (const auto& s : log.steps) steps.push_back(json_of(s));
    return steps;
}

Json json_of(const ReduceResult& r) {
    return Json{{"result", json_of(r.result)},
                {"status", r.status == ReduceStatus::Standard ? "standard" : "degree-negative"},
                {"log", json_of(r.log)}};
}

Json json_of(const NefVerdict& v) {
    Json j{{"nef", v.nef}, {"tested", v.tested}};
    j["violator"] = v.violator ? json_of(*v.violator) : Json(nullptr);
    j["violation"] = v.violator ? json_of(v.violation) : Json(nullptr);
    return j;
}

Json json_of(const TwoPointNefReport& r) {
    Json j{{"nef", r.nef}, {"branch", r.branch}};
    Json obs = Json::array();
    for (const auto& o : r.obstructions) obs.push_back(json_of(o));
    j["obstructions"] = obs;
    if (r.branch == "ruling-obstruction") {
        j["obstruction_degree"] = json_of(r.obstruction_degree);
        j["rule1_image"] = json_of(r.rule1_image);
    }
    j["cross_check"] = json_of(r.cross_check);
    j["consistent"] = r.consistent;
    return j;
}

Json json_of(const Mosaic& m) {
    return Json{{"a", m.a}, {"b", m.b}, {"points", m.points}};
}

Json json_of(const MosaicBundle& l) {
    Json u = Json::array(), v = Json::array(), mm = Json::array();
    for (const auto& x : l.u) u.push_back(json_of(x));
    for (const auto& x : l.v) v.push_back(json_of(x));
    for (const auto& row : l.mults) {
        Json jr = Json::array();
        for (const auto& cell : row) {
            Json jc = Json::array();
            for (const auto& x : cell) jc.push_back(json_of(x));
            jr.push_back(jc);
        }
        mm.push_back(jr);
    }
    return Json{{"u", u}, {"v", v}, {"m", mm}};
}

Json json_of(const CandidateCycle& z) {
    Json rows = Json::array();
    for (const auto& row : z.components) {
        Json jr = Json::array();
        for (const auto& comp : row) {
            Json jc = Json::object();
            jc["class"] = comp.cls ? json_of(*comp.cls) : Json(nullptr);
            jc["contact"] = Json{{"bottom", json_of(comp.contact_bottom)},
                                 {"top", json_of(comp.contact_top)},
                                 {"right", json_of(comp.contact_right)},
                                 {"left", json_of(comp.contact_left)}};
            jr.push_back(jc);
        }
        rows.push_back(jr);
    }
    return Json{{"components", rows}};
}

Json json_of(const ConservationReport& r) {
    return Json{{"sum_self", json_of(r.sum_self)},
                {"gen_self", json_of(r.gen_self)},
                {"sum_adjoint", json_of(r.sum_adjoint)},
                {"gen_adjoint", json_of(r.gen_adjoint)},
                {"conserved", r.conserved()}};
}

Json json_of(const GoodnessReport& r) {
    return Json{{"good", r.good}, {"failures", r.failures}};
}

Json json_of(const SqrtProfile& p) {
    return Json{{"r", json_of(p.r)},
                {"k", json_of(p.k)},
                {"alpha", json_of(p.alpha)},
                {"square", p.square},
                {"epsilon", json_of(p.epsilon)},
                {"coverage", to_string(p.coverage)}};
}

Json json_of(const CorollaryResult& r) {
    return Json{{"holds", r.holds},
                {"chi", json_of(r.chi_value)},
                {"threshold", json_of(r.threshold)},
                {"coverage", to_string(r.coverage)}};
}

Json json_of(const NefTarget& t) {
    return Json{{"d", json_of(t.d)},
                {"d_square", json_of(t.d_square)},
                {"r_mu_square", json_of(t.r_mu_square)}};
}

Json json_of(const TraceReport& r) {
    Json classes = Json::array();
    for (const auto& c : r.classes) classes.push_back(Json{{"name", c.name}, {"class", c.cls}});
    Json inter = Json::array();
    for (const auto& x : r.intersections)
        inter.push_back(Json{{"name", x.name}, {"value", json_of(x.value)}});
    Json margins = Json::array();
    for (const auto& m : r.margins)
        margins.push_back(Json{{"name", m.name},
                               {"value", json_of(m.value)},
                               {"sign", m.sign},
                               {"claim", m.claim},
                               {"pass", m.pass}});
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return Json{{"step", r.step},
                {"r", json_of(r.r)},
                {"mu", json_of(r.mu)},
                {"j", json_of(r.j)},
                {"k", json_of(r.k)},
                {"alpha", json_of(r.alpha)},
                {"epsilon", json_of(r.epsilon)},
                {"coverage", to_string(r.coverage)},
                {"hypothetical", r.hypothetical},
                {"hypothesis_notes", r.hypothesis_notes},
                {"classes", classes},
                {"intersections", inter},
                {"margins", margins},
                {"checks", checks},
                {"transforms", json_of(r.transforms)},
                {"pass", r.pass}};
}

Json json_of(const H0Result& r) {
    Json coranks = Json::array();
    for (const auto& c : r.coranks) coranks.push_back(json_of(c));
    return Json{{"h0", json_of(r.h0)},
                {"expected", json_of(r.expected)},
                {"special", r.special},
                {"coranks", coranks},
                {"rows", json_of(r.rows)},
                {"cols", json_of(r.cols)},
                {"clamped", r.clamped}};
}

Json json_of(const HrCheck& r) {
    return Json{{"independent", r.independent},
                {"h0", json_of(r.h0)},
                {"chi", json_of(r.chi)},
                {"detail", json_of(r.detail)}};
}

Json json_of(const InvarianceResult& r) {
    return Json{{"equal", r.equal},
                {"image", json_of(r.image)},
                {"before", json_of(r.before)},
                {"after", json_of(r.after)}};
}

Json json_of(const NefCrossCheck& r) {
    Json cx = Json::array();
    for (const auto& c : r.counterexamples) cx.push_back(json_of(c));
    Json j{{"consistent", r.consistent}, {"verdict", json_of(r.verdict)}};
    j["counterexamples"] = cx;
    j["violator_h0"] = r.violator_h0 ? json_of(*r.violator_h0) : Json(nullptr);
    j["scanned"] = r.scanned;
    return j;
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer or a decimal string, got " + j.dump());
}

Mosaic mosaic_from_json(const Json& j) {
    std::vector<std::vector<std::size_t>> points;
    for (const auto& row : j.at("points")) {
        points.emplace_back();
        for (const auto& x : row) points.back().push_back(x.get<std::size_t>());
    }
    return make_mosaic(j.at("a").get<std::size_t>(), j.at("b").get<std::size_t>(),
                       std::move(points));
}

static std::vector<Int> int_list(const Json& j) {
    std::vector<Int> out;
    for (const auto& x : j) out.push_back(int_from_json(x));
    return out;
}

MosaicBundle bundle_from_json(const Json& j) {
    MosaicBundle l;
    l.u = int_list(j.at("u"));
    l.v = int_list(j.at("v"));
    for (const auto& row : j.at("m")) {
        l.mults.emplace_back();
        for (const auto& cell : row) l.mults.back().push_back(int_list(cell));
    }
    return l;
}

CandidateCycle cycle_from_json(const Json& j, const Mosaic& m) {
    CandidateCycle z;
    const Json& rows = j.at("components");
    for (const auto& row : rows) {
        z.components.emplace_back();
        for (const auto& jc : row) {
            CycleComponent comp;
            if (jc.contains("class") && !jc.at("class").is_null())
                comp.cls = parse_ruled_class(jc.at("class").get<std::string>());
            if (jc.contains("contact")) {
                const Json& ct = jc.at("contact");
                if (ct.contains("bottom")) comp.contact_bottom = int_from_json(ct.at("bottom"));
                if (ct.contains("top")) comp.contact_top = int_from_json(ct.at("top"));
                if (ct.contains("right")) comp.contact_right = int_from_json(ct.at("right"));
                if (ct.contains("left")) comp.contact_left = int_from_json(ct.at("left"));
            }
            z.components.back().push_back(std::move(comp));
        }
    }
    if (z.components.size() != m.a)
        throw std::invalid_argument("cycle has " + std::to_string(z.components.size()) +
                                    " rows, mosaic has " + std::to_string(m.a));
    return z;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_of_profiles(const std::vector<SqrtProfile>& rows) {
    std::ostringstream out;
    out << "r,k,alpha,epsilon,coverage\n";
    for (const auto& p : rows)
        out << to_string(p.r) << ',' << to_string(p.k) << ',' << to_string(p.alpha) << ','
            << p.epsilon.decimal() << ',' << to_string(p.coverage) << '\n';
    return out.str();
}

}  // namespace nagata
