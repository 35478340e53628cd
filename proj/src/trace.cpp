#include "nagata/trace.hpp"

#include <algorithm>
#include <stdexcept>

namespace nagata {

namespace {

constexpr unsigned long kMaxCount = 20'000'000;

std::size_t to_count(const Int& n, const char* what) {
    if (n < 0)
        throw std::invalid_argument(std::string("trace: ") + what + " = " + to_string(n) +
                                    " is negative; these parameters admit no mosaic");
    if (!n.fits_ulong_p() || n.get_ui() > kMaxCount)
        throw std::invalid_argument(std::string("trace: ") + what + " = " + to_string(n) +
                                    " is too large to materialize");
    return static_cast<std::size_t>(n.get_ui());
}

std::vector<Int> repeat(const Int& value, std::size_t count) {
    return std::vector<Int>(count, value);
}

std::vector<Int> concat(std::vector<Int> head, const std::vector<Int>& tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
}

void add_check(TraceReport& rep, std::string name, bool pass, std::string detail = {}) {
    rep.pass = rep.pass && pass;
    rep.checks.push_back(TraceCheck{std::move(name), pass, std::move(detail)});
}

void add_margin(TraceReport& rep, std::string name, QuadraticExpr value, std::string claim) {
    TraceMargin m;
    m.name = std::move(name);
    m.value = std::move(value);
    m.sign = m.value.sign();
    m.claim = std::move(claim);
    if (m.claim == "positive")
        m.pass = m.sign > 0;
    else if (m.claim == "nonnegative")
        m.pass = m.sign >= 0;
    else if (m.claim == "negative")
        m.pass = m.sign < 0;
    else
        throw std::logic_error("add_margin: unknown claim " + m.claim);
    rep.pass = rep.pass && m.pass;
    rep.margins.push_back(std::move(m));
}

void require_hypothesis(TraceReport& rep, bool ok, std::string note) {
    if (!ok) {
        rep.hypothetical = true;
        rep.hypothesis_notes.push_back(std::move(note));
    }
}

void record_class(TraceReport& rep, std::string name, const RuledClass& c) {
    rep.classes.push_back(TraceClassEntry{std::move(name), to_string(c)});
}

void assert_class(TraceReport& rep, std::string name, const RuledClass& actual,
                  const RuledClass& expected) {
    bool ok = actual == expected;
    record_class(rep, name, actual);
    add_check(rep, name + "_matches",
              ok, ok ? "" : "expected " + to_string(expected) + ", computed " + to_string(actual));
}

bool same_multiset(const RuledClass& x, const RuledClass& y) {
    if (x.surface != y.surface || x.a != y.a || x.b != y.b) return false;
    std::vector<Int> mx = x.mults, my = y.mults;
    std::sort(mx.begin(), mx.end());
    std::sort(my.begin(), my.end());
    return mx == my;
}

void add_intersection(TraceReport& rep, std::string name, Rat value) {
    rep.intersections.push_back(TraceIntersection{std::move(name), std::move(value)});
}

TraceReport init_report(const char* step, const Int& r, const Int& mu, const Int& j) {
    if (r < 2) throw std::invalid_argument("trace: r must be >= 2");
    if (mu < 1) throw std::invalid_argument("trace: mu must be >= 1");
    if (j < 1) throw std::invalid_argument("trace: j must be >= 1");
    TraceReport rep;
    rep.step = step;
    rep.r = r;
    rep.mu = mu;
    rep.j = j;
    rep.k = isqrt(r);
    rep.alpha = r - rep.k * rep.k;
    rep.epsilon = QuadraticExpr::sqrt_of(r) - QuadraticExpr(rep.k);
    rep.coverage = theorem_covers(r);
    return rep;
}

void add_degree_margin(TraceReport& rep) {
    // d - sqrt(r) mu = j - eps mu: the system's degree clears the square-root
    // bound exactly when this is positive.
    add_margin(rep, "degree_margin", QuadraticExpr(rep.j) - rep.epsilon * QuadraticExpr(rep.mu),
               "positive");
}

void check_conservation(TraceReport& rep, const char* name, const Mosaic& m,
                        const MosaicBundle& l) {
    ConservationReport c = conservation_report(m, l);
    add_check(rep, name, c.conserved(),
              "self " + to_string(c.sum_self) + " vs " + to_string(c.gen_self) + ", adjoint " +
                  to_string(c.sum_adjoint) + " vs " + to_string(c.gen_adjoint));
}

// The step-2 source class (k mu + j : (k-1) mu; mu^(2k+alpha-1)).
RuledClass step2_source(const TraceReport& rep) {
    std::size_t n = to_count(2 * rep.k + rep.alpha - 1, "2k+alpha-1");
    return ruled_f1(rep.k * rep.mu + rep.j, (rep.k - 1) * rep.mu, repeat(rep.mu, n));
}

// The step-2 image class (k j + mu : (k-1) j; j^(2k-2) mu^(alpha+1)).
RuledClass step2_image(const TraceReport& rep) {
    std::size_t nj = to_count(2 * rep.k - 2, "2k-2");
    std::size_t nmu = to_count(rep.alpha + 1, "alpha+1");
    return ruled_f1(rep.k * rep.j + rep.mu, (rep.k - 1) * rep.j,
                    concat(repeat(rep.j, nj), repeat(rep.mu, nmu)));
}

void log_rule2(TraceReport& rep, const RuledClass& before, const RuledClass& after, long s,
               std::vector<std::size_t> designated) {
    rep.transforms.steps.push_back(
        TransformStep{"rule2", s, std::move(designated), to_string(before), to_string(after)});
}

}  // namespace

TraceReport trace_step1(const Int& r, const Int& mu, const Int& j) {
    TraceReport rep = init_report("step1", r, mu, j);
    require_hypothesis(rep, rep.alpha != 0, "r is a perfect square");
    require_hypothesis(rep, rep.k >= 3, "k < 3: below the theorem's range");
    std::size_t n1 = to_count(2 * rep.k + rep.alpha - 1, "2k+alpha-1");
    std::size_t n2 = to_count((rep.k - 1) * (rep.k - 1) - 1, "(k-1)^2-1");

    Mosaic m = make_mosaic(2, 1, {{n1}, {n2}});
    MosaicBundle l = make_bundle(m, {rep.k * rep.mu + rep.j}, {rep.mu + rep.j, (rep.k - 2) * rep.mu},
                                 {{repeat(rep.mu, n1)}, {repeat(rep.mu, n2)}});

    assert_class(rep, "L|S(1,1)", restrict(m, l, 1, 1), step2_source(rep));
    assert_class(rep, "L|S(2,1)", restrict(m, l, 2, 1),
                 ruled_f1((rep.k - 1) * rep.mu, rep.mu, repeat(rep.mu, n2)));
    RuledClass gen = general_fibre(m, l);
    assert_class(rep, "general_fibre", gen,
                 ruled_f1(rep.k * rep.mu + rep.j, rep.mu, repeat(rep.mu, n1 + n2)));
    check_conservation(rep, "conservation", m, l);

    // The generic class is (d; mu^r); its square-root deficit must agree in
    // sign with the exact degree margin.
    PicardClass generic = from_ruled(gen);
    DeficitCertificate cert = nagata_deficit(generic);
    add_degree_margin(rep);
    bool margin_positive = rep.margins.back().sign > 0;
    add_check(rep, "deficit_sign_matches_margin", (cert.sign < 0) == margin_positive,
              "(sum m)^2 = " + to_string(cert.lhs_square) + ", r d^2 = " +
                  to_string(cert.rhs_square));

    // The second component is mu times (k-1 : 1; 1^(n2)); contracting to the
    // plane gives the boundary system ((k-1); 1^((k-1)^2)).
    RuledClass unit = ruled_f1(rep.k - 1, 1, repeat(1, n2));
    record_class(rep, "limit_unit", unit);
    DeficitCertificate boundary = nagata_deficit(from_ruled(unit));
    add_check(rep, "limit_component_boundary", boundary.sign == 0,
              "(sum m)^2 = " + to_string(boundary.lhs_square) + ", r d^2 = " +
                  to_string(boundary.rhs_square));
    if (n2 + 1 <= 8) {
        NefVerdict nv = is_nef_small(from_ruled(unit));
        add_check(rep, "limit_component_nef_small", nv.nef,
                  nv.nef ? "nef against " + std::to_string(nv.tested) + " test classes"
                         : "violator " + to_string(*nv.violator));
    }
    return rep;
}

TraceReport trace_step2(const Int& r, const Int& mu, const Int& j) {
    TraceReport rep = init_report("step2", r, mu, j);
    require_hypothesis(rep, rep.alpha != 0, "r is a perfect square");
    require_hypothesis(rep, rep.k >= 3, "k < 3: below the theorem's range");

    RuledClass source = step2_source(rep);
    RuledClass expected = step2_image(rep);
    long s = static_cast<long>(rep.k.get_si()) - 1;
    std::vector<std::size_t> designated(to_count(2 * rep.k - 2, "2k-2"));
    for (std::size_t i = 0; i < designated.size(); ++i) designated[i] = i;

    RuledClass image = rule2(source, s, designated);
    record_class(rep, "source", source);
    log_rule2(rep, source, image, s, designated);
    assert_class(rep, "image", image, expected);

    add_check(rep, "self_intersection_conserved",
              self_intersection(source) == self_intersection(image),
              to_string(self_intersection(source)) + " vs " + to_string(self_intersection(image)));
    add_check(rep, "anticanonical_degree_conserved",
              anticanonical_degree(source) == anticanonical_degree(image),
              to_string(anticanonical_degree(source)) + " vs " +
                  to_string(anticanonical_degree(image)));

    // Independent oracle: rule2 with s = k-1 factors into k-1 elementary
    // transforms through the contracted point, centered at {0, 2i-1, 2i}.
    PicardClass plane = from_ruled(source);
    for (long i = 1; i <= s; ++i)
        plane = elementary_quadratic(plane, 0, 2 * static_cast<std::size_t>(i) - 1,
                                     2 * static_cast<std::size_t>(i));
    PicardClass target = from_ruled(image);
    PicardClass a = sorted_desc(plane), b = sorted_desc(target);
    add_check(rep, "elementary_factorization", a.degree == b.degree && a.mults == b.mults,
              "factored image " + to_string(a) + ", rule image " + to_string(b));

    add_degree_margin(rep);
    return rep;
}

TraceReport trace_step3(const Int& r, const Int& mu, const Int& j) {
    TraceReport rep = init_report("step3", r, mu, j);
    require_hypothesis(rep, rep.alpha % 2 == 1, "alpha is even: this is the odd-remainder step");
    require_hypothesis(rep, rep.coverage == Coverage::Case1,
                       "coverage is " + to_string(rep.coverage) + ", not Case1");
    require_hypothesis(rep, rep.k >= 3, "k < 3: below the theorem's range");

    std::size_t nmu = to_count(rep.alpha + 1, "alpha+1");
    std::size_t nj = to_count(2 * rep.k - 2, "2k-2");
    Mosaic m = make_mosaic(2, 1, {{nmu}, {nj}});
    MosaicBundle l = make_bundle(m, {rep.mu + rep.k * rep.j}, {rep.mu, rep.j},
                                 {{repeat(rep.mu, nmu)}, {repeat(rep.j, nj)}});

    RuledClass s1 = restrict(m, l, 1, 1);
    assert_class(rep, "L|S(1,1)", s1,
                 ruled_f1(rep.mu + rep.k * rep.j, rep.k * rep.j, repeat(rep.mu, nmu)));
    RuledClass s2 = restrict(m, l, 2, 1);
    assert_class(rep, "L|S(2,1)", s2,
                 ruled_f1(rep.k * rep.j, (rep.k - 1) * rep.j, repeat(rep.j, nj)));
    add_check(rep, "general_fibre_is_step2_image", same_multiset(general_fibre(m, l), step2_image(rep)),
              to_string(general_fibre(m, l)));
    check_conservation(rep, "conservation", m, l);

    // L.K for K = ((alpha+1)/2 : (alpha-1)/2; 1^(alpha+1)) on S(1,1).
    Rat lk = Rat(rep.k * rep.j) - make_rat(rep.mu * (rep.alpha + 1), 2);
    add_intersection(rep, "L.K", lk);
    if (rep.alpha % 2 == 1) {
        RuledClass kappa = ruled_f1((rep.alpha + 1) / 2, (rep.alpha - 1) / 2, repeat(1, nmu));
        record_class(rep, "K", kappa);
        add_check(rep, "LK_dual_route", Rat(pair_ruled(s1, kappa)) == lk,
                  "pairing " + to_string(pair_ruled(s1, kappa)) + ", formula " + to_string(lk));
    }

    // L.K >= -mu (1+eps^2)/2, with exact difference k (j - eps mu).
    QuadraticExpr eps = rep.epsilon;
    QuadraticExpr half = QuadraticExpr(make_rat(1, 2));
    QuadraticExpr bound = -(QuadraticExpr(rep.mu) * (QuadraticExpr(1) + eps * eps) * half);
    add_margin(rep, "LK_minus_bound", QuadraticExpr(lk) - bound, "positive");
    // eps (alpha-1)/2 - (1+eps^2)/2 >= 0 closes the step.
    add_margin(rep, "closing_margin",
               eps * QuadraticExpr(make_rat(rep.alpha - 1, 2)) -
                   (QuadraticExpr(1) + eps * eps) * half,
               "nonnegative");
    add_degree_margin(rep);

    if (nj + 1 <= 8) {
        RuledClass unit = ruled_f1(rep.k, rep.k - 1, repeat(1, nj));
        record_class(rep, "limit_unit", unit);
        NefVerdict nv = is_nef_small(from_ruled(unit));
        add_check(rep, "limit_component_nef_small", nv.nef,
                  nv.nef ? "nef against " + std::to_string(nv.tested) + " test classes"
                         : "violator " + to_string(*nv.violator));
    }
    return rep;
}

TraceReport trace_step4(const Int& r, const Int& mu, const Int& j) {
    TraceReport rep = init_report("step4", r, mu, j);
    require_hypothesis(rep, rep.alpha % 2 == 0, "alpha is odd: this is the even-remainder step");
    require_hypothesis(rep, rep.alpha >= 6, "alpha < 6: outside the covered even remainders");
    require_hypothesis(rep, rep.k >= 3, "k < 3: below the theorem's range");
    QuadraticExpr eps = rep.epsilon;
    QuadraticExpr sqrt3m1 = QuadraticExpr::sqrt_of(3) - QuadraticExpr(1);
    require_hypothesis(rep, QuadraticExpr::compare(eps, sqrt3m1) <= 0,
                       "eps > sqrt(3)-1: outside this step's regime");
    require_hypothesis(rep, rep.coverage == Coverage::Case2,
                       "coverage is " + to_string(rep.coverage) + ", not Case2");

    std::size_t na = to_count(rep.alpha - 1, "alpha-1");
    std::size_t nj = to_count(2 * rep.k - 2, "2k-2");

    Mosaic m = make_mosaic(3, 2, {{0, na}, {2, 0}, {nj, 0}});
    MosaicBundle l = make_bundle(
        m, {rep.j + rep.mu, (rep.k - 1) * rep.j}, {rep.mu, 0, rep.j},
        {{{}, repeat(rep.mu, na)}, {repeat(rep.mu, 2), {}}, {repeat(rep.j, nj), {}}});

    assert_class(rep, "L|S(1,1)", restrict(m, l, 1, 1), ruled_f1(rep.j + rep.mu, rep.j, {}));
    assert_class(rep, "L|S(2,1)", restrict(m, l, 2, 1),
                 ruled_f1(rep.j, rep.j, repeat(rep.mu, 2)));
    assert_class(rep, "L|S(3,1)", restrict(m, l, 3, 1), ruled_f1(rep.j, 0, repeat(rep.j, nj)));
    RuledClass s12 = restrict(m, l, 1, 2);
    assert_class(rep, "L|S(1,2)", s12,
                 ruled_f0((rep.k - 1) * rep.j, rep.mu, repeat(rep.mu, na)));
    assert_class(rep, "L|S(2,2)", restrict(m, l, 2, 2), ruled_f0((rep.k - 1) * rep.j, 0, {}));
    assert_class(rep, "L|S(3,2)", restrict(m, l, 3, 2), ruled_f0((rep.k - 1) * rep.j, rep.j, {}));
    add_check(rep, "general_fibre_is_step2_image",
              same_multiset(general_fibre(m, l), step2_image(rep)),
              to_string(general_fibre(m, l)));
    check_conservation(rep, "conservation", m, l);

    // Coarsening to one row: the F1 component keeps the two mu-points, the F0
    // component absorbs everything else.
    Mosaic mc = make_mosaic(1, 2, {{2, na + nj}});
    MosaicBundle lc = make_bundle(mc, {rep.j + rep.mu, (rep.k - 1) * rep.j}, {rep.mu + rep.j},
                                  {{repeat(rep.mu, 2), concat(repeat(rep.mu, na), repeat(rep.j, nj))}});
    RuledClass cs11 = restrict(mc, lc, 1, 1);
    assert_class(rep, "L|S'(1,1)", cs11, ruled_f1(rep.mu + rep.j, 0, repeat(rep.mu, 2)));
    assert_class(rep, "L|S'(1,2)", restrict(mc, lc, 1, 2),
                 ruled_f0((rep.k - 1) * rep.j, rep.mu + rep.j,
                          concat(repeat(rep.mu, na), repeat(rep.j, nj))));
    add_check(rep, "coarse_general_fibre_is_step2_image",
              same_multiset(general_fibre(mc, lc), step2_image(rep)),
              to_string(general_fibre(mc, lc)));
    check_conservation(rep, "coarse_conservation", mc, lc);

    // L.K for K = ((alpha/2 - 1) x 1; 1^(alpha-1)) on S(1,2).
    Rat lk = Rat((rep.k - 1) * rep.j) - make_rat(rep.mu * rep.alpha, 2);
    add_intersection(rep, "L.K", lk);
    if (rep.alpha % 2 == 0 && rep.alpha >= 2) {
        RuledClass kappa = ruled_f0(rep.alpha / 2 - 1, 1, repeat(1, na));
        record_class(rep, "K", kappa);
        add_check(rep, "LK_dual_route", Rat(pair_ruled(s12, kappa)) == lk,
                  "pairing " + to_string(pair_ruled(s12, kappa)) + ", formula " + to_string(lk));
    }
    // L.K >= mu (-eps - eps^2/2), exact difference (k-1)(j - eps mu).
    QuadraticExpr half = QuadraticExpr(make_rat(1, 2));
    QuadraticExpr bound = QuadraticExpr(rep.mu) * (-eps - eps * eps * half);
    add_margin(rep, "LK_minus_bound", QuadraticExpr(lk) - bound, "positive");

    // The unique negative curve: Lambda = (1 : 0; 1, 1) on S'(1,1).
    RuledClass lambda = ruled_f1(1, 0, {1, 1});
    record_class(rep, "Lambda", lambda);
    Int llambda = pair_ruled(cs11, lambda);
    add_intersection(rep, "L.Lambda", Rat(llambda));
    add_check(rep, "LLambda_formula", llambda == rep.j - rep.mu,
              to_string(llambda) + " vs j - mu = " + to_string(Int(rep.j - rep.mu)));
    add_margin(rep, "lambda_degree", QuadraticExpr(llambda), "negative");

    // Closing coefficients: any limit cycle degree is a nonnegative
    // combination with factors k eps - 2 and 1 - eps^2/2.
    add_margin(rep, "coefficient_keps_minus_2", QuadraticExpr(rep.k) * eps - QuadraticExpr(2),
               "nonnegative");
    add_margin(rep, "coefficient_one_minus_half_eps2",
               QuadraticExpr(1) - eps * eps * half, "positive");
    add_degree_margin(rep);
    return rep;
}

TraceReport trace_step5(const Int& r, const Int& mu, const Int& j) {
    TraceReport rep = init_report("step5", r, mu, j);
    require_hypothesis(rep, rep.alpha % 2 == 0, "alpha is odd: this is the even-remainder step");
    require_hypothesis(rep, rep.alpha >= 6, "alpha < 6: outside the covered even remainders");
    require_hypothesis(rep, rep.k >= 3, "k < 3: below the theorem's range");
    QuadraticExpr eps = rep.epsilon;
    QuadraticExpr half = QuadraticExpr(make_rat(1, 2));
    QuadraticExpr sqrt3m1 = QuadraticExpr::sqrt_of(3) - QuadraticExpr(1);
    QuadraticExpr two_sqrt2m2 =
        QuadraticExpr(2) * QuadraticExpr::sqrt_of(2) - QuadraticExpr(2);
    require_hypothesis(rep, QuadraticExpr::compare(eps, sqrt3m1) >= 0,
                       "eps < sqrt(3)-1: the previous step's regime");
    require_hypothesis(rep, QuadraticExpr::compare(eps, two_sqrt2m2) <= 0,
                       "eps > 2(sqrt(2)-1): outside the covered range");
    require_hypothesis(rep, rep.coverage == Coverage::Case2,
                       "coverage is " + to_string(rep.coverage) + ", not Case2");

    // Precondition 1/mu < 2 - 2 eps - eps^2/2, reported with its exact margin.
    QuadraticExpr threshold =
        QuadraticExpr(2) - QuadraticExpr(2) * eps - eps * eps * half;
    QuadraticExpr mu_gap = threshold - QuadraticExpr(make_rat(1, rep.mu));
    require_hypothesis(rep, mu_gap.sign() > 0, "1/mu >= 2 - 2 eps - eps^2/2: mu too small");
    add_margin(rep, "mu_threshold_margin", mu_gap, "positive");

    std::size_t na = to_count(rep.alpha - 1, "alpha-1");
    std::size_t nj = to_count(2 * rep.k - 4, "2k-4");

    Mosaic m = make_mosaic(2, 2, {{na + 2, 0}, {nj, 2}});
    MosaicBundle l = make_bundle(
        m, {rep.k * rep.j + rep.mu - 1, 1}, {rep.mu, rep.j},
        {{concat(repeat(rep.j, 2), repeat(rep.mu, na)), {}},
         {repeat(rep.j, nj), repeat(rep.mu, 2)}});

    assert_class(rep, "L|S(1,1)", restrict(m, l, 1, 1),
                 ruled_f1(rep.k * rep.j + rep.mu - 1, rep.k * rep.j - 1,
                          concat(repeat(rep.j, 2), repeat(rep.mu, na))));
    assert_class(rep, "L|S(2,1)", restrict(m, l, 2, 1),
                 ruled_f1(rep.k * rep.j - 1, (rep.k - 1) * rep.j - 1, repeat(rep.j, nj)));
    assert_class(rep, "L|S(1,2)", restrict(m, l, 1, 2), ruled_f0(1, rep.mu, {}));
    assert_class(rep, "L|S(2,2)", restrict(m, l, 2, 2), ruled_f0(1, rep.j, repeat(rep.mu, 2)));
    add_check(rep, "general_fibre_is_step2_image",
              same_multiset(general_fibre(m, l), step2_image(rep)),
              to_string(general_fibre(m, l)));
    check_conservation(rep, "conservation", m, l);

    // Coarsening to one column.
    Mosaic mc = make_mosaic(2, 1, {{na + 2}, {nj + 2}});
    MosaicBundle lc =
        make_bundle(mc, {rep.k * rep.j + rep.mu}, {rep.mu, rep.j},
                    {{concat(repeat(rep.j, 2), repeat(rep.mu, na))},
                     {concat(repeat(rep.j, nj), repeat(rep.mu, 2))}});
    RuledClass cs1 = restrict(mc, lc, 1, 1);
    assert_class(rep, "L|S'(1,1)", cs1,
                 ruled_f1(rep.k * rep.j + rep.mu, rep.k * rep.j,
                          concat(repeat(rep.j, 2), repeat(rep.mu, na))));
    RuledClass cs2 = restrict(mc, lc, 2, 1);
    assert_class(rep, "L|S'(2,1)", cs2,
                 ruled_f1(rep.k * rep.j, (rep.k - 1) * rep.j,
                          concat(repeat(rep.j, nj), repeat(rep.mu, 2))));
    add_check(rep, "coarse_general_fibre_is_step2_image",
              same_multiset(general_fibre(mc, lc), step2_image(rep)),
              to_string(general_fibre(mc, lc)));
    check_conservation(rep, "coarse_conservation", mc, lc);

    // K and J on S'(1,1): degree alpha/2 classes through all mu-points and
    // one j-point each.
    Rat lk = Rat((rep.k - 1) * rep.j) + Rat(rep.mu) - make_rat(rep.mu * rep.alpha, 2);
    add_intersection(rep, "L.K", lk);
    add_intersection(rep, "L.J", lk);
    if (rep.alpha % 2 == 0) {
        std::vector<Int> mk = concat({1, 0}, repeat(1, na));
        std::vector<Int> mj = concat({0, 1}, repeat(1, na));
        RuledClass kappa = ruled_f1(rep.alpha / 2, rep.alpha / 2 - 1, mk);
        RuledClass iota = ruled_f1(rep.alpha / 2, rep.alpha / 2 - 1, mj);
        record_class(rep, "K", kappa);
        record_class(rep, "J", iota);
        add_check(rep, "LK_dual_route",
                  Rat(pair_ruled(cs1, kappa)) == lk && Rat(pair_ruled(cs1, iota)) == lk,
                  "pairings " + to_string(pair_ruled(cs1, kappa)) + ", " +
                      to_string(pair_ruled(cs1, iota)) + ", formula " + to_string(lk));
    }
    // L.K >= mu (1 - eps - eps^2/2), exact difference (k-1)(j - eps mu).
    QuadraticExpr bound =
        QuadraticExpr(rep.mu) * (QuadraticExpr(1) - eps - eps * eps * half);
    add_margin(rep, "LK_minus_bound", QuadraticExpr(lk) - bound, "positive");

    // Cremona normal form of L|S'(2,1): clear the j-points with s = k-2, then
    // the mu-points with s = 1.
    RuledClass cur = cs2;
    if (nj > 0) {
        std::vector<std::size_t> des(nj);
        for (std::size_t i = 0; i < nj; ++i) des[i] = i;
        RuledClass next = rule2(cur, static_cast<long>(rep.k.get_si()) - 2, des);
        log_rule2(rep, cur, next, static_cast<long>(rep.k.get_si()) - 2, des);
        assert_class(rep, "normal_form_stage1", next,
                     ruled_f1(2 * rep.j, rep.j, concat(repeat(0, nj), repeat(rep.mu, 2))));
        cur = next;
    }
    {
        std::vector<std::size_t> des{nj, nj + 1};
        RuledClass next = rule2(cur, 1, des);
        log_rule2(rep, cur, next, 1, des);
        assert_class(rep, "normal_form", next,
                     ruled_f1(3 * rep.j - 2 * rep.mu, 2 * rep.j - 2 * rep.mu,
                              concat(repeat(0, nj), repeat(rep.j - rep.mu, 2))));
    }

    // Negative curves on S'(2,1): Lambda = (k-1 : k-2; 1^(2k-2)) and the two
    // rulings through the mu-points.
    RuledClass lambda = ruled_f1(rep.k - 1, rep.k - 2, repeat(1, nj + 2));
    record_class(rep, "Lambda", lambda);
    Int llambda = pair_ruled(cs2, lambda);
    add_intersection(rep, "L.Lambda", Rat(llambda));
    add_check(rep, "LLambda_formula", llambda == 2 * (rep.j - rep.mu),
              to_string(llambda) + " vs 2(j - mu) = " + to_string(Int(2 * (rep.j - rep.mu))));
    add_margin(rep, "lambda_degree", QuadraticExpr(llambda), "negative");
    // L.Lambda >= 2 mu (eps - 1), exact difference 2 (j - eps mu).
    add_margin(rep, "lambda_minus_bound",
               QuadraticExpr(llambda) -
                   QuadraticExpr(Int(2 * rep.mu)) * (eps - QuadraticExpr(1)),
               "positive");

    RuledClass ruling1 = ruled_f1(1, 1, concat(repeat(0, nj), {1, 0}));
    RuledClass ruling2 = ruled_f1(1, 1, concat(repeat(0, nj), {0, 1}));
    record_class(rep, "R1", ruling1);
    record_class(rep, "R2", ruling2);
    Int lruling = pair_ruled(cs2, ruling1);
    add_intersection(rep, "L.R", Rat(lruling));
    add_check(rep, "ruling_degrees_equal", pair_ruled(cs2, ruling2) == lruling,
              to_string(pair_ruled(cs2, ruling2)) + " vs " + to_string(lruling));
    add_check(rep, "LR_formula", lruling == rep.j - rep.mu,
              to_string(lruling) + " vs j - mu = " + to_string(Int(rep.j - rep.mu)));
    add_margin(rep, "ruling_minus_bound",
               QuadraticExpr(lruling) - QuadraticExpr(rep.mu) * (eps - QuadraticExpr(1)),
               "positive");

    // The fine mosaic splits Lambda into Lambda1 on S(2,1) and Lambda2 on
    // S(2,2); their L-degrees must reassemble L.Lambda.
    RuledClass lambda1 = ruled_f1(rep.k - 2, rep.k - 3, repeat(1, nj));
    RuledClass lambda2 = ruled_f0(1, 1, {1, 1});
    record_class(rep, "Lambda1", lambda1);
    record_class(rep, "Lambda2", lambda2);
    Int l1 = pair_ruled(restrict(m, l, 2, 1), lambda1);
    Int l2 = pair_ruled(restrict(m, l, 2, 2), lambda2);
    add_intersection(rep, "L.Lambda1", Rat(l1));
    add_intersection(rep, "L.Lambda2", Rat(l2));
    add_check(rep, "lambda_limit_conservation", l1 + l2 == llambda,
              to_string(l1) + " + " + to_string(l2) + " vs " + to_string(llambda));

    // The closing quadratic (5/2) eps^2 - (3 + 3/k) eps + (1 + 2/k).
    QuadraticExpr quad = QuadraticExpr(make_rat(5, 2)) * eps * eps -
                         (QuadraticExpr(3) + QuadraticExpr(make_rat(3, rep.k))) * eps +
                         QuadraticExpr(1) + QuadraticExpr(make_rat(2, rep.k));
    Rat disc = step5_discriminant(rep.k);
    add_intersection(rep, "quadratic_discriminant", disc);
    add_margin(rep, "quadratic_value", quad, "nonnegative");
    add_margin(rep, "quadratic_discriminant", QuadraticExpr(disc), "negative");
    add_margin(rep, "two_eps_minus_one", QuadraticExpr(2) * eps - QuadraticExpr(1), "positive");
    // (alpha/2 - 1) - (k eps - 1) = eps^2 / 2.
    add_margin(rep, "axis_degree_gap",
               QuadraticExpr(make_rat(rep.alpha, 2)) - QuadraticExpr(rep.k) * eps,
               "positive");
    add_degree_margin(rep);
    return rep;
}

Rat step5_discriminant(const Int& k) {
    if (k == 0) throw std::invalid_argument("step5_discriminant: k must be nonzero");
    // (3 + 3/k)^2 - 4 (5/2)(1 + 2/k) = 9/k^2 - 2/k - 1.
    return make_rat(9, k * k) - make_rat(2, k) - 1;
}

}  // namespace nagata
