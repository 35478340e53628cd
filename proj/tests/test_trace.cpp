#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>

#include "nagata/jsonio.hpp"
#include "nagata/trace.hpp"

using namespace nagata;

namespace {

const TraceCheck* find_check(const TraceReport& rep, const std::string& name) {
    for (const TraceCheck& c : rep.checks)
        if (c.name == name) return &c;
    return nullptr;
}

const TraceMargin* find_margin(const TraceReport& rep, const std::string& name) {
    for (const TraceMargin& m : rep.margins)
        if (m.name == name) return &m;
    return nullptr;
}

std::string class_of(const TraceReport& rep, const std::string& name) {
    for (const TraceClassEntry& e : rep.classes)
        if (e.name == name) return e.cls;
    return "<missing " + name + ">";
}

Rat intersection_of(const TraceReport& rep, const std::string& name) {
    for (const TraceIntersection& e : rep.intersections)
        if (e.name == name) return e.value;
    throw std::runtime_error("no intersection named " + name);
}

bool check_passes(const TraceReport& rep, const std::string& name) {
    const TraceCheck* c = find_check(rep, name);
    return c != nullptr && c->pass;
}

}  // namespace

TEST_CASE("step 1 splits the uniform system across two components") {
    TraceReport rep = trace_step1(14, 4, 3);
    CHECK(rep.step == "step1");
    CHECK(rep.k == 3);
    CHECK(rep.alpha == 5);
    CHECK(rep.coverage == Coverage::Case1);
    CHECK(!rep.hypothetical);
    CHECK(rep.pass);

    CHECK(class_of(rep, "L|S(1,1)") == "(15:8; 4,4,4,4,4,4,4,4,4,4)@F1");
    CHECK(class_of(rep, "L|S(2,1)") == "(8:4; 4,4,4)@F1");
    CHECK(class_of(rep, "general_fibre") == "(15:4; 4,4,4,4,4,4,4,4,4,4,4,4,4)@F1");
    CHECK(check_passes(rep, "conservation"));
    CHECK(check_passes(rep, "deficit_sign_matches_margin"));

    const TraceMargin* dm = find_margin(rep, "degree_margin");
    REQUIRE(dm != nullptr);
    CHECK(dm->pass);
    CHECK(dm->claim == "positive");
    CHECK(dm->sign == 1);
    // j - eps mu = 15 - 4 sqrt(14)
    CHECK(dm->value == QuadraticExpr(15) - QuadraticExpr(4) * QuadraticExpr::sqrt_of(14));

    CHECK_THROWS_AS(trace_step1(1, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(trace_step1(14, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(trace_step1(14, 4, 0), std::invalid_argument);
    // k = 1 leaves the residual component with a negative point count.
    CHECK_THROWS_AS(trace_step1(2, 1, 1), std::invalid_argument);
}

TEST_CASE("step 2 replays the degree-lowering identity") {
    TraceReport rep = trace_step2(14, 4, 3);
    CHECK(class_of(rep, "source") == "(15:8; 4,4,4,4,4,4,4,4,4,4)@F1");
    CHECK(class_of(rep, "image") == "(13:6; 3,3,3,3,4,4,4,4,4,4)@F1");
    CHECK(check_passes(rep, "image_matches"));
    CHECK(check_passes(rep, "self_intersection_conserved"));
    CHECK(check_passes(rep, "anticanonical_degree_conserved"));
    CHECK(check_passes(rep, "elementary_factorization"));
    CHECK(rep.pass);
    REQUIRE(rep.transforms.steps.size() == 1);
    CHECK(rep.transforms.steps[0].kind == "rule2");
    CHECK(rep.transforms.steps[0].s == 2);  // s = k - 1

    TraceReport big = trace_step2(23, 5, 4);
    CHECK(class_of(big, "image") == "(21:12; 4,4,4,4,4,4,5,5,5,5,5,5,5,5)@F1");
    CHECK(big.pass);
    CHECK(big.transforms.steps[0].s == 3);
}

TEST_CASE("step 3 bounds L.K on the odd-remainder mosaic") {
    TraceReport rep = trace_step3(14, 4, 3);
    CHECK(rep.pass);
    CHECK(!rep.hypothetical);
    CHECK(class_of(rep, "L|S(1,1)") == "(13:9; 4,4,4,4,4,4)@F1");
    CHECK(class_of(rep, "L|S(2,1)") == "(9:6; 3,3,3,3)@F1");
    CHECK(class_of(rep, "K") == "(3:2; 1,1,1,1,1,1)@F1");
    CHECK(intersection_of(rep, "L.K") == -3);
    CHECK(check_passes(rep, "general_fibre_is_step2_image"));
    CHECK(check_passes(rep, "conservation"));
    CHECK(check_passes(rep, "LK_dual_route"));

    const TraceMargin* lk = find_margin(rep, "LK_minus_bound");
    REQUIRE(lk != nullptr);
    CHECK(lk->pass);
    // k(j - eps mu) = 45 - 12 sqrt(14)
    CHECK(lk->value == QuadraticExpr(45) - QuadraticExpr(12) * QuadraticExpr::sqrt_of(14));
    CHECK(find_margin(rep, "closing_margin") != nullptr);

    // Even remainder: still computed, but flagged and annotated.
    TraceReport even = trace_step3(22, 10, 7);
    CHECK(even.hypothetical);
    CHECK(!even.hypothesis_notes.empty());
    bool noted = false;
    for (const std::string& n : even.hypothesis_notes)
        noted = noted || n.find("alpha is even") != std::string::npos;
    CHECK(noted);
    CHECK(intersection_of(even, "L.K") == -7);
}

TEST_CASE("step 4 runs the fine and coarse mosaics in the low-eps regime") {
    TraceReport rep = trace_step4(22, 10, 7);
    CHECK(rep.pass);
    CHECK(!rep.hypothetical);
    CHECK(rep.k == 4);
    CHECK(rep.alpha == 6);
    CHECK(rep.coverage == Coverage::Case2);

    CHECK(class_of(rep, "L|S(1,1)") == "(17:7;)@F1");
    CHECK(class_of(rep, "L|S(3,1)") == "(7:0; 7,7,7,7,7,7)@F1");
    CHECK(class_of(rep, "L|S(1,2)") == "(21 x 10; 10,10,10,10,10)@F0");
    CHECK(class_of(rep, "L|S'(1,2)") == "(21 x 17; 10,10,10,10,10,7,7,7,7,7,7)@F0");
    CHECK(class_of(rep, "K") == "(2 x 1; 1,1,1,1,1)@F0");
    CHECK(class_of(rep, "Lambda") == "(1:0; 1,1)@F1");
    CHECK(intersection_of(rep, "L.K") == -9);
    CHECK(intersection_of(rep, "L.Lambda") == -3);
    CHECK(check_passes(rep, "coarse_conservation"));
    CHECK(check_passes(rep, "LK_dual_route"));
    CHECK(check_passes(rep, "LLambda_formula"));

    const TraceMargin* keps = find_margin(rep, "coefficient_keps_minus_2");
    REQUIRE(keps != nullptr);
    CHECK(keps->claim == "nonnegative");
    CHECK(keps->pass);
    const TraceMargin* lam = find_margin(rep, "lambda_degree");
    REQUIRE(lam != nullptr);
    CHECK(lam->sign == -1);
    CHECK(lam->pass);  // claimed negative
}

TEST_CASE("step 5 normal form, negative curves, and the closing quadratic") {
    TraceReport rep = trace_step5(33, 5, 4);
    CHECK(rep.pass);
    CHECK(!rep.hypothetical);
    CHECK(rep.k == 5);

    CHECK(class_of(rep, "L|S'(2,1)") == "(20:16; 4,4,4,4,4,4,5,5)@F1");
    CHECK(class_of(rep, "normal_form_stage1") == "(8:4; 0,0,0,0,0,0,5,5)@F1");
    CHECK(class_of(rep, "normal_form") == "(2:-2; 0,0,0,0,0,0,-1,-1)@F1");
    CHECK(class_of(rep, "Lambda") == "(4:3; 1,1,1,1,1,1,1,1)@F1");
    CHECK(class_of(rep, "Lambda1") == "(3:2; 1,1,1,1,1,1)@F1");
    CHECK(class_of(rep, "Lambda2") == "(1 x 1; 1,1)@F0");

    CHECK(intersection_of(rep, "L.K") == 1);
    CHECK(intersection_of(rep, "L.Lambda") == -2);
    CHECK(intersection_of(rep, "L.R") == -1);
    CHECK(intersection_of(rep, "L.Lambda1") == 3);
    CHECK(intersection_of(rep, "L.Lambda2") == -5);
    CHECK(intersection_of(rep, "quadratic_discriminant") == make_rat(-26, 25));

    REQUIRE(rep.transforms.steps.size() == 2);
    CHECK(rep.transforms.steps[0].kind == "rule2");
    CHECK(rep.transforms.steps[0].s == 3);  // k - 2
    CHECK(rep.transforms.steps[1].s == 1);
    CHECK(check_passes(rep, "normal_form_matches"));
    CHECK(check_passes(rep, "ruling_degrees_equal"));
    CHECK(check_passes(rep, "lambda_limit_conservation"));

    const TraceMargin* quad = find_margin(rep, "quadratic_value");
    REQUIRE(quad != nullptr);
    CHECK(quad->claim == "nonnegative");
    CHECK(quad->pass);
    const TraceMargin* disc = find_margin(rep, "quadratic_discriminant");
    REQUIRE(disc != nullptr);
    CHECK(disc->sign == -1);
    CHECK(disc->pass);
}

TEST_CASE("step 5 on uncovered inputs computes and fails honestly") {
    TraceReport r15 = trace_step5(15, 5, 4);
    CHECK(r15.hypothetical);
    CHECK(!r15.pass);  // several margins genuinely fail
    CHECK(intersection_of(r15, "quadratic_discriminant") == make_rat(-2, 3));
    const TraceMargin* quad = find_margin(r15, "quadratic_value");
    REQUIRE(quad != nullptr);
    CHECK(quad->pass);  // the quadratic itself is still nonnegative here

    TraceReport r8 = trace_step5(8, 5, 1);
    CHECK(r8.hypothetical);
    CHECK(!r8.pass);
    CHECK(intersection_of(r8, "quadratic_discriminant") == make_rat(1, 4));
    const TraceMargin* disc = find_margin(r8, "quadratic_discriminant");
    REQUIRE(disc != nullptr);
    CHECK(disc->sign == 1);
    CHECK(!disc->pass);  // claimed negative, honestly reported as violated
    bool k_note = false;
    for (const std::string& n : r8.hypothesis_notes)
        k_note = k_note || n.find("k < 3") != std::string::npos;
    CHECK(k_note);
}

TEST_CASE("step 5 discriminant closed form") {
    CHECK(step5_discriminant(3) == make_rat(-2, 3));
    CHECK(step5_discriminant(2) == make_rat(1, 4));
    CHECK(step5_discriminant(5) == make_rat(-26, 25));
    // 9/k^2 - 2/k - 1 < 0 for every k >= 3.
    for (long k = 3; k <= 40; ++k) CHECK(step5_discriminant(k) < 0);
    CHECK_THROWS_AS(step5_discriminant(0), std::invalid_argument);
}

TEST_CASE("traces are deterministic") {
    for (int i = 0; i < 2; ++i) {
        CHECK(dump_json(json_of(trace_step5(33, 5, 4))) ==
              dump_json(json_of(trace_step5(33, 5, 4))));
        CHECK(dump_json(json_of(trace_step3(14, 4, 3))) ==
              dump_json(json_of(trace_step3(14, 4, 3))));
    }
}

TEST_CASE("margins and checks gate the overall verdict") {
    // (12, 2, 1): alpha = 3 odd, k = 3, Case1; all margins should close.
    TraceReport rep = trace_step3(12, 2, 1);
    CHECK(rep.coverage == Coverage::Case1);
    for (const TraceCheck& c : rep.checks) CHECK(c.pass);
    bool margins_ok = std::all_of(rep.margins.begin(), rep.margins.end(),
                                  [](const TraceMargin& m) { return m.pass; });
    CHECK(rep.pass == margins_ok);
}
