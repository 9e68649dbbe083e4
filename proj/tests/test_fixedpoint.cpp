#include <cmath>

#include "doctest.h"
#include "pf/fixedpoint.hpp"
#include "pf/floer.hpp"

using namespace pf;

namespace {

long long index_sum(const NielsenReport& r) {
    long long s = r.boundary_index;
    for (const auto& c : r.classes) s += c.index;
    return s;
}

std::vector<std::string> words_up_to(int len) {
    const std::vector<std::string> letters{"a+", "a-", "b+", "b-"};
    std::vector<std::string> out{""}, frontier{""};
    for (int k = 1; k <= len; ++k) {
        std::vector<std::string> next;
        for (const auto& w : frontier)
            for (const auto& l : letters) next.push_back(w.empty() ? l : w + " " + l);
        out.insert(out.end(), next.begin(), next.end());
        frontier = next;
    }
    return out;
}

}  // namespace

TEST_CASE("frozen reports") {
    const auto tref = nielsen_report(parse_word(1, "a+ b+"));
    CHECK(tref.boundary_case == BoundaryCase::C1a);
    CHECK(tref.classes.empty());
    CHECK(tref.f_min == 0);
    CHECK(tref.hf_sharp_rank == 1);
    CHECK(tref.predicted_hfk == 1);

    const auto fig8 = nielsen_report(parse_word(1, "a+ b-"));
    CHECK(fig8.boundary_case == BoundaryCase::C3a);
    CHECK(fig8.boundary_index == -1);
    CHECK(fig8.boundary_extra == 2);
    CHECK(fig8.f_min == 2);
    CHECK(fig8.predicted_hfk == 3);

    const auto r = nielsen_report(parse_word(1, "a+ a+ b+"));
    REQUIRE(r.classes.size() == 1);
    CHECK(r.classes[0].id == "fix(0/2,1/2)");
    CHECK(r.classes[0].index == 1);
    CHECK(r.predicted_hfk == 2);

    const auto pa = nielsen_report(parse_word(1, "a+ a+ a+ a+ b-"));
    CHECK(pa.classes.size() == 3);
    CHECK(pa.f_min == 5);
    CHECK(pa.predicted_hfk == 6);

    const auto tw = nielsen_report(parse_word(1, "a+ b+ T+"));
    CHECK(tw.boundary_extra == 2);
    CHECK(tw.predicted_hfk == 3);

    const auto id2 = nielsen_report(parse_word(2, ""));
    CHECK(id2.boundary_case == BoundaryCase::IdentitySpecial);
    CHECK(id2.f_min == 5);
    CHECK(id2.predicted_hfk == 4);
}

TEST_CASE("reducible fallback") {
    const auto r = nielsen_report(parse_word(1, "a+ b+ a+ b+ a+ b+ a+"));
    CHECK(r.fallback);
    CHECK(r.classification.type == NTType::Reducible);
    CHECK(r.predicted_hfk == 4);
    CHECK_THROWS_AS(nielsen_report(parse_word(1, "a+")), Unsupported);
    CHECK_THROWS_AS(nielsen_report(parse_word(2, "a1+ b2-")), Unsupported);
}

TEST_CASE("indices add up to the Lefschetz number") {
    int checked = 0;
    for (const auto& text : words_up_to(4)) {
        const auto w = parse_word(1, text);
        try {
            const auto r = nielsen_report(w);
            CAPTURE(text);
            CHECK(index_sum(r) == 2 - r.classification.trace);
            CHECK(r.f_min == r.interior_min + r.boundary_extra);
            ++checked;
        } catch (const Unsupported&) {
        }
    }
    CHECK(checked > 100);
    for (int g : {1, 2, 3}) CHECK(index_sum(nielsen_report(parse_word(g, ""))) == 2 - 2 * g);
}

TEST_CASE("prediction agrees with the diagram count") {
    int checked = 0;
    for (const auto& text : words_up_to(3)) {
        const auto w = parse_word(1, text);
        long long predicted;
        try {
            predicted = predicted_hfk(w);
        } catch (const Unsupported&) {
            continue;
        }
        CAPTURE(text);
        CHECK(hfk_rank(1, w, 0) == predicted);
        ++checked;
    }
    CHECK(checked > 30);
}

TEST_CASE("figure-eight powers follow the trace") {
    const auto w = parse_word(1, "a+ b-");
    Surface s(1);
    IntMatrix M = mat_identity(2);
    const auto A = homology_action(s, w);
    for (int n = 1; n <= 8; ++n) {
        M = mat_mul(M, A);
        CHECK(predicted_hfk(w.power(n)) == mat_trace(M));
    }
}

TEST_CASE("growth rate") {
    const auto fig8 = parse_word(1, "a+ b-");
    CHECK_THROWS_AS(growth_rate(fig8, 2), std::invalid_argument);
    CHECK(growth_rate(fig8, 12) == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-2));
    CHECK(growth_rate(parse_word(1, "a+ b+"), 5) == 1.0);
    CHECK_THROWS_AS(growth_rate(parse_word(1, "a+"), 5), Unsupported);
}

TEST_CASE("multiplicity") {
    CHECK(multiplicity(parse_word(1, "a+ b-"), 10) == 1);
    CHECK(multiplicity(parse_word(1, "a+ b+"), 10) == 2);
    CHECK_THROWS_AS(multiplicity(parse_word(1, "a+ b+"), 1), NoneFound);
}

TEST_CASE("classification json is stable") {
    const auto a = classification_to_json(classify(parse_word(1, "a+ b-")));
    const auto b = classification_to_json(classify(parse_word(1, "b- a+")));
    CHECK(a == b);
    CHECK(a.find("pseudo_anosov") != std::string::npos);
}
