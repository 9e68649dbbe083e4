#include <random>

#include "doctest.h"
#include "pf/mapping_class.hpp"
#include "pf/surface.hpp"

using namespace pf;

namespace {

std::vector<std::string> standard_names(int g) {
    std::vector<std::string> out;
    for (int j = 1; j <= g; ++j) {
        out.push_back("a" + std::to_string(j));
        out.push_back("b" + std::to_string(j));
    }
    for (int j = 1; j < g; ++j) out.push_back("c" + std::to_string(j));
    return out;
}

MonodromyWord random_word(int g, int len, std::mt19937& rng) {
    const auto names = standard_names(g);
    MonodromyWord w;
    w.genus = g;
    for (int i = 0; i < len; ++i) w.letters.push_back({names[rng() % names.size()], rng() % 2 ? 1 : -1});
    return w;
}

}  // namespace

TEST_CASE("standard curve intersections") {
    Surface s1(1);
    CHECK(geometric_intersection(s1, s1.curve("a1"), s1.curve("b1")) == 1);
    CHECK(geometric_intersection(s1, s1.curve("a1"), s1.curve("a1")) == 0);
    CHECK(std::abs(algebraic_intersection(s1, s1.curve("a1"), s1.curve("b1"))) == 1);

    Surface s2(2);
    CHECK(geometric_intersection(s2, s2.curve("a1"), s2.curve("b2")) == 0);
    CHECK(geometric_intersection(s2, s2.curve("c1"), s2.curve("b1")) == 1);
    CHECK(geometric_intersection(s2, s2.curve("c1"), s2.curve("b2")) == 1);
    CHECK(geometric_intersection(s2, s2.curve("c1"), s2.curve("a1")) == 0);
    CHECK(geometric_intersection(s2, s2.curve("c1"), s2.curve("a2")) == 0);
}

TEST_CASE("standard arcs meet their dual curve once") {
    for (int g : {1, 2}) {
        Surface s(g);
        for (int i = 1; i <= s.num_arcs(); ++i) {
            int hits = 0;
            for (const auto& name : standard_names(g))
                if (name[0] != 'c') hits += geometric_intersection(s, s.standard_arc(i), s.curve(name));
            CHECK(hits == 1);
        }
    }
}

TEST_CASE("word reduction") {
    CHECK(free_reduce({1, 2, -2, 3}) == Word{1, 3});
    CHECK(cyclic_reduce({-1, 2, 3, 1}) == Word{2, 3});
    CHECK(inverse({1, -2}) == Word{2, -1});
    CHECK(canonical_rotation({3, 1, 2}) == Word{1, 2, 3});
}

TEST_CASE("twists are invertible") {
    std::mt19937 rng(5);
    for (int g : {1, 2}) {
        Surface s(g);
        for (int it = 0; it < 20; ++it) {
            const auto w = random_word(g, 1 + rng() % 4, rng);
            const auto& c = s.curve(standard_names(g)[rng() % standard_names(g).size()]);
            CHECK(isotopic(apply_word(s, w.inverse(), apply_word(s, w, c)), normalize(c)));
        }
    }
}

TEST_CASE("i(tau_L(c), c) = i(L, c)^2 on random curves") {
    std::mt19937 rng(99);
    int nontrivial = 0;
    for (int it = 0; it < 100; ++it) {
        const int g = it < 50 ? 1 : 2;
        Surface s(g);
        const auto names = standard_names(g);
        const auto& L = s.curve(names[rng() % names.size()]);
        const auto c = apply_word(s, random_word(g, 1 + rng() % 4, rng), s.curve(names[rng() % names.size()]));
        const int k = geometric_intersection(s, L, c);
        const auto tc = twist(s, L, rng() % 2 ? 1 : -1, c);
        CHECK(geometric_intersection(s, tc, c) == k * k);
        if (k > 1) ++nontrivial;
    }
    CHECK(nontrivial > 10);
}

TEST_CASE("algebraic intersection is preserved by twists") {
    std::mt19937 rng(3);
    Surface s(2);
    const auto names = standard_names(2);
    for (int it = 0; it < 30; ++it) {
        const auto w = random_word(2, 1 + rng() % 3, rng);
        const auto& x = s.curve(names[rng() % names.size()]);
        const auto& y = s.curve(names[rng() % names.size()]);
        CHECK(algebraic_intersection(s, apply_word(s, w, x), apply_word(s, w, y)) == algebraic_intersection(s, x, y));
    }
}

TEST_CASE("parse_word") {
    auto w = parse_word(1, "a+ b- T+ T^2");
    CHECK(w.letters.size() == 2);
    CHECK(w.letters[0] == Letter{"a1", 1});
    CHECK(w.letters[1] == Letter{"b1", -1});
    CHECK(w.boundary_twists == 3);
    CHECK(parse_word(1, w.to_string()) == w);
    CHECK_THROWS_AS(parse_word(1, "a2+"), WordError);
    CHECK_THROWS_AS(parse_word(1, "a"), WordError);
    CHECK_THROWS_AS(parse_word(1, "T^x"), WordError);
    CHECK(parse_word(2, "c1+").letters[0].curve == "c1");
}

TEST_CASE("classification of genus-1 words") {
    auto trefoil = classify(parse_word(1, "a+ b+"));
    CHECK(trefoil.type == NTType::Periodic);
    CHECK(trefoil.order == 6);
    CHECK(*trefoil.t_c == Rational(1, 6));

    auto fig8 = classify(parse_word(1, "a+ b-"));
    CHECK(fig8.type == NTType::PseudoAnosov);
    CHECK(fig8.dilatation == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-9));
    CHECK(fig8.prongs == 2);
    CHECK(*fig8.theta_c == Rational(0));

    auto id = classify(parse_word(1, ""));
    CHECK(id.identity_class);
    CHECK(id.type == NTType::Periodic);

    auto red = classify(parse_word(1, "a+"));
    CHECK(red.type == NTType::Reducible);
    CHECK_FALSE(red.t_c.has_value());

    auto twisted = classify(parse_word(1, "a+ b+ T+"));
    CHECK(*twisted.t_c == Rational(7, 6));
    CHECK(*twisted.k_phi == 1);
}

TEST_CASE("classification is a conjugacy invariant") {
    std::mt19937 rng(17);
    for (int it = 0; it < 40; ++it) {
        const auto w = random_word(1, 1 + rng() % 5, rng);
        const auto h = random_word(1, 1 + rng() % 3, rng);
        const auto conj = h.then(w).then(h.inverse());
        const auto a = classify(w), b = classify(conj);
        CHECK(a.type == b.type);
        CHECK(a.trace == b.trace);
        if (a.type == NTType::PseudoAnosov) CHECK(a.dilatation == doctest::Approx(b.dilatation));
        CHECK(a.t_c == b.t_c);
    }
}

TEST_CASE("homology action is symplectic") {
    std::mt19937 rng(23);
    Surface s(2);
    const auto J = intersection_form(s);
    for (int it = 0; it < 20; ++it) {
        const auto M = homology_action(s, random_word(2, 1 + rng() % 5, rng));
        IntMatrix Mt(4, std::vector<long long>(4));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) Mt[i][j] = M[j][i];
        CHECK(mat_mul(mat_mul(Mt, J), M) == J);
        CHECK(mat_det(M) == 1);
    }
}
