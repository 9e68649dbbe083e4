#include "pf/fixedpoint.hpp"

#include <cmath>
#include <set>

#include "json.hpp"

namespace pf {

std::string boundary_case_name(BoundaryCase c) {
    switch (c) {
        case BoundaryCase::C1a: return "C1a";
        case BoundaryCase::C1b: return "C1b";
        case BoundaryCase::C2: return "C2";
        case BoundaryCase::C3a: return "C3a";
        case BoundaryCase::C3b: return "C3b";
        case BoundaryCase::IdentitySpecial: return "identity_special";
    }
    return "?";
}

namespace {

std::string rat_str(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

long long floor_div(const Rational& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

// Fixed points of x -> Mx on R^2/Z^2 other than 0, as points of (Z/D)^2
// with D = |det(M - I)|. They form the group (M - I)^{-1} Z^2 / Z^2.
std::vector<std::pair<long long, long long>> torus_fixed_points(const IntMatrix& M) {
    const long long a = M[0][0] - 1, b = M[0][1], c = M[1][0], d = M[1][1] - 1;
    const long long det = a * d - b * c;
    const long long D = std::llabs(det), s = det > 0 ? 1 : -1;
    auto mod = [D](long long x) { return ((x % D) + D) % D; };
    // columns of adj(A), scaled so that x = column / D
    const std::pair<long long, long long> g1{mod(s * d), mod(-s * c)}, g2{mod(-s * b), mod(s * a)};
    std::set<std::pair<long long, long long>> seen{{0, 0}};
    std::vector<std::pair<long long, long long>> todo{{0, 0}};
    while (!todo.empty()) {
        auto p = todo.back();
        todo.pop_back();
        for (auto g : {g1, g2}) {
            std::pair<long long, long long> q{mod(p.first + g.first), mod(p.second + g.second)};
            if (seen.insert(q).second) todo.push_back(q);
        }
    }
    if (static_cast<long long>(seen.size()) != D) throw std::logic_error("fixed point group has the wrong order");
    seen.erase({0, 0});
    return {seen.begin(), seen.end()};
}

}  // namespace

NielsenReport nielsen_report(const MonodromyWord& w) {
    NielsenReport r;
    r.classification = classify(w);
    auto& cl = r.classification;
    const int g = w.genus;
    long long lefschetz = 2 - 2 * g;
    if (cl.identity_class) {
        // all fixed points of a small Morse perturbation share one class
        r.classes.push_back({"identity", 1 - 2 * g});
        r.boundary_index = 1;
        r.interior_min = 2 * g + 1;
    } else {
        Surface s(1);
        const auto M = homology_action(s, w);
        lefschetz = 2 - cl.trace;
        if (cl.type == NTType::Reducible) {
            if (lefschetz == 0)
                throw Unsupported(g, "reducible class with det(M - I) = 0: not a rational homology sphere");
            const Rational tc = genus1_twist_coefficient(w) + Rational(w.boundary_twists);
            cl.t_c = tc;
            cl.k_phi = floor_div(tc);
            cl.theta_c = tc - Rational(*cl.k_phi);
            if (*cl.theta_c == Rational(0)) throw Unsupported(g, "reducible class with an unrotated boundary");
            r.fallback = true;
        }
        const int sign = lefschetz > 0 ? 1 : -1;
        const long long D = std::llabs(lefschetz);
        for (auto [i, j] : torus_fixed_points(M))
            r.classes.push_back({"fix(" + std::to_string(i) + "/" + std::to_string(D) + "," + std::to_string(j) + "/" +
                                     std::to_string(D) + ")",
                                 sign});
        r.boundary_index = *cl.theta_c != Rational(0) ? 1 : 1 - cl.prongs;
        r.interior_min = static_cast<long long>(r.classes.size());
    }
    long long total = r.boundary_index;
    for (const auto& c : r.classes) total += c.index;
    if (total != lefschetz) throw std::logic_error("Nielsen indices do not add up to the Lefschetz number");

    const Rational theta = *cl.theta_c, tc = *cl.t_c;
    const long long k = *cl.k_phi;
    const long long prong_points = theta == Rational(0) && cl.type == NTType::PseudoAnosov ? cl.prongs : 0;
    if (theta != Rational(0)) {
        if (tc >= Rational(0)) {
            r.boundary_case = BoundaryCase::C1a;
            r.boundary_extra = 2 * k;
        } else {
            // the innermost circle pairs off with the boundary
            r.boundary_case = BoundaryCase::C1b;
            r.boundary_extra = 2 * (-k - 1);
        }
    } else if (tc > Rational(0)) {
        r.boundary_case = BoundaryCase::C2;
        r.boundary_extra = prong_points + 2 * (k - 1);
    } else if (tc == Rational(0)) {
        r.boundary_case = cl.identity_class ? BoundaryCase::IdentitySpecial : BoundaryCase::C3a;
        r.boundary_extra = prong_points;
    } else {
        r.boundary_case = BoundaryCase::C3b;
        r.boundary_extra = prong_points + 2 * (-k - 1);
    }
    r.f_min = r.interior_min + r.boundary_extra;
    r.hf_rank = r.f_min;
    r.hf_sharp_rank = r.boundary_case == BoundaryCase::IdentitySpecial ? r.hf_rank - 1 : r.hf_rank + 1;
    r.predicted_hfk = r.hf_sharp_rank;
    return r;
}

namespace {

nlohmann::json classification_json(const NTClassification& c) {
    nlohmann::json cj{{"type", nt_type_name(c.type)}, {"trace", c.trace}, {"identity_class", c.identity_class}};
    if (c.type == NTType::Periodic) cj["order"] = c.order;
    if (c.type == NTType::PseudoAnosov) {
        cj["dilatation"] = c.dilatation;
        cj["boundary_rotation"] = c.rotated ? "rotated" : "unrotated";
        cj["prongs"] = c.prongs;
    }
    cj["theta_c"] = c.theta_c ? nlohmann::json(rat_str(*c.theta_c)) : nlohmann::json(nullptr);
    cj["t_c"] = c.t_c ? nlohmann::json(rat_str(*c.t_c)) : nlohmann::json(nullptr);
    cj["k_phi"] = c.k_phi ? nlohmann::json(*c.k_phi) : nlohmann::json(nullptr);
    return cj;
}

}  // namespace

std::string classification_to_json(const NTClassification& c) { return classification_json(c).dump(); }

std::string NielsenReport::to_json() const {
    nlohmann::json j;
    const auto& c = classification;
    j["classification"] = classification_json(c);
    j["rational_homology_sphere_fallback"] = fallback;
    j["classes"] = nlohmann::json::array();
    for (const auto& x : classes) j["classes"].push_back({{"class_id", x.id}, {"index", x.index}});
    j["boundary_index"] = boundary_index;
    j["interior_min"] = interior_min;
    j["boundary_extra"] = boundary_extra;
    j["f_min"] = f_min;
    j["boundary_case"] = boundary_case_name(boundary_case);
    j["hf_rank"] = hf_rank;
    j["hf_sharp_rank"] = hf_sharp_rank;
    j["predicted_hfk"] = predicted_hfk;
    if (c.theta_c && *c.theta_c == Rational(0) && !(c.t_c && *c.t_c == Rational(0) && c.identity_class))
        j["note"] = "theta_c = 0: smoothing angle taken negative for t_c > 0, positive otherwise";
    return j.dump();
}

std::vector<NielsenClass> nielsen_classes(const MonodromyWord& w) { return nielsen_report(w).classes; }
long long f_min(const MonodromyWord& w) { return nielsen_report(w).f_min; }
long long hf_sharp_rank(const MonodromyWord& w) { return nielsen_report(w).hf_sharp_rank; }
long long predicted_hfk(const MonodromyWord& w) { return nielsen_report(w).predicted_hfk; }

double growth_rate(const MonodromyWord& w, int N) {
    if (N < 3) throw std::invalid_argument("growth_rate needs N >= 3");
    const auto cl = classify(w);
    if (cl.type == NTType::Reducible) throw Unsupported(w.genus, "growth rate of a reducible class");
    if (cl.type == NTType::Periodic) return 1.0;
    return std::pow(static_cast<double>(predicted_hfk(w.power(N))), 1.0 / N);
}

int multiplicity(const MonodromyWord& w, int n_max) {
    for (int n = 1; n <= n_max; ++n)
        if (predicted_hfk(w.power(n)) != 1) return n;
    throw NoneFound("no power up to " + std::to_string(n_max) + " has predicted rank other than 1");
}

}  // namespace pf
