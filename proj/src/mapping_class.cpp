#include "pf/mapping_class.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pf {

MonodromyWord MonodromyWord::power(int n) const {
    if (n < 0) return inverse().power(-n);
    MonodromyWord out{genus, {}, boundary_twists * n};
    for (int i = 0; i < n; ++i) out.letters.insert(out.letters.end(), letters.begin(), letters.end());
    return out;
}

MonodromyWord MonodromyWord::inverse() const {
    MonodromyWord out{genus, {}, -boundary_twists};
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back({it->curve, -it->power});
    return out;
}

MonodromyWord MonodromyWord::then(const MonodromyWord& o) const {
    if (o.genus != genus) throw WordError("genus mismatch in word product");
    MonodromyWord out = *this;
    out.letters.insert(out.letters.end(), o.letters.begin(), o.letters.end());
    out.boundary_twists += o.boundary_twists;
    return out;
}

std::string MonodromyWord::to_string() const {
    std::string out;
    for (auto& l : letters) {
        if (!out.empty()) out += ' ';
        out += l.curve + (l.power > 0 ? "+" : "-");
    }
    if (boundary_twists != 0) {
        if (!out.empty()) out += ' ';
        out += "T^" + std::to_string(boundary_twists);
    }
    return out;
}

std::string canonical_curve_name(int genus, const std::string& name) {
    if (genus == 1 && (name == "a" || name == "b")) return name + "1";
    return name;
}

MonodromyWord parse_word(int genus, const std::string& text) {
    MonodromyWord w;
    w.genus = genus;
    Surface s(genus);
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        // boundary twists are central, so their position does not matter
        if (tok.rfind("T^", 0) == 0) {
            try {
                std::size_t used = 0;
                w.boundary_twists += std::stoi(tok.substr(2), &used);
                if (used + 2 != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::logic_error&) {
                throw WordError("bad boundary twist '" + tok + "'");
            }
            continue;
        }
        if (tok == "T+" || tok == "T-") {
            w.boundary_twists += tok[1] == '+' ? 1 : -1;
            continue;
        }
        char sign = tok.back();
        if (sign != '+' && sign != '-') throw WordError("letter '" + tok + "' needs a trailing + or -");
        std::string name = canonical_curve_name(genus, tok.substr(0, tok.size() - 1));
        if (!s.has_curve(name)) throw WordError("unknown curve '" + name + "' at genus " + std::to_string(genus));
        w.letters.push_back({name, sign == '+' ? 1 : -1});
    }
    return w;
}

CurvePath apply_word(const Surface& s, const MonodromyWord& w, const CurvePath& c) {
    if (w.genus != s.genus()) throw WordError("word and curve live on different surfaces");
    CurvePath cur = normalize(c);
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (!s.has_curve(it->curve)) throw WordError("unregistered curve '" + it->curve + "'");
        cur = twist(s, s.curve(it->curve), it->power, cur);
    }
    return boundary_twist(s, w.boundary_twists, cur);
}

std::vector<long long> homology_class(const CurvePath& c, int genus) {
    std::vector<long long> v(2 * genus, 0);
    for (int x : c.word) v[std::abs(x) - 1] += x > 0 ? 1 : -1;
    return v;
}

IntMatrix mat_identity(int n) {
    IntMatrix m(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMatrix out(n, std::vector<long long>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            if (a[i][t])
                for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    return out;
}

long long mat_trace(const IntMatrix& m) {
    long long t = 0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
}

long long mat_det(const IntMatrix& m0) {
    // Bareiss fraction-free elimination
    IntMatrix m = m0;
    const int n = static_cast<int>(m.size());
    long long prev = 1, sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return n == 0 ? 1 : sign * m[n - 1][n - 1];
}

IntMatrix intersection_form(const Surface& s) {
    const int n = s.num_arcs();
    IntMatrix om(n, std::vector<long long>(n, 0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            CurvePath ci{CurvePath::Kind::Closed, {i}, 0, 0};
            CurvePath cj{CurvePath::Kind::Closed, {j}, 0, 0};
            om[i - 1][j - 1] = algebraic_intersection(s, ci, cj);
        }
    return om;
}

IntMatrix homology_action(const Surface& s, const MonodromyWord& w) {
    const int n = s.num_arcs();
    const IntMatrix om = intersection_form(s);
    IntMatrix m = mat_identity(n);
    for (auto& l : w.letters) {
        if (!s.has_curve(l.curve)) throw WordError("unregistered curve '" + l.curve + "'");
        auto v = homology_class(s.curve(l.curve), s.genus());
        // transvection x -> x + p * omega(c, x) * c
        std::vector<long long> row(n, 0);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) row[j] += v[i] * om[i][j];
        IntMatrix t = mat_identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t[i][j] += l.power * v[i] * row[j];
        m = mat_mul(m, t);
    }
    return m;
}

namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;

// Lift of a shear to the universal cover of the circle of directions.
double lift_apply(const Mat2& t, double x) {
    double c = std::cos(x), s = std::sin(x);
    double u = t[0][0] * c + t[0][1] * s, v = t[1][0] * c + t[1][1] * s;
    double a = std::atan2(v, u);
    const double tau = 2 * std::numbers::pi;
    a += tau * std::round((x - a) / tau);
    return a;
}

}  // namespace

Rational genus1_twist_coefficient(const MonodromyWord& w) {
    if (w.genus != 1) throw Unsupported(w.genus, "twist coefficient via the SL2 lift needs genus 1");
    Surface s(1);
    std::vector<Mat2> mats;
    for (auto& l : w.letters) {
        MonodromyWord single{1, {l}, 0};
        auto m = homology_action(s, single);
        mats.push_back({{{double(m[0][0]), double(m[0][1])}, {double(m[1][0]), double(m[1][1])}}});
    }
    auto lifted = [&](double x) {
        for (auto it = mats.rbegin(); it != mats.rend(); ++it) x = lift_apply(*it, x);
        return x;
    };
    const auto M = homology_action(s, w);
    const long long tr = M[0][0] + M[1][1];
    const double pi = std::numbers::pi;
    const bool plus_id = M == mat_identity(2);
    const bool minus_id = M[0][0] == -1 && M[1][1] == -1 && M[0][1] == 0 && M[1][0] == 0;
    long long num = 0, den = 1;
    if (std::llabs(tr) >= 2 && !plus_id && !minus_id) {
        // an eigendirection is fixed up to a half turn
        double lam = (tr + (tr > 0 ? 1 : -1) * std::sqrt(double(tr * tr - 4))) / 2;
        double vx = double(M[0][1]), vy = lam - double(M[0][0]);
        if (std::abs(vx) + std::abs(vy) < 1e-12) { vx = lam - double(M[1][1]); vy = double(M[1][0]); }
        double x0 = std::atan2(vy, vx);
        num = std::llround((lifted(x0) - x0) / pi);
        den = 2;
    } else {
        int order = plus_id ? 1 : minus_id ? 2 : tr == 1 ? 6 : tr == 0 ? 4 : 3;
        double x = 0.3, y = x;
        for (int k = 0; k < order; ++k) y = lifted(y);
        num = std::llround((y - x) / pi);
        den = 2 * order;
    }
    return Rational(num, den);
}

std::string nt_type_name(NTType t) {
    switch (t) {
        case NTType::Periodic: return "periodic";
        case NTType::Reducible: return "reducible";
        case NTType::PseudoAnosov: return "pseudo_anosov";
    }
    return "?";
}

namespace {

long long floor_rat(const Rational& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

}  // namespace

NTClassification classify(const MonodromyWord& w) {
    NTClassification out;
    if (w.genus != 1) {
        if (!w.letters.empty())
            throw Unsupported(w.genus, "classification above genus 1 is limited to the identity class");
        out.type = NTType::Periodic;
        out.order = 1;
        out.identity_class = true;
        out.t_c = Rational(w.boundary_twists);
        out.theta_c = Rational(0);
        out.k_phi = w.boundary_twists;
        return out;
    }
    Surface s(1);
    const auto M = homology_action(s, w);
    const long long tr = M[0][0] + M[1][1];
    out.trace = tr;
    const bool plus_id = M == mat_identity(2);
    const bool minus_id = M[0][0] == -1 && M[1][1] == -1 && M[0][1] == 0 && M[1][0] == 0;
    const Rational tc = genus1_twist_coefficient(w) + Rational(w.boundary_twists);
    if (plus_id || minus_id || std::llabs(tr) < 2) {
        out.type = NTType::Periodic;
        out.order = plus_id ? 1 : minus_id ? 2 : tr == 1 ? 6 : tr == 0 ? 4 : 3;
        out.identity_class = plus_id;
        out.t_c = tc;
        out.k_phi = floor_rat(tc);
        out.theta_c = tc - Rational(*out.k_phi);
        return out;
    }
    if (std::llabs(tr) == 2) {
        out.type = NTType::Reducible;
        return out;
    }
    out.type = NTType::PseudoAnosov;
    out.dilatation = (std::abs(double(tr)) + std::sqrt(double(tr * tr - 4))) / 2;
    out.rotated = tr < 0;
    out.prongs = 2;
    out.t_c = tc;
    out.k_phi = floor_rat(tc);
    out.theta_c = tc - Rational(*out.k_phi);
    const Rational expect = out.rotated ? Rational(1, 2) : Rational(0);
    if (*out.theta_c != expect)
        throw std::logic_error("twist coefficient inconsistent with the prong rotation");
    return out;
}

}  // namespace pf
