#include <map>

#include "assembly.hpp"
#include "pf/diagram.hpp"

namespace pf {

namespace detail {

std::vector<CurvePath> compatible_basis(const Surface& s, const std::string& lagrangian) {
    const std::string name = canonical_curve_name(s.genus(), lagrangian);
    if (!s.has_curve(name)) throw DiagramError("unknown Lagrangian '" + lagrangian + "'");
    const auto& L = s.curve(name);
    int first = -1;
    std::vector<CurvePath> rest;
    for (int i = 1; i <= s.num_arcs(); ++i) {
        const auto arc = s.standard_arc(i);
        const int n = geometric_intersection(s, arc, L);
        if (n == 0) {
            rest.push_back(arc);
        } else if (n == 1 && first < 0) {
            first = i;
        } else {
            throw Unsupported(s.genus(), "no compatible basis: " + name + " meets several standard arcs");
        }
    }
    if (first < 0) throw DiagramError(name + " misses every standard arc");
    rest.insert(rest.begin(), s.standard_arc(first));
    return rest;
}

}  // namespace detail

namespace {

std::map<detail::VertexLabel, int> index_labels(const std::vector<detail::VertexLabel>& labels) {
    std::map<detail::VertexLabel, int> out;
    for (int v = 0; v < static_cast<int>(labels.size()); ++v) out[labels[v]] = v;
    return out;
}

int lookup(const std::map<detail::VertexLabel, int>& m, const detail::VertexLabel& l) {
    auto it = m.find(l);
    return it == m.end() ? -1 : it->second;
}

}  // namespace

TriangleDiagrams build_triangle_diagrams(const MonodromyWord& w, const std::string& lagrangian) {
    Surface s(w.genus);
    const std::string name = canonical_curve_name(w.genus, lagrangian);
    const auto a = detail::compatible_basis(s, name);
    const auto& L = s.curve(name);
    MonodromyWord untwist;
    untwist.genus = w.genus;
    untwist.letters = {{name, -1}};
    auto a_prime = a;
    a_prime[0] = apply_word(s, untwist, a[0]);

    // tags: 0 for a_1, 1 for L, i + 1 for a_i beyond the first
    std::vector<int> tags(a.size());
    for (int i = 1; i < static_cast<int>(a.size()); ++i) tags[i] = i + 1;
    auto tilde_alpha = a;
    tilde_alpha[0] = L;
    auto tilde_tags = tags;
    tilde_tags[0] = 1;

    TriangleDiagrams t;
    std::vector<detail::VertexLabel> lp, ll, lt;
    const detail::Shadow shadow{L, -1, 1};
    t.prime = detail::assemble_core(s, a, tags, a_prime, w, &shadow, &lp);
    t.plain = detail::assemble_core(s, a, tags, a_prime, w, nullptr, &ll);
    t.tilde = detail::assemble_core(s, tilde_alpha, tilde_tags, a_prime, w, nullptr, &lt);

    const auto in_plain = index_labels(ll), in_tilde = index_labels(lt), in_prime = index_labels(lp);
    const int np = static_cast<int>(t.prime.verts.size());
    t.prime_tag.assign(np, -1);
    t.prime_to_plain.assign(np, -1);
    t.prime_to_tilde.assign(np, -1);
    for (int v = 0; v < np; ++v) {
        if (t.prime.verts[v].alpha == 0) t.prime_tag[v] = lp[v].tag == 1 ? 1 : 0;
        if (t.prime_tag[v] != 1) t.prime_to_plain[v] = lookup(in_plain, lp[v]);
        if (t.prime_tag[v] != 0) t.prime_to_tilde[v] = lookup(in_tilde, lp[v]);
    }
    t.tilde_to_prime.assign(t.tilde.verts.size(), -1);
    for (int v = 0; v < static_cast<int>(t.tilde.verts.size()); ++v) t.tilde_to_prime[v] = lookup(in_prime, lt[v]);
    return t;
}

std::optional<Generator> map_i0(const TriangleDiagrams& t, const Generator& x) {
    Generator y;
    for (int v : x.points) {
        const int u = t.tilde_to_prime.at(v);
        if (u < 0) return std::nullopt;
        y.points.push_back(u);
    }
    y.alexander = alexander_grading(t.prime, y.points);
    return y;
}

std::optional<Generator> map_l0(const TriangleDiagrams& t, const Generator& x) {
    if (t.prime_tag.at(x.points.at(0)) == 1) return std::nullopt;
    Generator y;
    for (int v : x.points) {
        const int u = t.prime_to_plain.at(v);
        if (u < 0) throw std::logic_error("generator point without a closest point on a");
        y.points.push_back(u);
    }
    y.alexander = alexander_grading(t.plain, y.points);
    return y;
}

}  // namespace pf
