#include "pf/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

#include "assembly.hpp"
#include "json.hpp"

namespace pf {

std::string role_name(PointRole r) {
    switch (r) {
        case PointRole::C: return "c";
        case PointRole::CPrime: return "c_prime";
        case PointRole::D: return "d";
        case PointRole::Interior: return "interior";
        case PointRole::BoundaryOnly: return "boundary";
    }
    return "?";
}

// ------------------------------------------------------------ topology

int PageDiagram::cw_next(int h) const {
    const auto& r = rot[org[h]];
    const int k = static_cast<int>(r.size());
    return r[(rot_pos[h] + k - 1) % k];
}

int PageDiagram::ccw_next(int h) const {
    const auto& r = rot[org[h]];
    const int k = static_cast<int>(r.size());
    return r[(rot_pos[h] + 1) % k];
}

void PageDiagram::rebuild() {
    const int nv = static_cast<int>(verts.size());
    edges.clear();
    alpha_edge0.assign(alpha.size(), 0);
    beta_edge0.assign(beta.size(), 0);
    alpha_pos.assign(nv, -1);
    beta_pos.assign(nv, -1);

    auto add_strand = [&](const Strand& st, char type, int curve, std::vector<int>& pos) {
        const int n = static_cast<int>(st.verts.size());
        for (int i = 0; i < n; ++i) {
            if (pos[st.verts[i]] != -1) throw DiagramError("vertex visited twice by one family");
            pos[st.verts[i]] = i;
        }
        for (int i = 0; i < st.num_edges(); ++i)
            edges.push_back({type, curve, i, static_cast<bool>(st.collar_edge[i])});
    };
    for (int a = 0; a < static_cast<int>(alpha.size()); ++a) {
        alpha_edge0[a] = static_cast<int>(edges.size());
        add_strand(alpha[a], 'a', a, alpha_pos);
    }
    for (int b = 0; b < static_cast<int>(beta.size()); ++b) {
        beta_edge0[b] = static_cast<int>(edges.size());
        add_strand(beta[b], 'b', b, beta_pos);
    }
    boundary_edge0 = static_cast<int>(edges.size());
    const int nb = static_cast<int>(boundary.size());
    for (int t = 0; t < nb; ++t) edges.push_back({'d', -1, t, true});

    const int nh = 2 * static_cast<int>(edges.size());
    org.assign(nh, -1);
    auto strand_of = [&](const Edge& e) -> const Strand& {
        return e.type == 'a' ? alpha[e.curve] : beta[e.curve];
    };
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto& ed = edges[e];
        int u, v;
        if (ed.type == 'd') {
            u = boundary[ed.index];
            v = boundary[(ed.index + 1) % nb];
        } else {
            const auto& st = strand_of(ed);
            const int n = static_cast<int>(st.verts.size());
            u = st.verts[ed.index];
            v = st.verts[(ed.index + 1) % n];
        }
        org[2 * e] = u;
        org[2 * e + 1] = v;
    }

    rot.assign(nv, {});
    auto rays = [&](const Strand& st, int e0, int p, int& out, int& in) {
        const int n = static_cast<int>(st.verts.size());
        out = in = -1;
        if (st.closed) {
            out = 2 * (e0 + p);
            in = 2 * (e0 + (p + n - 1) % n) + 1;
        } else {
            if (p < n - 1) out = 2 * (e0 + p);
            if (p > 0) in = 2 * (e0 + p - 1) + 1;
        }
    };
    std::vector<int> bidx(nv, -1);
    for (int t = 0; t < nb; ++t) bidx[boundary[t]] = t;
    for (int v = 0; v < nv; ++v) {
        const auto& x = verts[v];
        int ao = -1, ai = -1, bo = -1, bi = -1;
        if (x.alpha >= 0) {
            if (alpha_pos[v] < 0) throw DiagramError("alpha vertex missing from its strand");
            rays(alpha[x.alpha], alpha_edge0[x.alpha], alpha_pos[v], ao, ai);
        }
        if (x.beta >= 0) {
            if (beta_pos[v] < 0) throw DiagramError("beta vertex missing from its strand");
            rays(beta[x.beta], beta_edge0[x.beta], beta_pos[v], bo, bi);
        }
        if (x.boundary) {
            const int t = bidx[v];
            if (t < 0) throw DiagramError("boundary vertex not on the boundary cycle");
            auto& r = rot[v];
            r.push_back(2 * (boundary_edge0 + t));
            if (x.beta >= 0) r.push_back(bo >= 0 ? bo : bi);
            if (x.alpha >= 0) r.push_back(ao >= 0 ? ao : ai);
            r.push_back(2 * (boundary_edge0 + (t + nb - 1) % nb) + 1);
        } else {
            if (ao < 0 || ai < 0 || bo < 0 || bi < 0) throw DiagramError("interior vertex is not a crossing");
            if (x.sign > 0) rot[v] = {ao, bo, ai, bi};
            else rot[v] = {ao, bi, ai, bo};
        }
    }
    rot_pos.assign(nh, -1);
    for (auto& r : rot)
        for (int i = 0; i < static_cast<int>(r.size()); ++i) rot_pos[r[i]] = i;
    for (int h = 0; h < nh; ++h)
        if (rot_pos[h] < 0 || org[h] < 0) throw DiagramError("dangling half-edge");

    faces.clear();
    face_of.assign(nh, -1);
    for (int h0 = 0; h0 < nh; ++h0) {
        if (face_of[h0] >= 0) continue;
        const int f = static_cast<int>(faces.size());
        faces.emplace_back();
        int h = h0;
        while (face_of[h] < 0) {
            face_of[h] = f;
            faces[f].push_back(h);
            h = cw_next(h ^ 1);
        }
        if (h != h0) throw DiagramError("face tracing did not close up");
    }
    face_boundary.assign(faces.size(), 0);
    for (int t = 0; t < nb; ++t) {
        face_boundary[face_of[2 * (boundary_edge0 + t)]] = 1;
        face_boundary[face_of[2 * (boundary_edge0 + t) + 1]] = 1;
    }
    outer_face = nb ? face_of[2 * boundary_edge0 + 1] : -1;
    w_face = nb ? face_of[2 * (boundary_edge0 + nb - 1)] : -1;
    z_face = -1;
    if (z_beta >= 0 && z_vertex >= 0) {
        const int p = beta_pos[z_vertex];
        z_face = face_of[2 * beta_edge(z_beta, p)];
    }
}

int PageDiagram::euler_characteristic() const {
    // the outer face is the complement of S
    return static_cast<int>(verts.size()) - static_cast<int>(edges.size()) +
           static_cast<int>(faces.size()) - 1;
}

std::vector<int> PageDiagram::bad_faces() const {
    std::vector<int> out;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f)
        if (!excluded(f) && corners(f) > 4) out.push_back(f);
    return out;
}

std::string PageDiagram::to_json() const {
    using nlohmann::json;
    json j;
    j["genus"] = genus;
    json vs = json::array();
    for (int v = 0; v < static_cast<int>(verts.size()); ++v) {
        const auto& x = verts[v];
        json o{{"id", v}, {"role", role_name(x.role)}, {"alpha", x.alpha}, {"beta", x.beta},
               {"sign", x.sign}, {"collar", x.collar}};
        if (x.boundary) o["key"] = x.key;
        vs.push_back(o);
    }
    j["vertices"] = vs;
    json es = json::array();
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto& ed = edges[e];
        es.push_back({{"id", e}, {"type", std::string(1, ed.type)}, {"curve", ed.curve},
                      {"from", org[2 * e]}, {"to", org[2 * e + 1]}, {"collar", ed.collar}});
    }
    j["edges"] = es;
    json fs = json::array();
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        json hs = json::array();
        for (int h : faces[f]) hs.push_back(h);
        fs.push_back({{"id", f}, {"half_edges", hs}, {"corners", corners(f)},
                      {"boundary", static_cast<bool>(face_boundary[f])}, {"outer", f == outer_face},
                      {"z", f == z_face}, {"w", f == w_face}});
    }
    j["faces"] = fs;
    j["euler_characteristic"] = euler_characteristic();
    return j.dump();
}

// ------------------------------------------------------------ assembly

namespace {

CurvePath concat_arc(const Surface& s, const CurvePath& src, int big_start, int big_end) {
    CurvePath j;
    j.kind = CurvePath::Kind::Arc;
    j.start_key = big_start;
    j.end_key = big_end;
    j.word = s.boundary_path(big_start, src.start_key, -1);
    j.word.insert(j.word.end(), src.word.begin(), src.word.end());
    auto tail = s.boundary_path(src.end_key, big_end, +1);
    j.word.insert(j.word.end(), tail.begin(), tail.end());
    return normalize(j);
}

}  // namespace

namespace detail {

PageDiagram assemble_core(const Surface& s, const std::vector<CurvePath>& alpha, const std::vector<int>& alpha_tags,
                          const std::vector<CurvePath>& beta_source, const MonodromyWord& w, const Shadow* shadow,
                          std::vector<VertexLabel>* labels) {
    PageDiagram d;
    std::vector<VertexLabel> lab;
    d.genus = s.genus();
    const int nA = static_cast<int>(alpha.size()), nB = static_cast<int>(beta_source.size());
    for (auto& b : beta_source)
        if (!b.is_arc()) throw DiagramError("beta sources must be arcs");

    // boundary points
    std::map<int, int> at_key;
    auto boundary_vertex = [&](int key) {
        auto it = at_key.find(key);
        if (it != at_key.end()) return it->second;
        DVertex v;
        v.boundary = true;
        v.collar = true;
        v.key = key;
        v.role = PointRole::BoundaryOnly;
        d.verts.push_back(v);
        lab.push_back({2, -1, -1, -1, -1, key, 0});
        at_key[key] = static_cast<int>(d.verts.size()) - 1;
        return static_cast<int>(d.verts.size()) - 1;
    };
    std::vector<int> a_start(nA, -1), a_end(nA, -1), b_start(nB), b_end(nB);
    for (int i = 0; i < nA; ++i) {
        if (!alpha[i].is_arc()) continue;
        a_start[i] = boundary_vertex(alpha[i].start_key);
        a_end[i] = boundary_vertex(alpha[i].end_key);
        for (int v : {a_start[i], a_end[i]}) {
            if (d.verts[v].alpha >= 0) throw DiagramError("alpha arcs share a boundary point");
            d.verts[v].alpha = i;
        }
        d.verts[a_start[i]].role = PointRole::C;
        d.verts[a_end[i]].role = PointRole::CPrime;
    }
    for (int k = 0; k < nB; ++k) {
        b_start[k] = boundary_vertex(beta_source[k].start_key);
        b_end[k] = boundary_vertex(beta_source[k].end_key);
        for (int v : {b_start[k], b_end[k]}) {
            if (d.verts[v].beta >= 0) throw DiagramError("beta arcs share a boundary point");
            d.verts[v].beta = k;
        }
    }
    for (auto& [key, v] : at_key) d.boundary.push_back(v);
    std::map<int, int> rank_of_key;
    for (int t = 0; t < static_cast<int>(d.boundary.size()); ++t) rank_of_key[d.verts[d.boundary[t]].key] = t;
    const int big0 = s.key_period() + 100;
    auto big = [&](int key) { return big0 + 10 * rank_of_key.at(key); };
    if (big(d.verts[d.boundary.back()].key) >= s.key_period() + kFootSpacing)
        throw DiagramError("too many boundary points for the collar layout");

    // inner parts: alpha as given, beta = phi applied to the glued source arcs
    // a shadow loop sits between the families: the arrangement settles
    // linked parallel strands from the lower-indexed curve, and the loop
    // has to be that curve against every beta
    std::vector<CurvePath> curves = alpha;
    const int loop_id = nA, b0 = shadow ? nA + 1 : nA;
    if (shadow) {
        if (nA == 0 || !alpha[0].is_arc() || shadow->loop.is_arc()) throw DiagramError("bad shadow request");
        curves.push_back(shadow->loop);
    }
    for (int k = 0; k < nB; ++k) {
        auto j0 = concat_arc(s, beta_source[k], big(beta_source[k].start_key), big(beta_source[k].end_key));
        curves.push_back(apply_word(s, w, j0));
    }
    Arrangement arr(s, curves);
    auto is_loop = [&](int i) { return shadow && i == loop_id; };
    for (int i = 0; i < b0 + nB; ++i)
        for (int j = i + 1; j < b0 + nB; ++j)
            if (!is_loop(i) && !is_loop(j) && (i < nA) == (j < nA) && arr.count_crossings(i, j) != 0)
                throw DiagramError("curves of one family intersect (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    if (shadow) {
        for (int i = 1; i < nA; ++i)
            if (arr.count_crossings(i, loop_id) != 0) throw DiagramError("shadow loop meets another alpha curve");
        if (arr.count_crossings(0, loop_id) != 1) throw DiagramError("shadow loop must meet the first alpha arc once");
    }

    std::vector<int> alpha_ids(nA), beta_ids(nB);
    std::iota(alpha_ids.begin(), alpha_ids.end(), 0);
    std::iota(beta_ids.begin(), beta_ids.end(), b0);
    std::map<std::tuple<int, int, int, int>, int> crossing_vertex;
    std::vector<std::vector<int>> a_inner(nA), b_inner(nB);
    auto add_inner = [&](int alpha_index, int src, int tag, const Crossing& c, int sign) {
        DVertex v;
        v.alpha = alpha_index;
        v.beta = c.other - b0;
        v.sign = sign;
        v.role = PointRole::Interior;
        d.verts.push_back(v);
        lab.push_back({0, tag, c.chord, c.other - b0, c.other_chord, 0, 0});
        const int id = static_cast<int>(d.verts.size()) - 1;
        crossing_vertex[{src, c.chord, c.other - b0, c.other_chord}] = id;
        a_inner[alpha_index].push_back(id);
    };
    for (int i = 0; i < nA; ++i) {
        const int tag = alpha_tags.empty() ? i : alpha_tags[i];
        if (i > 0 || !shadow) {
            for (const auto& c : arr.crossings_along(i, beta_ids)) add_inner(i, i, tag, c, c.sign);
            continue;
        }
        auto with_loop = beta_ids;
        with_loop.push_back(loop_id);
        for (const auto& c : arr.crossings_along(0, with_loop)) {
            if (c.other != loop_id) {
                add_inner(0, 0, tag, c, c.sign);
                continue;
            }
            // walk around the loop from the crossing; the loop leaves to the
            // left of alpha[0] when it crosses from right to left
            auto others = beta_ids;
            others.push_back(0);
            const auto around = arr.crossings_along(loop_id, others);
            const int n = static_cast<int>(around.size());
            int q = 0;
            while (around[q].other != 0) ++q;
            const bool forward = (c.sign > 0) == (shadow->power < 0);
            for (int t = 1; t < n; ++t) {
                const auto& lc = around[((forward ? q + t : q - t) % n + n) % n];
                add_inner(0, loop_id, shadow->tag, lc, forward ? lc.sign : -lc.sign);
            }
        }
    }
    for (int k = 0; k < nB; ++k) {
        auto others = alpha_ids;
        if (shadow) others.push_back(loop_id);
        for (const auto& c : arr.crossings_along(b0 + k, others)) {
            auto it = crossing_vertex.find({c.other, c.other_chord, k, c.chord});
            if (it == crossing_vertex.end()) throw DiagramError("crossing seen from one side only");
            b_inner[k].push_back(it->second);
        }
    }

    // collar crossings: the beta strand at key u meets the alpha strand at v iff u < v
    std::map<std::pair<int, int>, int> collar_vertex;  // (beta point, alpha point)
    auto collar_cross = [&](int bp, int ap) {
        auto key = std::make_pair(bp, ap);
        auto it = collar_vertex.find(key);
        if (it != collar_vertex.end()) return it->second;
        DVertex v;
        v.alpha = d.verts[ap].alpha;
        v.beta = d.verts[bp].beta;
        const bool a_at_start = d.verts[ap].role == PointRole::C;
        const bool b_at_start = b_start[v.beta] == bp;
        v.sign = a_at_start == b_at_start ? -1 : 1;
        v.collar = true;
        v.role = PointRole::D;
        d.verts.push_back(v);
        lab.push_back({1, -1, -1, -1, -1, d.verts[bp].key, d.verts[ap].key});
        const int id = static_cast<int>(d.verts.size()) - 1;
        collar_vertex[key] = id;
        return id;
    };
    const auto& bnd = d.boundary;
    auto strand_crossings_alpha = [&](int ap) {
        // beta strands with smaller keys, nearest to the boundary first
        std::vector<int> out;
        for (int t = static_cast<int>(bnd.size()) - 1; t >= 0; --t) {
            int bp = bnd[t];
            if (d.verts[bp].key < d.verts[ap].key && d.verts[bp].beta >= 0) out.push_back(collar_cross(bp, ap));
        }
        return out;
    };
    auto strand_crossings_beta = [&](int bp) {
        // alpha strands with larger keys, nearest to the boundary first
        std::vector<int> out;
        for (int t = 0; t < static_cast<int>(bnd.size()); ++t) {
            int ap = bnd[t];
            if (d.verts[ap].key > d.verts[bp].key && d.verts[ap].alpha >= 0) out.push_back(collar_cross(bp, ap));
        }
        return out;
    };

    auto build_strand = [&](int first, const std::vector<int>& top, const std::vector<int>& inner,
                            const std::vector<int>& bottom_top, int last) {
        Strand st;
        st.verts.push_back(first);
        st.verts.insert(st.verts.end(), top.begin(), top.end());
        st.verts.insert(st.verts.end(), inner.begin(), inner.end());
        st.verts.insert(st.verts.end(), bottom_top.rbegin(), bottom_top.rend());
        st.verts.push_back(last);
        for (std::size_t i = 0; i + 1 < st.verts.size(); ++i)
            st.collar_edge.push_back(d.verts[st.verts[i]].collar && d.verts[st.verts[i + 1]].collar);
        return st;
    };
    for (int i = 0; i < nA; ++i) {
        if (alpha[i].is_arc()) {
            d.alpha.push_back(build_strand(a_start[i], strand_crossings_alpha(a_start[i]), a_inner[i],
                                           strand_crossings_alpha(a_end[i]), a_end[i]));
        } else {
            if (a_inner[i].empty()) throw DiagramError("closed alpha curve misses every beta arc");
            Strand st;
            st.closed = true;
            st.verts = a_inner[i];
            st.collar_edge.assign(st.verts.size(), 0);
            d.alpha.push_back(st);
        }
    }
    for (int k = 0; k < nB; ++k)
        d.beta.push_back(build_strand(b_start[k], strand_crossings_beta(b_start[k]), b_inner[k],
                                      strand_crossings_beta(b_end[k]), b_end[k]));

    // z sits left of the beta strand from the first boundary point, just
    // past its last collar crossing
    const int p0 = bnd.front();
    if (d.verts[p0].beta < 0 || b_start[d.verts[p0].beta] != p0)
        throw DiagramError("first boundary point must start a beta arc");
    d.z_beta = d.verts[p0].beta;
    auto top = strand_crossings_beta(p0);
    if (top.empty()) throw DiagramError("no collar crossing next to z");
    d.z_vertex = top.back();

    d.rebuild();
    const int chi = d.euler_characteristic();
    if (chi != 1 - 2 * s.genus())
        throw DiagramError("diagram Euler characteristic " + std::to_string(chi) + " differs from the page");
    if (labels) *labels = std::move(lab);
    return d;
}

}  // namespace detail

PageDiagram assemble_diagram(const Surface& s, const std::vector<CurvePath>& alpha,
                             const std::vector<CurvePath>& beta_source, const MonodromyWord& w) {
    return detail::assemble_core(s, alpha, {}, beta_source, w, nullptr, nullptr);
}

PageDiagram build_page_diagram(const DiagramRequest& req) {
    Surface s(req.word.genus);
    std::vector<CurvePath> a;
    for (int i = 1; i <= s.num_arcs(); ++i) a.push_back(s.standard_arc(i));
    if (req.basis == BasisKind::Standard) return assemble_diagram(s, a, a, req.word);
    if (req.basis == BasisKind::Compatible) {
        a = detail::compatible_basis(s, req.lagrangian);
        return assemble_diagram(s, a, a, req.word);
    }
    return build_triangle_diagrams(req.word, req.lagrangian).prime;
}

// ------------------------------------------------------------ generators

int alexander_grading(const PageDiagram& d, const std::vector<int>& points) {
    int out = -d.genus;
    for (int v : points)
        if (!d.verts[v].collar) ++out;
    return out;
}

namespace {

std::vector<std::vector<int>> alpha_candidates(const PageDiagram& d) {
    std::vector<std::vector<int>> cand(d.alpha.size());
    for (int v = 0; v < static_cast<int>(d.verts.size()); ++v)
        if (d.verts[v].alpha >= 0 && d.verts[v].beta >= 0) cand[d.verts[v].alpha].push_back(v);
    return cand;
}

void check_grading(const PageDiagram& d, int grading) {
    if (grading != -d.genus && grading != -d.genus + 1)
        throw Unsupported(d.genus, "grading " + std::to_string(grading) + " is outside {-g, -g+1}");
}

}  // namespace

std::vector<Generator> enumerate_generators(const PageDiagram& d, int grading) {
    check_grading(d, grading);
    const int want = grading + d.genus;
    const auto cand = alpha_candidates(d);
    const int n = static_cast<int>(d.alpha.size());
    std::vector<Generator> out;
    std::vector<int> pts(n);
    std::vector<char> used(d.beta.size(), 0);
    std::function<void(int, int)> rec = [&](int i, int outside) {
        if (i == n) {
            if (outside == want) out.push_back({pts, grading});
            return;
        }
        for (int v : cand[i]) {
            const int b = d.verts[v].beta;
            const int o = outside + (d.verts[v].collar ? 0 : 1);
            if (used[b] || o > want) continue;
            used[b] = 1;
            pts[i] = v;
            rec(i + 1, o);
            used[b] = 0;
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Generator> enumerate_generators_bruteforce(const PageDiagram& d, int grading) {
    check_grading(d, grading);
    const auto cand = alpha_candidates(d);
    const int n = static_cast<int>(d.alpha.size());
    std::vector<Generator> out;
    std::vector<std::size_t> idx(n, 0);
    for (auto& c : cand)
        if (c.empty()) return out;
    while (true) {
        std::vector<int> pts(n);
        for (int i = 0; i < n; ++i) pts[i] = cand[i][idx[i]];
        std::vector<int> bs;
        for (int v : pts) bs.push_back(d.verts[v].beta);
        std::sort(bs.begin(), bs.end());
        if (std::adjacent_find(bs.begin(), bs.end()) == bs.end() && alexander_grading(d, pts) == grading)
            out.push_back({pts, grading});
        int i = 0;
        while (i < n && ++idx[i] == cand[i].size()) idx[i++] = 0;
        if (i == n) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Generator quotient_canonicalize(const PageDiagram& d, const Generator& x) {
    Generator y = x;
    for (int i = 0; i < static_cast<int>(y.points.size()); ++i) {
        const int v = y.points[i];
        if (d.verts[v].role == PointRole::CPrime) y.points[i] = d.alpha[i].verts.front();
    }
    return y;
}

}  // namespace pf
