#include "pf/floer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <set>

#include "json.hpp"

namespace pf {

// ------------------------------------------------------------ domains

namespace {

struct DomainCounter {
    const PageDiagram& d;
    std::vector<std::vector<std::pair<int, int>>> adj;  // face -> (neighbour, edge)

    explicit DomainCounter(const PageDiagram& dd) : d(dd) {
        adj.assign(d.faces.size(), {});
        for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
            const int l = d.face_of[2 * e], r = d.face_of[2 * e + 1];
            adj[l].push_back({r, e});
            adj[r].push_back({l, e});
        }
    }

    // Multiplicities of the 2-chain bounded by the half-edge path, zero on
    // the outer face. Empty if the path does not bound.
    std::vector<int> multiplicities(const std::vector<int>& path) const {
        std::map<int, int> delta;
        for (int h : path) delta[h >> 1] += (h & 1) ? -1 : 1;
        std::vector<int> n(d.faces.size(), 0);
        std::vector<char> seen(d.faces.size(), 0);
        std::deque<int> q{d.outer_face};
        seen[d.outer_face] = 1;
        while (!q.empty()) {
            const int f = q.front();
            q.pop_front();
            for (auto [g, e] : adj[f]) {
                auto it = delta.find(e);
                const int de = it == delta.end() ? 0 : it->second;
                // crossing from the right face of 2e to its left face adds de
                const int val = d.face_of[2 * e] == g ? n[f] + de : n[f] - de;
                if (d.face_of[2 * e] == d.face_of[2 * e + 1]) {
                    if (de != 0) return {};
                    continue;
                }
                if (!seen[g]) {
                    seen[g] = 1;
                    n[g] = val;
                    q.push_back(g);
                } else if (n[g] != val) {
                    return {};
                }
            }
        }
        return n;
    }

    int corner_weight(const std::vector<int>& n, int v) const {
        int s = 0;
        for (int h : d.rot[v]) s += n[d.face_of[h]];
        return s;
    }

    // Empty embedded polygon of index one avoiding the excluded faces.
    bool admissible(const std::vector<int>& path, const std::vector<int>& xs, const std::vector<int>& ys) const {
        auto n = multiplicities(path);
        if (n.empty()) return false;
        int four_mu = 0;
        for (int f = 0; f < static_cast<int>(n.size()); ++f) {
            if (n[f] == 0) continue;
            if (n[f] != 1 || d.excluded(f)) return false;
            four_mu += 4 - d.corners(f);
        }
        for (int v : xs) four_mu += corner_weight(n, v);
        for (int v : ys) four_mu += corner_weight(n, v);
        return four_mu == 4;
    }
};

// Walk along a strand starting with half-edge h; calls visit(arrival
// half-edge) at each vertex reached until visit returns false or the strand
// ends.
template <class F>
void walk(const PageDiagram& d, int h, F&& visit) {
    const int start = d.org[h];
    for (int guard = 0; guard < 1 << 20; ++guard) {
        if (!visit(h)) return;
        const int v = d.dest(h);
        if (v == start) return;
        const auto& ed = d.edges[h >> 1];
        const Strand& st = ed.type == 'a' ? d.alpha[ed.curve] : d.beta[ed.curve];
        const int n = static_cast<int>(st.verts.size());
        const bool fwd = (h & 1) == 0;
        int idx = fwd ? ed.index + 1 : ed.index - 1;
        if (st.closed) idx = (idx % n + n) % n;
        else if (idx < 0 || idx >= n - 1) return;
        h = fwd ? 2 * ((h >> 1) - ed.index + idx) : 2 * ((h >> 1) - ed.index + idx) + 1;
    }
    throw DiagramError("strand walk did not terminate");
}

// Alpha half-edges leaving v.
std::vector<int> alpha_rays(const PageDiagram& d, int v) {
    std::vector<int> out;
    for (int h : d.rot[v])
        if (d.edges[h >> 1].type == 'a') out.push_back(h);
    return out;
}

struct Polygon {
    std::vector<int> from, to;  // replaced alpha indices and their new points
};

// All admissible bigons and rectangles leaving generator x.
std::vector<std::pair<std::vector<int>, bool>> polygons_from(const PageDiagram& d, const DomainCounter& dc,
                                                             const std::vector<int>& x) {
    std::vector<std::pair<std::vector<int>, bool>> out;  // (new points, is_bigon)
    const int na = static_cast<int>(x.size());
    std::vector<int> on_beta(d.beta.size(), -1);  // beta -> alpha index of x's point
    for (int i = 0; i < na; ++i) on_beta[d.verts[x[i]].beta] = i;

    for (int i = 0; i < na; ++i) {
        const int xa = x[i];
        const int j = d.verts[xa].beta;
        for (int h0 : alpha_rays(d, xa)) {
            if (d.edges[d.ccw_next(h0) >> 1].type != 'b') continue;
            std::vector<int> path;
            walk(d, h0, [&](int ha) {
                path.push_back(ha);
                const int u = d.dest(ha);
                const int hb = d.cw_next(ha ^ 1);
                if (d.edges[hb >> 1].type != 'b' || d.verts[u].alpha < 0) return true;
                const int l = d.edges[hb >> 1].curve;
                const std::size_t mark1 = path.size();
                if (l == j) {
                    walk(d, hb, [&](int hb2) {
                        path.push_back(hb2);
                        if (d.dest(hb2) != xa) return true;
                        if (d.cw_next(hb2 ^ 1) == h0 && dc.admissible(path, x, {u})) {
                            auto y = x;
                            y[i] = u;
                            out.push_back({y, true});
                        }
                        return false;
                    });
                } else {
                    const int k = on_beta[l];
                    const int xb = x[k];
                    walk(d, hb, [&](int hb2) {
                        path.push_back(hb2);
                        if (d.dest(hb2) != xb) return true;
                        const int h2 = d.cw_next(hb2 ^ 1);
                        if (d.edges[h2 >> 1].type != 'a' || i > k) return false;
                        const std::size_t mark2 = path.size();
                        walk(d, h2, [&](int ha2) {
                            path.push_back(ha2);
                            const int u2 = d.dest(ha2);
                            const int hb3 = d.cw_next(ha2 ^ 1);
                            if (d.edges[hb3 >> 1].type != 'b' || d.edges[hb3 >> 1].curve != j) return true;
                            const std::size_t mark3 = path.size();
                            walk(d, hb3, [&](int hb4) {
                                path.push_back(hb4);
                                if (d.dest(hb4) != xa) return true;
                                if (d.cw_next(hb4 ^ 1) == h0 && dc.admissible(path, x, {u, u2})) {
                                    auto y = x;
                                    y[i] = u;
                                    y[k] = u2;
                                    out.push_back({y, false});
                                }
                                return false;
                            });
                            path.resize(mark3);
                            return true;
                        });
                        path.resize(mark2);
                        return false;
                    });
                }
                path.resize(mark1);
                return true;
            });
        }
    }
    return out;
}

}  // namespace

std::uint64_t diagram_hash(const PageDiagram& d) {
    // FNV-1a over the strand structure
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](long long v) {
        for (int b = 0; b < 8; ++b) {
            h ^= static_cast<std::uint64_t>((v >> (8 * b)) & 0xff);
            h *= 1099511628211ull;
        }
    };
    mix(d.genus);
    for (const auto* fam : {&d.alpha, &d.beta}) {
        mix(static_cast<long long>(fam->size()));
        for (const auto& st : *fam) {
            mix(st.closed);
            for (int v : st.verts) mix(v);
            mix(-1);
        }
    }
    for (const auto& v : d.verts) mix(v.sign * 4 + v.collar * 2 + v.boundary);
    return h;
}

std::size_t GradedComplexF2::rank() const {
    return generators.size() - 2 * pf::rank(differential);
}

std::string GradedComplexF2::to_json() const {
    nlohmann::json j;
    nlohmann::json gens = nlohmann::json::array();
    for (auto& g : generators) gens.push_back(g.points);
    j["generators"] = gens;
    nlohmann::json b = nlohmann::json::array();
    for (auto [r, c] : differential.entries) b.push_back({r, c});
    j["boundary"] = b;
    j["grading"] = grading;
    return j.dump();
}

GradedComplexF2 differential(const PageDiagram& d, int grading, bool audit) {
    if (!d.bad_faces().empty()) throw DiagramError("differential needs a nice diagram");
    GradedComplexF2 out;
    out.grading = grading;
    out.diagram_hash = diagram_hash(d);
    auto all = enumerate_generators(d, grading);
    std::map<std::vector<int>, std::vector<const Generator*>> classes;
    for (auto& g : all) classes[quotient_canonicalize(d, g).points].push_back(&g);
    std::map<std::vector<int>, int> index;
    for (auto& [pts, reps] : classes) {
        index[pts] = static_cast<int>(out.generators.size());
        out.generators.push_back({pts, grading});
    }
    const DomainCounter dc(d);
    out.differential.rows = out.differential.cols = out.generators.size();

    auto row_of = [&](const std::vector<int>& src, bool count) {
        std::vector<std::uint32_t> targets;
        for (auto& [y, bigon] : polygons_from(d, dc, src)) {
            if (alexander_grading(d, y) != grading) {
                if (count) ++out.grading_shifting;
                continue;
            }
            if (count) ++(bigon ? out.bigons : out.rectangles);
            auto it = index.find(quotient_canonicalize(d, {y, grading}).points);
            if (it == index.end()) throw std::logic_error("polygon target is not a generator");
            targets.push_back(static_cast<std::uint32_t>(it->second));
        }
        std::sort(targets.begin(), targets.end());
        std::vector<std::uint32_t> odd;
        for (std::size_t a = 0; a < targets.size();) {
            std::size_t b = a;
            while (b < targets.size() && targets[b] == targets[a]) ++b;
            if ((b - a) & 1) odd.push_back(targets[a]);
            a = b;
        }
        return odd;
    };

    for (auto& [pts, reps] : classes) {
        const auto col = static_cast<std::uint32_t>(index[pts]);
        auto odd = row_of(pts, true);
        for (auto r : odd) out.differential.entries.push_back({r, col});
        if (audit)
            for (auto* g : reps)
                if (row_of(g->points, false) != odd)
                    throw std::logic_error("quotient differential depends on the representative");
    }
    out.differential.normalize();
    auto dense = out.differential.dense();
    if (!(dense * dense).is_zero()) throw std::logic_error("differential squares to a nonzero map");
    return out;
}

// ------------------------------------------------------------ pipeline

namespace {

MonodromyWord cyclically_reduced(MonodromyWord w) {
    auto& ls = w.letters;
    auto cancels = [](const Letter& x, const Letter& y) { return x.curve == y.curve && x.power == -y.power; };
    std::vector<Letter> st;
    for (const auto& l : ls) {
        if (!st.empty() && cancels(st.back(), l)) st.pop_back();
        else st.push_back(l);
    }
    std::size_t i = 0, j = st.size();
    while (j - i >= 2 && cancels(st[i], st[j - 1])) ++i, --j;
    ls.assign(st.begin() + static_cast<std::ptrdiff_t>(i), st.begin() + static_cast<std::ptrdiff_t>(j));
    return w;
}

}  // namespace

HfkResult hfk(int genus, const MonodromyWord& w, int grading) {
    if (w.genus != genus) throw WordError("word genus differs from the requested genus");
    // Conjugate words give the same open book. When nicening gets stuck on
    // the given word, retry on the cyclic reduction and its rotations.
    std::vector<MonodromyWord> tries{w};
    const auto red = cyclically_reduced(w);
    for (std::size_t r = 0; r < std::max<std::size_t>(red.letters.size(), 1); ++r) {
        auto rot = red;
        std::rotate(rot.letters.begin(), rot.letters.begin() + static_cast<std::ptrdiff_t>(r), rot.letters.end());
        if (std::find(tries.begin(), tries.end(), rot) == tries.end()) tries.push_back(rot);
    }
    for (std::size_t k = 0;; ++k) {
        HfkResult r;
        PageDiagram d;
        try {
            d = nicen(build_page_diagram({tries[k]}), &r.nicen);
        } catch (const DiagramError&) {
            if (k + 1 == tries.size()) throw;
            continue;
        }
        auto c = differential(d, grading);
        r.rank = static_cast<int>(c.rank());
        r.generators = static_cast<int>(c.generators.size());
        r.vertices = static_cast<int>(d.verts.size());
        r.faces = static_cast<int>(d.faces.size());
        r.word = tries[k].to_string();
        return r;
    }
}

int hfk_rank(int genus, const MonodromyWord& w, int grading) { return hfk(genus, w, grading).rank; }

int lagrangian_hf_rank(const Surface& s, const CurvePath& l1, const CurvePath& l2) {
    for (auto* c : {&l1, &l2})
        if (c->is_arc() || normalize(*c).word.empty()) throw SurfaceError("Lagrangian must be an essential closed curve");
    if (isotopic(l1, l2)) return 2;
    return geometric_intersection(s, l1, l2);
}

// ------------------------------------------------------------ nicening

namespace {

// Badness weighted by dual distance to the excluded faces; a move that only
// shifts a bad corner pair toward the boundary still lowers it.
long long potential(const PageDiagram& d) {
    const int nf = static_cast<int>(d.faces.size());
    std::vector<int> dist(nf, -1);
    std::deque<int> q;
    for (int f = 0; f < nf; ++f)
        if (d.excluded(f)) {
            dist[f] = 0;
            q.push_back(f);
        }
    while (!q.empty()) {
        const int f = q.front();
        q.pop_front();
        for (int h : d.faces[f]) {
            const int g = d.face_of[h ^ 1];
            if (dist[g] < 0) {
                dist[g] = dist[f] + 1;
                q.push_back(g);
            }
        }
    }
    long long p = 0;
    for (int f : d.bad_faces()) {
        long long w = 1;
        for (int i = 1; i < dist[f] && i < 20; ++i) w *= 8;
        p += (d.corners(f) - 4) * w;
    }
    return p;
}

// Push the edge of half-edge hm (face R on its left) through R, across the
// half-edge f1 of R from the other family, then on across edges of that
// family until the tip lands in an excluded face or a bigon.
// Around each face away from the boundary, the alpha sides change the
// collar count by -1 at z and by 0 elsewhere.
bool grading_consistent(const PageDiagram& d) {
    for (int f = 0; f < static_cast<int>(d.faces.size()); ++f) {
        if (d.face_boundary[f]) continue;
        int s = 0;
        for (int h : d.faces[f])
            if (d.edges[h >> 1].type == 'a') s += d.verts[d.org[h]].collar - d.verts[d.dest(h)].collar;
        if (s != (f == d.z_face ? -1 : 0)) return false;
    }
    return true;
}

std::optional<PageDiagram> finger_move(const PageDiagram& d, int hm, int f1) {
    const char mover = d.edges[hm >> 1].type, other = mover == 'a' ? 'b' : 'a';
    const int R = d.face_of[hm], Rp = d.face_of[hm ^ 1];
    const bool rp_target = d.excluded(Rp);
    std::vector<int> path{f1};
    const int q1 = d.face_of[f1 ^ 1];
    if (q1 == R || (q1 == Rp && !rp_target)) return std::nullopt;
    // a finger may end in an excluded face or in a bigon, which it turns
    // into a square plus the bigon at the tip
    auto target = [&](int f) { return d.excluded(f) || d.corners(f) == 2; };
    if (!target(q1)) {
        // cheapest path by the badness its splits create; squares crossed
        // through opposite sides are free
        using State = std::pair<std::pair<int, int>, int>;  // ((cost, length), face)
        std::map<int, std::pair<int, int>> best;
        std::map<int, int> parent;  // face -> half-edge used to enter it
        std::priority_queue<State, std::vector<State>, std::greater<>> pq;
        best[q1] = {0, 1};
        parent[q1] = f1;
        pq.push({{0, 1}, q1});
        int goal = -1;
        while (!pq.empty()) {
            auto [key, f] = pq.top();
            pq.pop();
            if (best[f] != key) continue;
            if (target(f)) {
                goal = f;
                break;
            }
            const auto& cyc = d.faces[f];
            const int n = static_cast<int>(cyc.size());
            const int in = static_cast<int>(std::find(cyc.begin(), cyc.end(), parent[f] ^ 1) - cyc.begin());
            for (int t = 1; t < n; ++t) {
                const int h = cyc[(in + t) % n];
                if (d.edges[h >> 1].type != other) continue;
                const int g = d.face_of[h ^ 1];
                if (g == R || (g == Rp && !rp_target)) continue;
                const int split = std::max(0, t - 2) + std::max(0, n - t - 2) - std::max(0, n - 4);
                std::pair<int, int> nk{key.first + split, key.second + 1};
                auto it = best.find(g);
                if (it != best.end() && it->second <= nk) continue;
                // a face is crossed at most once
                bool on_path = false;
                for (int x = f; x != q1 && !on_path; x = d.face_of[parent[x]]) on_path = x == g;
                if (on_path || g == q1) continue;
                best[g] = nk;
                parent[g] = h;
                pq.push({nk, g});
            }
        }
        if (goal < 0) {
            return std::nullopt;
        }
        path.clear();
        for (int f = goal; f != q1; f = d.face_of[parent[f]]) path.push_back(parent[f]);
        path.push_back(f1);
        std::reverse(path.begin(), path.end());
    }

    PageDiagram out = d;
    const auto& em = d.edges[hm >> 1];
    const int dir_m = (hm & 1) ? -1 : 1;
    std::map<int, std::vector<int>> cross_ins;  // crossed edge -> new vertices in strand order
    std::vector<int> left, right;
    for (int h : path) {
        const auto& ef = d.edges[h >> 1];
        const bool fwd = (h & 1) == 0;
        // orientation of (crossed tangent, mover tangent) on the left wall
        const int s_fm = (fwd ? -1 : 1) * dir_m;
        const int s_left = mover == 'b' ? s_fm : -s_fm;
        DVertex v;
        v.alpha = mover == 'a' ? em.curve : ef.curve;
        v.beta = mover == 'b' ? em.curve : ef.curve;
        v.collar = ef.collar;
        v.origin = h >> 1;
        v.sign = s_left;
        out.verts.push_back(v);
        const int lv = static_cast<int>(out.verts.size()) - 1;
        v.sign = -s_left;
        out.verts.push_back(v);
        const int rv = lv + 1;
        left.push_back(lv);
        right.push_back(rv);
        // the right wall crosses near the tail of h
        cross_ins[h >> 1] = fwd ? std::vector<int>{rv, lv} : std::vector<int>{lv, rv};
    }
    std::vector<int> finger(left);
    finger.insert(finger.end(), right.rbegin(), right.rend());
    if (dir_m < 0) std::reverse(finger.begin(), finger.end());

    auto splice = [&](Strand& st, const std::map<int, std::vector<int>>& ins, int e0) {
        std::vector<int> nv;
        for (int i = 0; i < static_cast<int>(st.verts.size()); ++i) {
            nv.push_back(st.verts[i]);
            auto it = ins.find(e0 + i);
            if (it != ins.end()) nv.insert(nv.end(), it->second.begin(), it->second.end());
        }
        st.verts = std::move(nv);
        st.collar_edge.clear();
        for (int i = 0; i < st.num_edges(); ++i) {
            const int a = st.verts[i], b = st.verts[(i + 1) % st.verts.size()];
            st.collar_edge.push_back(out.verts[a].collar && out.verts[b].collar);
        }
    };
    auto& ofam = other == 'a' ? out.alpha : out.beta;
    const auto& oe0 = other == 'a' ? d.alpha_edge0 : d.beta_edge0;
    for (int c = 0; c < static_cast<int>(ofam.size()); ++c) {
        std::map<int, std::vector<int>> ins;
        for (auto& [e, vs] : cross_ins)
            if (d.edges[e].curve == c) ins[e] = vs;
        if (!ins.empty()) splice(ofam[c], ins, oe0[c]);
    }
    if (mover == 'a') splice(out.alpha[em.curve], {{hm >> 1, finger}}, d.alpha_edge0[em.curve]);
    else splice(out.beta[em.curve], {{hm >> 1, finger}}, d.beta_edge0[em.curve]);
    out.rebuild();

    // Points on an edge that leaves the collar can sit on either side of it.
    // Pick the sides so that every domain avoiding z keeps the grading.
    std::vector<int> loose;
    for (int j = 0; j < static_cast<int>(path.size()); ++j) {
        const int e = path[j] >> 1;
        if (d.verts[d.org[2 * e]].collar != d.verts[d.org[2 * e + 1]].collar) loose.push_back(j);
    }
    if (loose.size() > 12) return std::nullopt;
    bool settled = false;
    for (unsigned mask = 0; mask < (1u << loose.size()) && !settled; ++mask) {
        for (std::size_t k = 0; k < loose.size(); ++k) {
            const bool c = !((mask >> k) & 1);
            out.verts[left[loose[k]]].collar = c;
            out.verts[right[loose[k]]].collar = c;
        }
        settled = grading_consistent(out);
    }
    if (!settled) return std::nullopt;
    if (!loose.empty()) {
        for (auto* fam : {&out.alpha, &out.beta})
            for (auto& s : *fam) {
                s.collar_edge.clear();
                for (int i = 0; i < s.num_edges(); ++i)
                    s.collar_edge.push_back(out.verts[s.verts[i]].collar &&
                                            out.verts[s.verts[(i + 1) % s.verts.size()]].collar);
            }
        out.rebuild();
    }
    if (out.euler_characteristic() != d.euler_characteristic())
        throw DiagramError("finger move changed the Euler characteristic");
    if (out.z_face < 0 || out.face_boundary[out.z_face]) throw DiagramError("finger move lost z");
    return out;
}

}  // namespace

PageDiagram nicen(const PageDiagram& d0, NicenStats* stats, int budget) {
    PageDiagram d = d0;
    NicenStats st;
    st.bad_before = static_cast<int>(d.bad_faces().size());
    long long low = potential(d);
    int since_low = 0;
    while (true) {
        const auto bad = d.bad_faces();
        if (bad.empty()) break;
        if (st.moves >= budget) throw DiagramError("nicening exceeded its move budget");
        const long long cur = potential(d);
        std::optional<PageDiagram> best;
        std::pair<long long, std::size_t> best_key{0, 0};
        auto consider = [&](int hm, int f1) {
            const char tm = d.edges[hm >> 1].type, tf = d.edges[f1 >> 1].type;
            if (tm == tf || tm == 'd' || tf == 'd') return;
            auto cand = finger_move(d, hm, f1);
            if (!cand) return;
            std::pair<long long, std::size_t> key{potential(*cand), cand->verts.size()};
            if (!best || key < best_key) {
                best = std::move(cand);
                best_key = key;
            }
        };
        for (int R : bad) {
            const auto& cyc = d.faces[R];
            const int n = static_cast<int>(cyc.size());
            for (int t = 0; t < n; ++t)
                for (int off = 3; off < n; off += 2) consider(cyc[t], cyc[(t + off) % n]);
            // only look past the first bad face when it admits no improving move
            if (best && best_key.first < cur) break;
        }
        if (!best) throw DiagramError("no finger move available for a bad face");
        d = std::move(*best);
        ++st.moves;
        if (best_key.first < low) {
            low = best_key.first;
            since_low = 0;
        } else if (++since_low > 24) {
            throw DiagramError("nicening stalled");
        }
    }
    st.bad_after = 0;
    if (stats) *stats = st;
    return d;
}

}  // namespace pf
