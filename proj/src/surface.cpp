#include "pf/surface.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <numeric>

namespace pf {

Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& x : out) x = -x;
    return out;
}

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int x : w) {
        if (!out.empty() && out.back() == -x) out.pop_back();
        else out.push_back(x);
    }
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    std::size_t lo = 0, hi = r.size();
    while (hi - lo >= 2 && r[lo] == -r[hi - 1]) { ++lo; --hi; }
    return Word(r.begin() + lo, r.begin() + hi);
}

Word canonical_rotation(const Word& w) {
    if (w.empty()) return w;
    Word best = w;
    Word cur = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

std::vector<std::int64_t> CurvePath::coordinates(int genus) const {
    std::vector<std::int64_t> out(2 * genus, 0);
    for (int x : word) ++out[std::abs(x) - 1];
    return out;
}

bool CurvePath::operator==(const CurvePath& o) const {
    return kind == o.kind && word == o.word && start_key == o.start_key && end_key == o.end_key;
}

CurvePath normalize(const CurvePath& c) {
    CurvePath out = c;
    if (c.is_arc()) out.word = free_reduce(c.word);
    else out.word = cyclic_reduce(c.word);
    return out;
}

bool isotopic(const CurvePath& a, const CurvePath& b) {
    auto na = normalize(a), nb = normalize(b);
    if (na.kind != nb.kind) return false;
    if (na.is_arc()) return na == nb;
    // unoriented simple closed curves: compare up to rotation and reversal
    auto ca = canonical_rotation(na.word);
    return ca == canonical_rotation(nb.word) || ca == canonical_rotation(inverse(nb.word));
}

// ---------------------------------------------------------------- Surface

namespace {

// Trace faces of a graph with a rotation system. Half-edge h has origin
// org[h] and twin h^1; rot[v] lists half-edges ccw. Faces keep the face on
// the left.
std::vector<std::vector<int>> trace_faces(const std::vector<int>& org,
                                          const std::vector<std::vector<int>>& rot) {
    const int nh = static_cast<int>(org.size());
    std::vector<int> pos(nh, -1);
    for (auto& r : rot)
        for (int i = 0; i < static_cast<int>(r.size()); ++i) pos[r[i]] = i;
    std::vector<char> seen(nh, 0);
    std::vector<std::vector<int>> faces;
    for (int h0 = 0; h0 < nh; ++h0) {
        if (seen[h0]) continue;
        std::vector<int> cyc;
        int h = h0;
        while (!seen[h]) {
            seen[h] = 1;
            cyc.push_back(h);
            int t = h ^ 1;
            const auto& r = rot[org[t]];
            int k = static_cast<int>(r.size());
            h = r[(pos[t] + k - 1) % k];
        }
        faces.push_back(std::move(cyc));
    }
    return faces;
}

}  // namespace

Surface::Surface(int genus) : g_(genus) {
    if (genus < 1) throw SurfaceError("genus must be at least 1");
    const int na = 2 * g_, nf = 4 * g_;
    start_.assign(na + 1, 0);
    end_.assign(na + 1, 0);
    foot_arc_.assign(nf + 1, 0);
    for (int b = 0; b < g_; ++b) {
        start_[2 * b + 1] = 4 * b + 1;
        end_[2 * b + 1] = 4 * b + 3;
        start_[2 * b + 2] = 4 * b + 2;
        end_[2 * b + 2] = 4 * b + 4;
    }
    for (int i = 1; i <= na; ++i) {
        foot_arc_[start_[i]] = i;
        foot_arc_[end_[i]] = i;
    }

    // vertices: feet 0..nf-1 ; edges: boundary segments then arcs
    // half-edge 2e goes forward (increasing key / start to end)
    std::vector<int> org;
    std::vector<std::vector<int>> rot(nf);
    for (int k = 1; k <= nf; ++k) {
        org.push_back(k - 1);
        org.push_back(k % nf);
    }
    for (int i = 1; i <= na; ++i) {
        org.push_back(start_[i] - 1);
        org.push_back(end_[i] - 1);
    }
    for (int k = 1; k <= nf; ++k) {
        int fwd = 2 * (k - 1);
        int bwd = 2 * (((k - 2 + nf) % nf)) + 1;
        int i = foot_arc_[k];
        int arc = 2 * (nf + i - 1) + (start_[i] == k ? 0 : 1);
        rot[k - 1] = {fwd, arc, bwd};
    }
    auto faces = trace_faces(org, rot);
    const std::vector<int>* inner = nullptr;
    for (auto& f : faces)
        if (std::any_of(f.begin(), f.end(), [&](int h) { return h >= 2 * nf; })) {
            if (inner) throw SurfaceError("reference arcs do not cut the surface into one disk");
            inner = &f;
        }
    if (!inner || static_cast<int>(inner->size()) != 2 * nf)
        throw SurfaceError("unexpected reference polygon");

    bside_.assign(nf + 1, -1);
    lside_.assign(na + 1, -1);
    rside_.assign(na + 1, -1);
    for (int h : *inner) {
        int e = h / 2;
        int idx = static_cast<int>(sides_.size());
        if (e < nf) {
            if (h & 1) throw SurfaceError("boundary traversed backwards in polygon");
            sides_.push_back({Side::Type::Boundary, e + 1});
            bside_[e + 1] = idx;
        } else {
            int i = e - nf + 1;
            bool left = (h & 1) == 0;
            sides_.push_back({left ? Side::Type::ArcLeft : Side::Type::ArcRight, i});
            (left ? lside_ : rside_)[i] = idx;
        }
    }

    for (int j = 1; j <= g_; ++j) {
        named_["a" + std::to_string(j)] = CurvePath{CurvePath::Kind::Closed, {2 * j - 1}, 0, 0};
        named_["b" + std::to_string(j)] = CurvePath{CurvePath::Kind::Closed, {2 * j}, 0, 0};
    }
    // curve linking handle j to handle j+1: meets b_j and b_{j+1} once each,
    // misses every a-curve (found by search over short simple words)
    for (int j = 1; j < g_; ++j)
        named_["c" + std::to_string(j)] = CurvePath{CurvePath::Kind::Closed, {2 * j - 1, 2 * j + 1}, 0, 0};
}

int Surface::segment_of_key(int key) const {
    int k = key / kFootSpacing;
    if (key % kFootSpacing == 0 || k < 1 || k > num_feet())
        throw SurfaceError("boundary key " + std::to_string(key) + " is not inside a segment");
    return k;
}

int Surface::boundary_pass_letter(int foot, int dir) const {
    int i = foot_arc_[foot];
    bool st = foot_is_start(foot);
    // right side of an arc is the +key side at its start, -key side at its end
    if (dir < 0) return st ? i : -i;
    return st ? -i : i;
}

Word Surface::boundary_path(int from_key, int to_key, int dir) const {
    Word out;
    const int nf = num_feet();
    const int period = kFootSpacing * nf;
    auto norm = [&](int k) { return ((k - kFootSpacing) % period + period) % period + kFootSpacing; };
    int a = norm(from_key), b = norm(to_key);
    if (dir > 0) {
        int span = ((b - a) % period + period) % period;
        for (int k = 1; k <= nf; ++k) {
            int d = ((foot_key(k) - a) % period + period) % period;
            if (d > 0 && d < span) out.push_back(k);
        }
        std::sort(out.begin(), out.end(), [&](int x, int y) {
            return ((foot_key(x) - a) % period + period) % period <
                   ((foot_key(y) - a) % period + period) % period;
        });
    } else {
        int span = ((a - b) % period + period) % period;
        for (int k = 1; k <= nf; ++k) {
            int d = ((a - foot_key(k)) % period + period) % period;
            if (d > 0 && d < span) out.push_back(k);
        }
        std::sort(out.begin(), out.end(), [&](int x, int y) {
            return ((a - foot_key(x)) % period + period) % period <
                   ((a - foot_key(y)) % period + period) % period;
        });
    }
    for (auto& k : out) k = boundary_pass_letter(k, dir);
    return out;
}

Word Surface::boundary_loop(int from_key, int dir) const {
    Word out;
    const int nf = num_feet();
    int seg = segment_of_key(from_key);
    for (int t = 0; t < nf; ++t) {
        int k = dir > 0 ? (seg + t) % nf + 1 : ((seg - 1 - t) % nf + nf) % nf + 1;
        out.push_back(boundary_pass_letter(k, dir));
    }
    return out;
}

CurvePath Surface::standard_arc(int i) const {
    CurvePath c;
    c.kind = CurvePath::Kind::Arc;
    c.start_key = foot_key(start_[i]) + 1;
    c.end_key = foot_key(end_[i]) - 1;
    return c;
}

const CurvePath& Surface::curve(const std::string& name) const {
    auto it = named_.find(name);
    if (it == named_.end()) throw SurfaceError("unknown curve '" + name + "'");
    return it->second;
}

void Surface::validate(const CurvePath& c) const {
    for (int x : c.word)
        if (x == 0 || std::abs(x) > num_arcs()) throw SurfaceError("letter out of range");
    if (c.is_arc()) {
        segment_of_key(c.start_key);
        segment_of_key(c.end_key);
        if (c.start_key == c.end_key) throw SurfaceError("arc endpoints coincide");
    } else if (cyclic_reduce(c.word).empty()) {
        throw SurfaceError("closed curve is null-homotopic");
    }
}

// ------------------------------------------------------------ Arrangement

namespace {

struct PointRef {
    int curve;
    int letter;
};

}  // namespace

Arrangement::Arrangement(const Surface& s, std::vector<CurvePath> curves)
    : s_(&s), curves_(std::move(curves)) {
    const int N = static_cast<int>(s.sides().size());
    for (auto& c : curves_) s.validate(c);

    auto twin = [&](int side) {
        const auto& sd = s.sides()[side];
        return s.side_of_arc(sd.index, sd.type != Side::Type::ArcLeft);
    };
    auto seg_offset = [&](int key) { return key - kFootSpacing * s.segment_of_key(key); };

    // One step of a walk: leave side and, for boundary, the key offset.
    struct Leave {
        int side;
        int offset;  // boundary only
        bool foot;
    };
    // walk from letter (c, j) away from reference arc on the given side
    auto leave_at = [&](int c, int j, int dir, int t) -> Leave {
        const auto& cv = curves_[c];
        const int n = static_cast<int>(cv.word.size());
        if (dir > 0) {
            int idx = j + t + 1;
            if (cv.is_arc() && idx >= n) {
                return {s.side_of_boundary(s.segment_of_key(cv.end_key)), seg_offset(cv.end_key), true};
            }
            return {s.exit_side(cv.word[((idx % n) + n) % n]), 0, false};
        }
        int idx = j - t - 1;
        if (cv.is_arc() && idx < 0) {
            return {s.side_of_boundary(s.segment_of_key(cv.start_key)), seg_offset(cv.start_key), true};
        }
        return {s.entry_side(cv.word[((idx % n) + n) % n]), 0, false};
    };

    // Compare positions of A and B on side sigma0 (ccw order along the side).
    // dirA/dirB select the half that lies on the sigma0 side.
    // returns -1 if A precedes B, +1 if B precedes A, 0 if undecided.
    auto compare_half = [&](PointRef A, int dirA, PointRef B, int dirB, int sigma0) -> int {
        int limit = static_cast<int>(curves_[A.curve].word.size() + curves_[B.curve].word.size()) * 2 + 4;
        int sigma = sigma0;
        for (int t = 0; t < limit; ++t) {
            Leave la = leave_at(A.curve, A.letter, dirA, t);
            Leave lb = leave_at(B.curve, B.letter, dirB, t);
            if (la.side == lb.side && !la.foot && !lb.foot) {
                sigma = twin(la.side);
                continue;
            }
            auto key = [&](const Leave& l) {
                return std::pair<int, int>{((l.side - sigma) % N + N) % N, l.offset};
            };
            auto ka = key(la), kb = key(lb);
            if (ka == kb) return 0;
            // the chord leaving earlier in ccw order sits further along sigma
            return kb < ka ? -1 : 1;
        }
        return 0;
    };

    const int na = s.num_arcs();
    std::vector<std::vector<PointRef>> on_arc(na + 1);
    for (int c = 0; c < static_cast<int>(curves_.size()); ++c)
        for (int j = 0; j < static_cast<int>(curves_[c].word.size()); ++j)
            on_arc[std::abs(curves_[c].word[j])].push_back({c, j});

    // rank along each arc, increasing from start to end
    std::vector<std::vector<int>> rank_of(curves_.size());
    for (int c = 0; c < static_cast<int>(curves_.size()); ++c) rank_of[c].assign(curves_[c].word.size(), 0);
    std::vector<int> arc_count(na + 1, 0);
    for (int i = 1; i <= na; ++i) {
        auto& pts = on_arc[i];
        const int L = s.side_of_arc(i, true), R = s.side_of_arc(i, false);
        auto less = [&](const PointRef& A, const PointRef& B) {
            if (A.curve == B.curve && A.letter == B.letter) return false;
            int la = curves_[A.curve].word[A.letter] > 0 ? 1 : -1;
            int lb = curves_[B.curve].word[B.letter] > 0 ? 1 : -1;
            // -1 when A comes first along the arc, judged from either end
            const int on_left = compare_half(A, la, B, lb, L);
            const int on_right = -compare_half(A, -la, B, -lb, R);  // ccw on the right copy runs end to start
            int r = on_left != 0 ? on_left : on_right;
            if (on_left != 0 && on_right != 0 && on_left != on_right) {
                // the strands cross somewhere along their common stretch; put
                // the crossing at one end, chosen the same way at every point
                // of the stretch: the forward end of the lower curve
                const PointRef& ref = std::pair{A.curve, A.letter} < std::pair{B.curve, B.letter} ? A : B;
                const bool ref_forward_left = curves_[ref.curve].word[ref.letter] > 0;
                r = ref_forward_left ? on_left : on_right;
            }
            if (r != 0) return r < 0;
            return std::pair{A.curve, A.letter} < std::pair{B.curve, B.letter};
        };
        std::stable_sort(pts.begin(), pts.end(), less);
        arc_count[i] = static_cast<int>(pts.size());
        for (int r = 0; r < static_cast<int>(pts.size()); ++r) rank_of[pts[r].curve][pts[r].letter] = r;
    }

    auto pos_on = [&](int side, int c, int j) -> Pos {
        const auto& sd = s.sides()[side];
        int r = rank_of[c][j];
        if (sd.type == Side::Type::ArcLeft) return {side, r};
        return {side, arc_count[sd.index] - 1 - r};
    };
    auto foot_pos = [&](int key) -> Pos {
        return {s.side_of_boundary(s.segment_of_key(key)), seg_offset(key)};
    };

    side_len_.assign(N, kFootSpacing + 1);
    for (int side = 0; side < N; ++side)
        if (s.sides()[side].type != Side::Type::Boundary) side_len_[side] = arc_count[s.sides()[side].index] + 1;
    chords_.resize(curves_.size());
    for (int c = 0; c < static_cast<int>(curves_.size()); ++c) {
        const auto& cv = curves_[c];
        const int n = static_cast<int>(cv.word.size());
        auto& ch = chords_[c];
        if (cv.is_arc()) {
            for (int j = 0; j <= n; ++j) {
                Pos a = j == 0 ? foot_pos(cv.start_key) : pos_on(s.entry_side(cv.word[j - 1]), c, j - 1);
                Pos b = j == n ? foot_pos(cv.end_key) : pos_on(s.exit_side(cv.word[j]), c, j);
                ch.push_back({a, b});
            }
        } else {
            for (int j = 0; j < n; ++j) {
                int k = (j + 1) % n;
                ch.push_back({pos_on(s.entry_side(cv.word[j]), c, j), pos_on(s.exit_side(cv.word[k]), c, k)});
            }
        }
    }
}

// Chords drawn straight in a regular polygon; positions along the chord
// where y meets x, so that crossings among the others come out consistent.
double Arrangement::along(const Chord& x, const Chord& y) const {
    const int N = static_cast<int>(side_len_.size());
    auto point = [&](const Pos& p) {
        const double u = (p.rank + 1.0) / (side_len_[p.side] + 1.0);
        const double t0 = 2 * M_PI * p.side / N, t1 = 2 * M_PI * (p.side + 1) / N;
        return std::pair{(1 - u) * std::cos(t0) + u * std::cos(t1), (1 - u) * std::sin(t0) + u * std::sin(t1)};
    };
    auto [px, py] = point(x.a);
    auto [qx, qy] = point(x.b);
    auto [rx, ry] = point(y.a);
    auto [sx, sy] = point(y.b);
    const double dx = qx - px, dy = qy - py, ex = sx - rx, ey = sy - ry;
    const double den = dx * ey - dy * ex;
    return ((rx - px) * ey - (ry - py) * ex) / den;
}

bool Arrangement::cross(const Chord& x, const Chord& y) const {
    if (y.a == x.a || y.a == x.b || y.b == x.a || y.b == x.b) return false;
    auto inside = [&](const Pos& p) {
        if (x.a < x.b) return x.a < p && p < x.b;
        return p > x.a || p < x.b;
    };
    return inside(y.a) != inside(y.b);
}

std::vector<Crossing> Arrangement::crossings_along(int c, const std::vector<int>& others) const {
    std::vector<Crossing> out;
    for (int j = 0; j < num_chords(c); ++j) {
        const Chord& x = chords_[c][j];
        struct Hit {
            double key;
            Crossing cr;
        };
        std::vector<Hit> hits;
        auto inside = [&](const Pos& p) {
            if (x.a < x.b) return x.a < p && p < x.b;
            return p > x.a || p < x.b;
        };
        for (int o : others) {
            for (int k = 0; k < num_chords(o); ++k) {
                if (o == c && k == j) continue;
                const Chord& y = chords_[o][k];
                if (!cross(x, y)) continue;
                bool a_right = inside(y.a);
                hits.push_back({along(x, y), Crossing{o, j, k, a_right ? 1 : -1}});
            }
        }
        std::sort(hits.begin(), hits.end(), [](const Hit& u, const Hit& v) { return u.key < v.key; });
        for (auto& h : hits) out.push_back(h.cr);
    }
    return out;
}

int Arrangement::count_crossings(int a, int b) const {
    return static_cast<int>(crossings_along(a, {b}).size());
}

int Arrangement::algebraic_crossings(int a, int b) const {
    int sum = 0;
    for (auto& c : crossings_along(a, {b})) sum += c.sign;
    return sum;
}

// ---------------------------------------------------------- operations

int geometric_intersection(const Surface& s, const CurvePath& a, const CurvePath& b) {
    auto na = normalize(a), nb = normalize(b);
    if (!na.is_arc() && !nb.is_arc() && isotopic(na, nb)) return 0;
    Arrangement arr(s, {na, nb});
    return arr.count_crossings(0, 1);
}

int algebraic_intersection(const Surface& s, const CurvePath& a, const CurvePath& b) {
    Arrangement arr(s, {normalize(a), normalize(b)});
    return arr.algebraic_crossings(0, 1);
}

bool is_simple(const Surface& s, const CurvePath& c) {
    Arrangement arr(s, {normalize(c)});
    return arr.count_crossings(0, 0) == 0;
}

namespace {

// letters passed moving along a curve from chord p to chord q; {0} when
// both points lie on one chord
Word path_letters(const CurvePath& c, int p, int q, int dir) {
    const auto& w = c.word;
    const int n = static_cast<int>(w.size());
    if (p == q) return {0};
    Word out;
    if (c.is_arc()) {
        // chord j sits between letters j-1 and j
        if ((q > p) != (dir > 0)) return {0};
        if (dir > 0) for (int t = p; t < q; ++t) out.push_back(w[t]);
        else for (int t = p - 1; t >= q; --t) out.push_back(-w[t]);
        return out;
    }
    // closed: chord j sits between letters j and j+1
    auto md = [n](int x) { return ((x % n) + n) % n; };
    if (dir > 0) {
        for (int t = 0; t < md(q - p); ++t) out.push_back(w[md(p + 1 + t)]);
    } else {
        for (int t = 0; t < md(p - q); ++t) out.push_back(-w[md(p - t)]);
    }
    return out;
}

}  // namespace

bool has_bigon(const Surface& s, const CurvePath& a, const CurvePath& b) {
    auto na = normalize(a), nb = normalize(b);
    Arrangement arr(s, {na, nb});
    auto hits = arr.crossings_along(0, {1});
    for (std::size_t x = 0; x < hits.size(); ++x)
        for (std::size_t y = 0; y < hits.size(); ++y) {
            if (x == y) continue;
            for (int da : {1, -1}) {
                if (na.is_arc() && da < 0) continue;
                Word pa = path_letters(na, hits[x].chord, hits[y].chord, da);
                if (pa == Word{0}) continue;
                for (int db : {1, -1}) {
                    Word pb = path_letters(nb, hits[x].other_chord, hits[y].other_chord, db);
                    if (pb == Word{0}) continue;
                    if (pa == pb) return true;
                }
            }
        }
    return false;
}

std::vector<CurvePath> minimal_position(const Surface& s, const std::vector<CurvePath>& system) {
    std::vector<CurvePath> out;
    out.reserve(system.size());
    for (auto& c : system) {
        s.validate(c);
        out.push_back(normalize(c));
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (!isotopic(out[i], out[j]) && has_bigon(s, out[i], out[j]))
                throw SurfaceError("reduced curves still bound a bigon");
    return out;
}

CurvePath twist(const Surface& s, const CurvePath& core, int power, const CurvePath& c) {
    if (core.is_arc()) throw SurfaceError("twist core must be a closed curve");
    CurvePath k = normalize(core);
    CurvePath cur = normalize(c);
    const int n = static_cast<int>(k.word.size());
    const int steps = std::abs(power);
    const int eps = power > 0 ? 1 : -1;
    for (int step = 0; step < steps; ++step) {
        Arrangement arr(s, {cur, k});
        auto hits = arr.crossings_along(0, {1});
        const int m = static_cast<int>(cur.word.size());
        std::vector<Word> ins(arr.num_chords(0));
        for (auto& h : hits) {
            // right-handed: turn right onto the core
            int dir = (h.sign > 0 ? -1 : 1) * eps;
            Word& out = ins[h.chord];
            if (dir > 0) {
                for (int t = 1; t <= n; ++t) out.push_back(k.word[(h.other_chord + t) % n]);
            } else {
                for (int t = 0; t < n; ++t) out.push_back(-k.word[((h.other_chord - t) % n + n) % n]);
            }
        }
        Word nw;
        if (cur.is_arc()) {
            for (int j = 0; j <= m; ++j) {
                nw.insert(nw.end(), ins[j].begin(), ins[j].end());
                if (j < m) nw.push_back(cur.word[j]);
            }
        } else {
            for (int j = 0; j < m; ++j) {
                nw.push_back(cur.word[j]);
                nw.insert(nw.end(), ins[j].begin(), ins[j].end());
            }
        }
        cur.word = nw;
        cur = normalize(cur);
    }
    return cur;
}

CurvePath boundary_twist(const Surface& s, int power, const CurvePath& c) {
    if (!c.is_arc() || power == 0) return normalize(c);
    CurvePath out = normalize(c);
    for (int t = 0; t < std::abs(power); ++t) {
        int d = power > 0 ? 1 : -1;
        Word w = s.boundary_loop(out.start_key, d);
        w.insert(w.end(), out.word.begin(), out.word.end());
        Word tail = inverse(s.boundary_loop(out.end_key, d));
        w.insert(w.end(), tail.begin(), tail.end());
        out.word = free_reduce(w);
    }
    return out;
}

}  // namespace pf
