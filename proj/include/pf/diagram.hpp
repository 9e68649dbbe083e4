#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pf/mapping_class.hpp"
#include "pf/surface.hpp"

namespace pf {

enum class PointRole { C, CPrime, D, Interior, BoundaryOnly };
std::string role_name(PointRole r);

struct DVertex {
    int alpha = -1;  // alpha curve through the vertex, or -1
    int beta = -1;   // beta curve through the vertex, or -1
    int sign = 0;    // orientation of (alpha tangent, beta tangent) at crossings
    bool boundary = false;
    int key = 0;     // boundary key for boundary vertices
    bool collar = false;  // counts as inside the collar for the grading
    PointRole role = PointRole::Interior;
    // finger-move points record the alpha edge they were created on
    int origin = -1;
};

struct Strand {
    std::vector<int> verts;
    std::vector<char> collar_edge;  // edge verts[i] -> verts[i+1] (closed: wraps)
    bool closed = false;
    int num_edges() const { return closed ? static_cast<int>(verts.size()) : static_cast<int>(verts.size()) - 1; }
};

struct DiagramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Page diagram (S, alpha, beta) as an embedded graph with boundary.
class PageDiagram {
public:
    int genus = 1;
    std::vector<DVertex> verts;
    std::vector<Strand> alpha, beta;
    std::vector<int> boundary;  // boundary vertices in increasing key order
    int z_beta = -1, z_vertex = -1;  // z lies left of the beta edge leaving z_vertex

    // ---- derived topology, valid after rebuild() ----
    struct Edge {
        char type;   // 'a', 'b', 'd' (boundary)
        int curve;
        int index;
        bool collar;
    };
    std::vector<Edge> edges;
    std::vector<int> org;                 // half-edge origin
    std::vector<std::vector<int>> rot;    // ccw half-edges per vertex
    std::vector<int> rot_pos;
    std::vector<int> face_of;             // face on the left of a half-edge
    std::vector<std::vector<int>> faces;  // half-edge cycles
    std::vector<char> face_boundary;      // touches the boundary (or is the outer face)
    int z_face = -1, w_face = -1, outer_face = -1;
    std::vector<int> alpha_pos, beta_pos;  // index of a vertex in its strands
    std::vector<int> alpha_edge0, beta_edge0;
    int boundary_edge0 = 0;

    void rebuild();
    int dest(int h) const { return org[h ^ 1]; }
    int cw_next(int h) const;   // previous half-edge in ccw order at the origin
    int ccw_next(int h) const;
    bool excluded(int f) const { return face_boundary[f] || f == z_face; }
    int corners(int f) const { return static_cast<int>(faces[f].size()); }
    int euler_characteristic() const;  // V - E + F with the outer face capped
    int alpha_edge(int curve, int index) const { return alpha_edge0[curve] + index; }
    int beta_edge(int curve, int index) const { return beta_edge0[curve] + index; }
    std::vector<int> bad_faces() const;
    std::string to_json() const;
};

enum class BasisKind { Standard, Compatible, Perturbed };

struct DiagramRequest {
    MonodromyWord word;
    BasisKind basis = BasisKind::Standard;
    std::string lagrangian = "a1";  // for compatible / perturbed bases
};

// Inner-surface data used to assemble a diagram: alpha curves (arcs with
// feet at their boundary points, or closed), and the source arcs whose
// images under the monodromy give beta.
PageDiagram build_page_diagram(const DiagramRequest& req);
PageDiagram assemble_diagram(const Surface& s, const std::vector<CurvePath>& alpha,
                             const std::vector<CurvePath>& beta_source, const MonodromyWord& w);

struct Generator {
    std::vector<int> points;  // indexed by alpha curve
    int alexander = 0;
    auto operator<=>(const Generator&) const = default;
};

std::vector<Generator> enumerate_generators(const PageDiagram& d, int grading);
std::vector<Generator> enumerate_generators_bruteforce(const PageDiagram& d, int grading);
int alexander_grading(const PageDiagram& d, const std::vector<int>& points);
Generator quotient_canonicalize(const PageDiagram& d, const Generator& x);

// Bases for the exact triangle: alpha sets a (standard, reordered so the
// first arc meets L), a' = tau_L^{-1}(a), and a~ (first arc replaced by L),
// all paired with beta = phi(a').
struct TriangleDiagrams {
    PageDiagram tilde, prime, plain;
    // per vertex of prime on its first alpha curve: 1 if it shadows L,
    // 0 if it shadows a_1; -1 elsewhere
    std::vector<int> prime_tag;
    // closest-point correspondences
    std::vector<int> prime_to_tilde;  // vertex map, -1 if none
    std::vector<int> prime_to_plain;
    std::vector<int> tilde_to_prime;
};

TriangleDiagrams build_triangle_diagrams(const MonodromyWord& w, const std::string& lagrangian);
std::optional<Generator> map_i0(const TriangleDiagrams& t, const Generator& x);
std::optional<Generator> map_l0(const TriangleDiagrams& t, const Generator& x);

}  // namespace pf
