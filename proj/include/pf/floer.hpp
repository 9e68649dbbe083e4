#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "pf/diagram.hpp"
#include "pf/homalg.hpp"

namespace pf {

struct NicenStats {
    int moves = 0;
    int bad_before = 0;
    int bad_after = 0;
};

// Finger moves of beta until every face away from the boundary and z is a
// bigon or a square. Throws DiagramError if the move budget runs out.
PageDiagram nicen(const PageDiagram& d, NicenStats* stats = nullptr, int budget = 400);

struct GradedComplexF2 {
    std::vector<Generator> generators;  // quotient representatives
    SparseF2 differential;              // rows: targets, cols: sources
    int grading = 0;
    std::uint64_t diagram_hash = 0;
    int bigons = 0, rectangles = 0;
    int grading_shifting = 0;  // empty polygons that change the grading, dropped
    std::size_t rank() const;  // homology rank
    std::string to_json() const;
};

// Bigon/rectangle differential on the quotient complex at one grading.
// With audit set, also recomputes from every representative of each class
// and throws if the quotient differential is not well defined.
GradedComplexF2 differential(const PageDiagram& nice, int grading, bool audit = false);

std::uint64_t diagram_hash(const PageDiagram& d);

struct HfkResult {
    int rank = 0;
    int generators = 0;
    int vertices = 0;
    int faces = 0;
    NicenStats nicen;
    std::string word;  // the word whose diagram was used
};

HfkResult hfk(int genus, const MonodromyWord& w, int grading);
int hfk_rank(int genus, const MonodromyWord& w, int grading);

// Lagrangian Floer rank of two essential closed curves.
int lagrangian_hf_rank(const Surface& s, const CurvePath& l1, const CurvePath& l2);

}  // namespace pf
