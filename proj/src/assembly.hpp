#pragma once
#include <vector>

#include "pf/diagram.hpp"

namespace pf::detail {

// Where a diagram vertex came from, comparable across diagrams built on the
// same surface and word. Inner crossings name the alpha-side source curve
// by a caller tag; collar crossings and boundary points go by their keys.
struct VertexLabel {
    int kind = 0;  // 0 inner, 1 collar, 2 boundary
    int tag = -1, chord = -1, beta = -1, beta_chord = -1;
    int bkey = 0, akey = 0;
    auto operator<=>(const VertexLabel&) const = default;
};

// Replaces alpha[0] by the arc that follows alpha[0] to its crossing with
// loop, goes once around loop (turning left for power -1, right for +1),
// then follows the rest of alpha[0].
struct Shadow {
    CurvePath loop;
    int power = -1;
    int tag = -1;
};

PageDiagram assemble_core(const Surface& s, const std::vector<CurvePath>& alpha, const std::vector<int>& alpha_tags,
                          const std::vector<CurvePath>& beta_source, const MonodromyWord& w, const Shadow* shadow,
                          std::vector<VertexLabel>* labels);

}  // namespace pf::detail

namespace pf::detail {

// Standard arcs reordered so that the first one is the only arc meeting the
// closed curve named by lagrangian, once.
std::vector<CurvePath> compatible_basis(const Surface& s, const std::string& lagrangian);

}  // namespace pf::detail
