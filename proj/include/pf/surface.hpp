#pragma once
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace pf {

// A signed letter +i / -i records crossing reference arc i (1-based) from
// its right side to its left side (+) or the reverse (-).
using Word = std::vector<int>;

Word inverse(const Word& w);
Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);
// lexicographically least rotation of a cyclically reduced word
Word canonical_rotation(const Word& w);

// Boundary positions are integer keys. Reference foot k (1..4g) sits at key
// 1000*k; key range is [1000, 1000*(4g+1)). The segment after the last
// foot wraps around to the first.
constexpr int kFootSpacing = 1000;

struct CurvePath {
    enum class Kind { Arc, Closed };
    Kind kind = Kind::Closed;
    Word word;           // cutting sequence through the reference arcs
    int start_key = 0;   // arcs only
    int end_key = 0;     // arcs only

    bool is_arc() const { return kind == Kind::Arc; }
    // crossing counts with each reference arc (the normal coordinates)
    std::vector<std::int64_t> coordinates(int genus) const;
    bool operator==(const CurvePath& o) const;
};

struct SurfaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Side of the cut-open polygon.
struct Side {
    enum class Type { Boundary, ArcLeft, ArcRight };
    Type type;
    int index;  // boundary segment k (1..4g) or arc i (1..2g)
};

class Surface {
public:
    explicit Surface(int genus);

    int genus() const { return g_; }
    int num_arcs() const { return 2 * g_; }
    int num_feet() const { return 4 * g_; }
    int key_period() const { return kFootSpacing * num_feet(); }

    int arc_start(int i) const { return start_[i]; }  // foot index
    int arc_end(int i) const { return end_[i]; }
    int foot_arc(int k) const { return foot_arc_[k]; }
    bool foot_is_start(int k) const { return start_[foot_arc_[k]] == k; }
    int foot_key(int k) const { return kFootSpacing * k; }
    int segment_of_key(int key) const;

    const std::vector<Side>& sides() const { return sides_; }
    int side_of_boundary(int segment) const { return bside_[segment]; }
    int side_of_arc(int arc, bool left) const { return left ? lside_[arc] : rside_[arc]; }
    // side a crossing leaves through / enters through for a signed letter
    int exit_side(int letter) const { return letter > 0 ? rside_[letter] : lside_[-letter]; }
    int entry_side(int letter) const { return letter > 0 ? lside_[letter] : rside_[-letter]; }

    // Letter recorded when a path running just inside the boundary passes
    // reference foot k in the direction of increasing (dir=+1) or
    // decreasing (dir=-1) boundary key.
    int boundary_pass_letter(int foot, int dir) const;
    // feet passed moving from key a to key b in direction dir, without wrap
    // beyond a full turn; letters in order of passage
    Word boundary_path(int from_key, int to_key, int dir) const;
    // full loop from key, direction dir
    Word boundary_loop(int from_key, int dir) const;

    // The reference arc i pushed slightly to its right side.
    CurvePath standard_arc(int i) const;
    const std::map<std::string, CurvePath>& named_curves() const { return named_; }
    const CurvePath& curve(const std::string& name) const;
    bool has_curve(const std::string& name) const { return named_.count(name) != 0; }

    void validate(const CurvePath& c) const;

private:
    int g_;
    std::vector<int> start_, end_, foot_arc_;
    std::vector<Side> sides_;
    std::vector<int> bside_, lside_, rside_;
    std::map<std::string, CurvePath> named_;
};

// ---- arrangement of curves in the cut-open polygon ----

struct Crossing {
    int other;         // index of the other curve in the arrangement
    int chord;         // chord of this curve
    int other_chord;   // chord of the other curve
    int sign;          // +1 if the other curve crosses this one from right to left
};

class Arrangement {
public:
    Arrangement(const Surface& s, std::vector<CurvePath> curves);

    const std::vector<CurvePath>& curves() const { return curves_; }
    int num_chords(int c) const { return static_cast<int>(chords_[c].size()); }
    // crossings of curve c with the curves in `others`, ordered along c
    std::vector<Crossing> crossings_along(int c, const std::vector<int>& others) const;
    int count_crossings(int a, int b) const;
    int algebraic_crossings(int a, int b) const;

private:
    struct Pos {
        int side;
        int rank;
        auto operator<=>(const Pos&) const = default;
    };
    struct Chord {
        Pos a, b;
    };
    bool cross(const Chord& x, const Chord& y) const;
    double along(const Chord& x, const Chord& y) const;

    const Surface* s_;
    std::vector<CurvePath> curves_;
    std::vector<std::vector<Chord>> chords_;
    std::vector<int> side_len_;
};

int geometric_intersection(const Surface& s, const CurvePath& a, const CurvePath& b);
int algebraic_intersection(const Surface& s, const CurvePath& a, const CurvePath& b);
bool isotopic(const CurvePath& a, const CurvePath& b);
// Returns true if some pair of crossings of a and b bounds a bigon.
bool has_bigon(const Surface& s, const CurvePath& a, const CurvePath& b);
std::vector<CurvePath> minimal_position(const Surface& s, const std::vector<CurvePath>& system);
CurvePath normalize(const CurvePath& c);

// Dehn twist along a simple closed curve; power = +1 right-handed, -1 left.
CurvePath twist(const Surface& s, const CurvePath& core, int power, const CurvePath& c);
// Full boundary-parallel twists; closed curves are unchanged.
CurvePath boundary_twist(const Surface& s, int power, const CurvePath& c);

bool is_simple(const Surface& s, const CurvePath& c);

}  // namespace pf
