#pragma once
#include <boost/rational.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pf/surface.hpp"

namespace pf {

using Rational = boost::rational<long long>;
using IntMatrix = std::vector<std::vector<long long>>;

struct Letter {
    std::string curve;
    int power = 1;  // +1 right-handed twist, -1 left-handed
    bool operator==(const Letter&) const = default;
};

// phi = T_bdry^k o tau_{l_1} o ... o tau_{l_n}; the rightmost letter acts first.
struct MonodromyWord {
    int genus = 1;
    std::vector<Letter> letters;
    int boundary_twists = 0;

    MonodromyWord power(int n) const;       // n >= 0
    MonodromyWord inverse() const;
    MonodromyWord then(const MonodromyWord& o) const;  // this o o
    std::string to_string() const;           // "a1+ b1-" plus "T^k" suffix
    bool operator==(const MonodromyWord&) const = default;
};

struct WordError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Tokens like "a+", "b-", "a1+", "c1-". At genus 1 "a"/"b" alias a1/b1.
MonodromyWord parse_word(int genus, const std::string& text);
std::string canonical_curve_name(int genus, const std::string& name);

CurvePath apply_word(const Surface& s, const MonodromyWord& w, const CurvePath& c);

// Class of a closed curve in H_1, in coordinates dual to the reference arcs.
std::vector<long long> homology_class(const CurvePath& c, int genus);
// Algebraic intersection form on those coordinates.
IntMatrix intersection_form(const Surface& s);
IntMatrix homology_action(const Surface& s, const MonodromyWord& w);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix mat_identity(int n);
long long mat_det(const IntMatrix& m);  // small sizes, exact (Bareiss)
long long mat_trace(const IntMatrix& m);

enum class NTType { Periodic, Reducible, PseudoAnosov };

struct NTClassification {
    NTType type = NTType::Periodic;
    int order = 0;                  // periodic only
    double dilatation = 1.0;        // pseudo-Anosov only
    bool rotated = false;           // pseudo-Anosov only
    int prongs = 0;                 // pseudo-Anosov only
    long long trace = 0;            // genus 1 homology trace
    // theta_c as a fraction of a full turn, in [0,1); t_c with
    // t_c = theta_c + k_phi. Both absent for reducible classes.
    std::optional<Rational> theta_c;
    std::optional<Rational> t_c;
    std::optional<long long> k_phi;
    bool identity_class = false;    // phi_c = id on the whole page
};

struct Unsupported : std::runtime_error {
    int genus;
    explicit Unsupported(int g, const std::string& reason) : std::runtime_error(reason), genus(g) {}
};

NTClassification classify(const MonodromyWord& w);

// Translation number of the lift of the genus-1 homology action to the
// universal cover of the circle of directions, in full turns. Equals the
// fractional Dehn twist coefficient of the word (boundary twists excluded).
Rational genus1_twist_coefficient(const MonodromyWord& w);

std::string nt_type_name(NTType t);

}  // namespace pf
