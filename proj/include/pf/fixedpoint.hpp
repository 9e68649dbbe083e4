#pragma once
#include <string>
#include <vector>

#include "pf/mapping_class.hpp"

namespace pf {

enum class BoundaryCase { C1a, C1b, C2, C3a, C3b, IdentitySpecial };
std::string boundary_case_name(BoundaryCase c);

std::string classification_to_json(const NTClassification& c);

struct NielsenClass {
    std::string id;  // "fix(p/n,q/n)" torus coordinates, or "identity"
    int index = 0;
};

struct NielsenReport {
    NTClassification classification;
    bool fallback = false;  // reducible, handled by the rational homology sphere branch
    std::vector<NielsenClass> classes;  // interior classes
    int boundary_index = 0;             // index of the puncture class
    long long interior_min = 0;         // fixed points forced in the interior
    long long boundary_extra = 0;       // prong points and twist circles
    long long f_min = 0;
    BoundaryCase boundary_case = BoundaryCase::C3a;
    long long hf_rank = 0;
    long long hf_sharp_rank = 0;
    long long predicted_hfk = 0;
    std::string to_json() const;
};

// Genus 1 periodic and pseudo-Anosov classes, genus-1 reducible classes whose
// closed monodromy has det(M - I) != 0, and the identity at any genus.
// Throws Unsupported otherwise.
NielsenReport nielsen_report(const MonodromyWord& w);

std::vector<NielsenClass> nielsen_classes(const MonodromyWord& w);
long long f_min(const MonodromyWord& w);
long long hf_sharp_rank(const MonodromyWord& w);
long long predicted_hfk(const MonodromyWord& w);

// predicted_hfk(w^n)^(1/n) at n = N for pseudo-Anosov classes; periodic
// classes grow polynomially and give exactly 1.
double growth_rate(const MonodromyWord& w, int N);

struct NoneFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Least n with predicted_hfk(w^n) != 1; NoneFound past n_max.
int multiplicity(const MonodromyWord& w, int n_max);

}  // namespace pf
