#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "phex/simplex.hpp"

namespace phex {

// Thrown on malformed input files; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Thrown when a constructor argument violates a structural invariant
// (face closure, level monotonicity, membership).
class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite simplicial complex with a monotone integer level per simplex.
// Stage i is the subcomplex of simplices with level <= i; stages 0..n form
// the filtration tower. Immutable after construction.
class FilteredComplex {
public:
    FilteredComplex() = default;

    // Validates face closure and level(face) <= level(simplex). n defaults to
    // the maximum level present (0 for the empty complex) but may be given
    // explicitly to embed the complex in a longer tower.
    static FilteredComplex from_pairs(const std::vector<std::pair<Simplex, int>>& pairs,
                                      std::optional<int> n = std::nullopt);

    int max_level() const { return n_; }
    std::size_t size() const { return levels_.size(); }
    bool empty() const { return levels_.empty(); }

    bool contains(const Simplex& s) const { return levels_.count(s) != 0; }
    int level(const Simplex& s) const;

    // Simplices in lexicographic vertex order.
    const std::map<Simplex, int>& levels() const { return levels_; }

    // The simplex set of stage X_i, in lexicographic order.
    std::vector<Simplex> stage(int i) const;

    // Simplices of a fixed dimension with level <= i, in lexicographic order
    // (the chain basis of C_k(X_i)).
    std::vector<Simplex> stage_basis(int i, int k) const;

    int dimension() const;  // max simplex dimension, -1 if empty

private:
    std::map<Simplex, int> levels_;
    int n_ = 0;
};

// A closed (face-closed) subcomplex of a FilteredComplex. Carries the
// induced filtration: the level of a member is its level in the parent.
class SubcomplexSpec {
public:
    SubcomplexSpec(const FilteredComplex& parent, std::set<Simplex> members);

    const FilteredComplex& parent() const { return *parent_; }
    const std::set<Simplex>& members() const { return members_; }
    bool contains(const Simplex& s) const { return members_.count(s) != 0; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    int level(const Simplex& s) const { return parent_->level(s); }

private:
    const FilteredComplex* parent_;
    std::set<Simplex> members_;
};

// Verdict of the closed-cover test X = A u B, per level and overall.
struct CoverReport {
    bool is_cover = false;
    std::vector<bool> per_level_cover;    // index i: does X_i = A_i u B_i
    std::vector<Simplex> offending;       // simplices of X in neither A nor B
};

// --- parsing ----------------------------------------------------------------

// Filtered-complex file: one simplex per line, "<level> <v0> <v1> ...",
// '#' starts a comment, blank lines ignored.
FilteredComplex parse_complex(std::istream& in);
FilteredComplex parse_complex_text(const std::string& text);

// Subcomplex file: header "parent: <path>", then one simplex per line
// without the level column. Members are validated against `parent`;
// the header path is returned for the caller to interpret.
SubcomplexSpec parse_subcomplex(std::istream& in, const FilteredComplex& parent,
                                std::string* parent_path = nullptr);
SubcomplexSpec parse_subcomplex_text(const std::string& text, const FilteredComplex& parent,
                                     std::string* parent_path = nullptr);

std::string to_text(const FilteredComplex& X);
std::string to_text(const SubcomplexSpec& A, const std::string& parent_path);

// --- constructions ----------------------------------------------------------

// Lower-star filtration from vertex values: level(s) is the rank of
// max_{v in s} f(v) among the sorted distinct values of f. The input simplex
// set must be face-closed; every vertex needs a value.
FilteredComplex sublevel_filtration(const std::vector<Simplex>& complex_simplices,
                                    const std::map<int, double>& f);

// A as a standalone FilteredComplex with parent levels and the parent's n,
// so stage i equals A intersect X_i for every i.
FilteredComplex induced_filtration(const SubcomplexSpec& A);

// Member-set intersection; face-closed automatically. A and B must share a
// parent.
SubcomplexSpec intersect(const SubcomplexSpec& A, const SubcomplexSpec& B);

// Simplicial closed-cover test: every simplex of X lies in A or in B, and
// per level i the same for X_i.
CoverReport check_cover(const FilteredComplex& X, const SubcomplexSpec& A,
                        const SubcomplexSpec& B);

}  // namespace phex
