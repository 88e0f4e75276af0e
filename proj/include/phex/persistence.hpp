#pragma once

#include <iosfwd>

#include "phex/complex.hpp"
#include "phex/gf.hpp"

namespace phex {

// One bar [birth, death) with death == kInf for classes that never die.
// A bar is alive at index t iff birth <= t < death.
struct Bar {
    static constexpr int kInf = -1;
    int birth = 0;
    int death = kInf;
    bool infinite() const { return death == kInf; }
    auto operator<=>(const Bar&) const = default;
};

// Multiset of bars in one degree, kept sorted (finite bars by (birth, death),
// then infinite bars by birth).
struct Barcode {
    int degree = 0;
    std::vector<Bar> bars;

    int alive_at(int t) const;  // multiplicity of bars with birth <= t < death
    // Sorted (bar, multiplicity) aggregation for output.
    std::vector<std::pair<Bar, int>> aggregate() const;
};

// Count of bars with birth <= i and death > j (infinite counts as > j);
// equals the persistent Betti number by the interval decomposition.
int betti_from_barcode(const Barcode& bc, int i, int j);

enum class ReduceStrategy { Standard, Twist };

// Column-reduced boundary matrix over the whole filtration. Simplices are
// ordered by (level, dimension, lex); in relative mode the A-simplices are
// omitted, realizing the quotient filtration. Deterministic.
class ReducedMatrix {
public:
    struct Column {
        explicit Column(Simplex s) : simplex(std::move(s)) {}
        Simplex simplex;
        int level = 0;
        int dim = 0;
        // Reduced column entries (row index, coefficient), ascending rows.
        std::vector<std::pair<int, std::uint32_t>> entries;
        int paired_with = -1;  // column index this one killed, or -1
        bool is_cycle() const { return entries.empty(); }
    };

    std::uint32_t p() const { return p_; }
    int size() const { return static_cast<int>(cols_.size()); }
    const Column& col(int c) const { return cols_.at(c); }
    int low(int c) const { return cols_[c].entries.empty() ? -1 : cols_[c].entries.back().first; }

    friend ReducedMatrix reduce(const FilteredComplex&, const SubcomplexSpec*, std::uint32_t,
                                ReduceStrategy);

private:
    std::uint32_t p_ = 2;
    std::vector<Column> cols_;
};

// Standard is the plain left-to-right reduction; Twist adds the clearing
// optimization (dimensions processed top down, columns whose simplex already
// appears as a pivot are zeroed without reduction). Both produce the same
// pairing.
ReducedMatrix reduce(const FilteredComplex& X, const SubcomplexSpec* relative_to,
                     std::uint32_t p, ReduceStrategy strategy = ReduceStrategy::Standard);

// Bars of one degree: paired simplices with distinct levels give finite
// bars, equal-level pairs emit nothing, unpaired simplices give infinite
// bars.
Barcode barcode(const ReducedMatrix& R, int k);

// Text format: header "degree <k>", one bar per line
// "<birth> <death|inf> <multiplicity>".
void write_barcode(std::ostream& out, const Barcode& bc);

}  // namespace phex
