#pragma once

#include "phex/persistence.hpp"
#include "phex/sequences.hpp"

namespace phex {

// Verification record for persistent excision on a triple (X, A, B): per
// degree, invertibility of every component of the module morphism
// H_k(B_i, (AnB)_i) -> H_k(X_i, A_i) with commuting squares, and the (i,j)
// table of persistent Betti numbers on both sides.
struct ExcisionReport {
    struct GroupCell {
        int i = 0, j = 0;
        int beta_xa = 0;   // beta_k^{i,j}(X, A)
        int beta_bab = 0;  // beta_k^{i,j}(B, AnB)
        bool equal = false;
    };
    struct DegreeResult {
        int k = 0;
        bool module_iso = false;
        std::vector<int> component_ranks;  // rank of each level component
        std::vector<int> dims_xa, dims_bab;
        std::vector<GroupCell> group_table;  // all i <= j
        bool group_all_equal() const;
    };

    std::vector<DegreeResult> per_degree;  // k = 0..kmax
    CoverReport cover;
    std::size_t size_x = 0, size_a = 0, size_b = 0, size_ab = 0;

    bool all_hold() const;
};

// H_k(B_i, (AnB)_i) -> H_k(X_i, A_i) invertible? Requires the cover to hold
// at level i (HypothesisError otherwise).
bool verify_excision_step(const FilteredComplex& X, const SubcomplexSpec& A,
                          const SubcomplexSpec& B, int i, int k, std::uint32_t p);

// Full verification for degrees 0..kmax: module morphism with commuting
// squares and invertible components, plus the beta table through
// restricted_map. Requires a full cover.
ExcisionReport verify_persistent_excision(const FilteredComplex& X, const SubcomplexSpec& A,
                                          const SubcomplexSpec& B, int kmax, std::uint32_t p,
                                          Exec exec = Exec::Parallel);

// The excision reduction: relative persistence of (X, A) computed on the
// smaller pair (B, AnB). Also reports the workload sizes.
struct ExciseComputation {
    Barcode bc;
    std::size_t simplices_direct = 0;   // |X|
    std::size_t simplices_excised = 0;  // |B|
};
ExciseComputation excise_compute(const FilteredComplex& X, const SubcomplexSpec& A,
                                 const SubcomplexSpec& B, int k, std::uint32_t p);

}  // namespace phex
