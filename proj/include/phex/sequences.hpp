#pragma once

#include "phex/homology.hpp"

namespace phex {

// Thrown when an operation's cover hypothesis fails; carries the witnesses.
class HypothesisError : public std::runtime_error {
public:
    HypothesisError(const std::string& what, std::vector<Simplex> offending = {})
        : std::runtime_error(what), offending_(std::move(offending)) {}
    const std::vector<Simplex>& offending() const { return offending_; }

private:
    std::vector<Simplex> offending_;
};

enum class TieBreak { AFirst, BFirst };
enum class SeqVerdict { Exact, ChainComplexOnly, NotChainComplex };

// One row of a (Mayer-Vietoris or pair) sequence at a fixed level or at a
// fixed (i,j): spaces listed from the degree-window top down to degree 0,
// with a trailing zero space so the tail position is classifiable.
struct SequenceSlice {
    std::vector<std::string> names;  // names.back() == "0"
    std::vector<int> degrees;        // homology degree of each space (-1 for the trailing 0)
    std::vector<int> dims;
    std::vector<FieldMatrix> maps;  // maps[t]: dims[t] -> dims[t+1]
};

struct SeqPosition {
    std::string name;
    int degree = 0;
    int dim = 0;
    int rank_in = 0;
    int rank_out = 0;
    bool composite_zero = false;
    bool im_subset_ker = false;
    bool boundary = false;  // window boundary: not classified for exactness
    bool exact = false;     // meaningful only when !boundary
};

struct SequenceReport {
    std::vector<SeqPosition> positions;
    SeqVerdict verdict = SeqVerdict::Exact;
};

// Position-by-position classification. The first position of a slice is the
// window boundary (its incoming map lies outside the window). Exactness is
// decided by the rank-nullity criterion: composite zero and
// rank_in + rank_out == dim.
SequenceReport classify_slice(const SequenceSlice& slice);

std::string to_text(const SequenceReport& report);
const char* verdict_name(SeqVerdict v);

// The chain-splitting tag used by the Mayer-Vietoris connecting map: entry t
// tells whether basis simplex t of C_k(X_i) is taken on the A side.
struct ConnectingData {
    std::vector<bool> a_side;
};
ConnectingData mv_splitting(const std::vector<Simplex>& chain_basis, const SubcomplexSpec& A,
                            const SubcomplexSpec& B, TieBreak tie);

// Shared-tower analyzer for the Mayer-Vietoris sequence of a cover triple.
// Building towers once serves stage rows, persistent rows, and the module
// row for every level pair.
class MvAnalyzer {
public:
    MvAnalyzer(const FilteredComplex& X, const SubcomplexSpec& A, const SubcomplexSpec& B,
               int kmax, std::uint32_t p, Exec exec = Exec::Parallel);

    int levels() const { return tx_.levels(); }
    const CoverReport& cover() const { return cover_; }

    // Classical MV row at level i; throws HypothesisError when the cover
    // fails at i, std::logic_error if the row fails exactness.
    SequenceSlice stage_row(int i, TieBreak tie = TieBreak::AFirst) const;

    // Row of persistent homology groups for i <= j, horizontal maps
    // restricted to the images of the vertical induced maps.
    SequenceReport persistent_row(int i, int j) const;

    // Direct-sum (module-level) sequence over all levels.
    SequenceReport module_row() const;

    const TowerCache& tower_x() const { return tx_; }
    const TowerCache& tower_a() const { return ta_; }
    const TowerCache& tower_b() const { return tb_; }
    const TowerCache& tower_ab() const { return ti_; }

private:
    FieldMatrix connecting(int i, int k, TieBreak tie) const;  // H_{k+1}(X_i) -> H_k((AnB)_i)
    SubcomplexSpec a_, b_;
    CoverReport cover_;
    int kmax_;
    std::uint32_t p_;
    TowerCache tx_, ta_, tb_, ti_;
};

// Shared-tower analyzer for the sequence of the pair (X, A).
class PairAnalyzer {
public:
    PairAnalyzer(const FilteredComplex& X, const SubcomplexSpec& A, int kmax, std::uint32_t p,
                 Exec exec = Exec::Parallel);

    int levels() const { return tx_.levels(); }

    SequenceSlice stage_row(int i) const;  // throws std::logic_error if not exact
    SequenceReport persistent_row(int i, int j) const;
    SequenceReport module_row() const;

    const TowerCache& tower_x() const { return tx_; }
    const TowerCache& tower_a() const { return ta_; }
    const TowerCache& tower_pair() const { return tr_; }

private:
    FieldMatrix connecting(int i, int k) const;  // H_{k+1}(X_i,A_i) -> H_k(A_i)
    int kmax_;
    std::uint32_t p_;
    TowerCache tx_, ta_, tr_;
};

// Free-function forms of the operations above.
SequenceSlice mv_stage(const FilteredComplex& X, const SubcomplexSpec& A, const SubcomplexSpec& B,
                       int i, int kmax, std::uint32_t p, TieBreak tie = TieBreak::AFirst);
SequenceReport mv_persistent(const FilteredComplex& X, const SubcomplexSpec& A,
                             const SubcomplexSpec& B, int i, int j, int kmax, std::uint32_t p);
SequenceSlice pair_stage(const FilteredComplex& X, const SubcomplexSpec& A, int i, int kmax,
                         std::uint32_t p);
SequenceReport pair_persistent(const FilteredComplex& X, const SubcomplexSpec& A, int i, int j,
                               int kmax, std::uint32_t p);

enum class SeqKind { Pair, MayerVietoris };
SequenceReport module_sequence(SeqKind kind, const FilteredComplex& X, const SubcomplexSpec& A,
                               const SubcomplexSpec* B, int kmax, std::uint32_t p,
                               Exec exec = Exec::Parallel);

// The MV sequence in persistent homology groups rebuilt from the two pair
// sequences and the excision isomorphism, with the connecting map composed
// through the inverted excision component. `agrees` records the
// position-by-position comparison (dims, ranks, verdict flags) against the
// directly built persistent MV row.
struct DeriveResult {
    SequenceReport derived;
    SequenceReport direct;
    bool agrees = false;
    std::string mismatch;  // empty when agrees
};
DeriveResult derive_mv_from_excision(const FilteredComplex& X, const SubcomplexSpec& A,
                                     const SubcomplexSpec& B, int i, int j, int kmax,
                                     std::uint32_t p, Exec exec = Exec::Parallel);

}  // namespace phex
