#pragma once

#include <optional>
#include <set>

#include "phex/complex.hpp"
#include "phex/gf.hpp"
#include "phex/parallel.hpp"

namespace phex {

// Chain complex of one filtration stage, absolute or relative. In relative
// mode the A-simplices are deleted from every basis, which realizes the
// quotient C(X_i)/C(A_i): the boundary matrices are the quotient boundaries.
struct StageChainComplex {
    int level = 0;
    std::uint32_t p = 2;
    bool relative = false;
    std::vector<std::vector<Simplex>> basis;  // [k]: lex-ordered basis of C_k
    std::vector<FieldMatrix> boundary;        // [k]: dim C_{k-1} x dim C_k

    int max_degree() const { return static_cast<int>(basis.size()) - 1; }
    int dim_c(int k) const {
        return (k >= 0 && k <= max_degree()) ? static_cast<int>(basis[k].size()) : 0;
    }
    // Boundary map C_k -> C_{k-1}; a zero-column matrix above the built range.
    FieldMatrix d(int k) const {
        if (k >= 0 && k <= max_degree()) return boundary[k];
        return FieldMatrix(p, dim_c(k - 1), 0);
    }
    // Index of s in basis[k], or -1.
    int index_of(int k, const Simplex& s) const;
};

// Bases are built for degrees 0..max_degree. relative_to, when present, must
// be a subcomplex of X; its members are quotiented away. d(k+1) o d(k+1)...
// the identity d(k) o d(k+1) = 0 is asserted for every built degree.
StageChainComplex stage_complex(const FilteredComplex& X, int i,
                                const SubcomplexSpec* relative_to, std::uint32_t p,
                                int max_degree);

// Homology of one stage in one degree, with an explicit basis: cycle
// representatives plus a basis of the boundary space, so that classes decode
// to coordinates and chains push forward to classes.
struct HomologySpace {
    int level = 0;
    int degree = 0;
    std::uint32_t p = 2;
    int chain_dim = 0;
    FieldMatrix reps;        // chain_dim x dim(H): cycle representatives
    FieldMatrix boundaries;  // chain_dim x dim(B): basis of im d_{k+1}

    int dim() const { return reps.cols(); }

    // Homology coordinates of cycle columns: solve [boundaries | reps] x = z
    // and keep the reps block. Throws std::logic_error if a column is not a
    // cycle-modulo-boundary combination (a basis bug, impossible for genuine
    // induced maps).
    FieldMatrix decode(const FieldMatrix& cycles) const;
};

HomologySpace homology(const StageChainComplex& stage, int k);

// Matrix of the map induced by the simplex-level chain map that sends a
// basis simplex to the identically-named simplex of the target basis and to
// zero when absent (absence happens exactly for quotient maps).
FieldMatrix induced_map(const HomologySpace& src, const std::vector<Simplex>& src_basis,
                        const HomologySpace& dst, const std::vector<Simplex>& dst_basis);

// A finite tower of vector spaces with transition maps, one degree.
struct PersistenceModule {
    int degree = 0;
    std::uint32_t p = 2;
    std::vector<int> dims;           // d_0..d_n
    std::vector<FieldMatrix> steps;  // phi_{i,i+1}, n entries

    int levels() const { return static_cast<int>(dims.size()); }
    // phi_{i,j} by composition; phi_{i,i} = identity.
    FieldMatrix transition(int i, int j) const;
};

// dim im(phi_{i,j}).
int persistent_betti(const PersistenceModule& M, int i, int j);

// A level-wise family of maps between two towers; commutes() checks the
// defining squares f_{i+1} o phi_i = psi_i o f_i.
struct ModuleMorphism {
    PersistenceModule source, target;
    std::vector<FieldMatrix> components;  // f_i, one per level
    bool commutes() const;
};

// Commuting square j o f = g o i of field matrices:
//
//        f
//    C ----> D
//    |       |
//  i |       | j
//    v       v
//    E ----> F
//        g
struct CommutingSquare {
    FieldMatrix f, i, j, g;
};

// The matrix of j restricted to Im(f), landing in Im(g), in the image bases
// produced by image_kernel. Throws std::invalid_argument when the square
// does not commute. When i and j are invertible the result is invertible.
struct RestrictedMap {
    FieldMatrix matrix;
    Subspace src_image;  // Im(f), inside D
    Subspace dst_image;  // Im(g), inside F
};
RestrictedMap restricted_map(const CommutingSquare& sq);

// Precomputed stage complexes and homology spaces of one tower (a filtered
// complex, optionally relative to a subcomplex), for degrees 0..kmax+1.
// Stage builds are independent and fan out per the execution policy.
class TowerCache {
public:
    TowerCache(FilteredComplex X, std::optional<std::set<Simplex>> omit, std::uint32_t p,
               int kmax, Exec exec = Exec::Parallel);

    int levels() const { return static_cast<int>(stages_.size()); }  // n+1
    int kmax() const { return kmax_; }
    const FilteredComplex& complex() const { return X_; }
    const StageChainComplex& stage(int i) const { return stages_.at(i); }
    const HomologySpace& h(int i, int k) const;
    const std::vector<Simplex>& chain_basis(int i, int k) const;

    // Induced map H_k(level i) -> H_k(level j) for i <= j.
    FieldMatrix map_between(int i, int j, int k) const;

    PersistenceModule module(int k) const;

private:
    FilteredComplex X_;
    std::optional<std::set<Simplex>> omit_;
    std::uint32_t p_;
    int kmax_;
    std::vector<StageChainComplex> stages_;
    std::vector<std::vector<HomologySpace>> h_;  // [i][k], k = 0..kmax+1
    static const std::vector<Simplex> empty_basis_;
};

// Persistence module of X in degree k (relative to A when given).
PersistenceModule build_module(const FilteredComplex& X, int k, const SubcomplexSpec* relative_to,
                               std::uint32_t p, Exec exec = Exec::Parallel);

}  // namespace phex
