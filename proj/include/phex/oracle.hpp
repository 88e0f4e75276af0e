#pragma once

#include <memory>

#include "phex/sequences.hpp"

namespace phex {

// Parameters of the deterministic instance generator. Every generated triple
// satisfies X = A u B with A, B face-closed.
struct InstanceParams {
    std::uint64_t seed = 0;
    int max_vertices = 10;   // <= 10
    int max_dim = 3;         // <= 3
    int n_levels = 5;        // <= 5
    double cover_bias = 0.6; // probability a simplex joins A (and, independently, B)
};

// A generated cover triple. X is heap-held so the subcomplex specs stay
// valid under moves.
struct Triple {
    std::unique_ptr<FilteredComplex> X;
    SubcomplexSpec A, B;
};

Triple generate(const InstanceParams& params);

// Persistent Betti number by the stacked-rank path: with Z the cycles of
// stage i pushed into stage j coordinates and D the degree-(k+1) boundary
// matrix of stage j,
//   beta = rank[Z | D] - rank[D].
// No homology bases, no barcode; shares only the raw field arithmetic with
// the other two paths. Relative mode deletes the subcomplex simplices.
int oracle_betti(const FilteredComplex& X, const SubcomplexSpec* relative_to, int k, int i,
                 int j, std::uint32_t p);

// Result of a seed sweep hunting for a persistent sequence that is a chain
// complex but not exact.
struct Witness {
    InstanceParams params;
    int i = 0, j = 0;
    int k = 0;             // degree of the non-exact position
    std::string position;  // name of the first non-exact position
};
struct SweepResult {
    int attempted = 0;
    int witnesses = 0;                  // seeds with at least one witness
    std::optional<Witness> first;       // smallest seed, then smallest (i,j)
    bool chain_complex_violated = false;  // would falsify the chain-complex claim
};

enum class SweepTarget { MayerVietoris, Pair };

// Sweeps seeds first_seed..first_seed+count-1 of the generator at the given
// base parameters; every seed is evaluated (all i < j, degrees <= kmax).
SweepResult search_nonexact(const InstanceParams& base, std::uint64_t first_seed, int count,
                            SweepTarget target, int kmax, std::uint32_t p,
                            Exec exec = Exec::Parallel);

}  // namespace phex
