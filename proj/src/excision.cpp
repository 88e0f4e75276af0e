#include "phex/excision.hpp"

namespace phex {

bool ExcisionReport::DegreeResult::group_all_equal() const {
    for (const GroupCell& cell : group_table)
        if (!cell.equal) return false;
    return true;
}

bool ExcisionReport::all_hold() const {
    for (const DegreeResult& d : per_degree)
        if (!d.module_iso || !d.group_all_equal()) return false;
    return true;
}

namespace {

bool invertible(const FieldMatrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

std::vector<Simplex> offenders_at(const CoverReport& cover, const FilteredComplex& X, int i) {
    std::vector<Simplex> out;
    for (const Simplex& s : cover.offending)
        if (X.level(s) <= i) out.push_back(s);
    return out;
}

}  // namespace

bool verify_excision_step(const FilteredComplex& X, const SubcomplexSpec& A,
                          const SubcomplexSpec& B, int i, int k, std::uint32_t p) {
    CoverReport cover = check_cover(X, A, B);
    if (i < 0 || i > X.max_level()) throw std::invalid_argument("level out of range");
    if (!cover.per_level_cover[i])
        throw HypothesisError("cover hypothesis fails at level " + std::to_string(i),
                              offenders_at(cover, X, i));

    SubcomplexSpec ab = intersect(A, B);
    FilteredComplex bx = induced_filtration(B);
    SubcomplexSpec ab_in_b(bx, ab.members());

    TowerCache txa(X, A.members(), p, k, Exec::Serial);
    TowerCache tbi(bx, ab_in_b.members(), p, k, Exec::Serial);
    FieldMatrix e = induced_map(tbi.h(i, k), tbi.chain_basis(i, k), txa.h(i, k),
                                txa.chain_basis(i, k));
    return invertible(e);
}

ExcisionReport verify_persistent_excision(const FilteredComplex& X, const SubcomplexSpec& A,
                                          const SubcomplexSpec& B, int kmax, std::uint32_t p,
                                          Exec exec) {
    ExcisionReport report;
    report.cover = check_cover(X, A, B);
    if (!report.cover.is_cover)
        throw HypothesisError("A and B do not cover X", report.cover.offending);

    SubcomplexSpec ab = intersect(A, B);
    FilteredComplex bx = induced_filtration(B);
    SubcomplexSpec ab_in_b(bx, ab.members());
    report.size_x = X.size();
    report.size_a = A.size();
    report.size_b = B.size();
    report.size_ab = ab.size();

    TowerCache txa(X, A.members(), p, kmax, exec);
    TowerCache tbi(bx, ab_in_b.members(), p, kmax, exec);
    const int n = X.max_level();

    report.per_degree.resize(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
        ExcisionReport::DegreeResult& deg = report.per_degree[k];
        deg.k = k;

        // The excision morphism of persistence modules, one component per
        // level (diagram of inclusions of pairs, homology applied).
        ModuleMorphism morphism;
        morphism.source = tbi.module(k);
        morphism.target = txa.module(k);
        for (int i = 0; i <= n; ++i)
            morphism.components.push_back(induced_map(tbi.h(i, k), tbi.chain_basis(i, k),
                                                      txa.h(i, k), txa.chain_basis(i, k)));
        deg.dims_bab = morphism.source.dims;
        deg.dims_xa = morphism.target.dims;
        bool all_invertible = true;
        for (const FieldMatrix& c : morphism.components) {
            deg.component_ranks.push_back(rank(c));
            all_invertible = all_invertible && invertible(c);
        }
        deg.module_iso = all_invertible && morphism.commutes();

        // Group level: restrict each component square to the persistent
        // images and compare the Betti numbers on both sides.
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) pairs.emplace_back(i, j);
        deg.group_table.resize(pairs.size());
        par_for(exec, static_cast<int>(pairs.size()), [&](int t) {
            auto [i, j] = pairs[t];
            ExcisionReport::GroupCell cell;
            cell.i = i;
            cell.j = j;
            RestrictedMap r = restricted_map({morphism.source.transition(i, j),
                                              morphism.components[i], morphism.components[j],
                                              morphism.target.transition(i, j)});
            cell.beta_bab = r.src_image.dim();
            cell.beta_xa = r.dst_image.dim();
            cell.equal = cell.beta_bab == cell.beta_xa && invertible(r.matrix);
            deg.group_table[t] = cell;
        });
    }
    return report;
}

ExciseComputation excise_compute(const FilteredComplex& X, const SubcomplexSpec& A,
                                 const SubcomplexSpec& B, int k, std::uint32_t p) {
    CoverReport cover = check_cover(X, A, B);
    if (!cover.is_cover) throw HypothesisError("A and B do not cover X", cover.offending);

    SubcomplexSpec ab = intersect(A, B);
    FilteredComplex bx = induced_filtration(B);
    SubcomplexSpec ab_in_b(bx, ab.members());

    ExciseComputation out;
    out.simplices_direct = X.size();
    out.simplices_excised = bx.size();
    out.bc = barcode(reduce(bx, &ab_in_b, p), k);
    return out;
}

}  // namespace phex
