#include "phex/homology.hpp"

#include <algorithm>

namespace phex {

int StageChainComplex::index_of(int k, const Simplex& s) const {
    if (k < 0 || k > max_degree()) return -1;
    const auto& b = basis[k];
    auto it = std::lower_bound(b.begin(), b.end(), s);
    if (it == b.end() || *it != s) return -1;
    return static_cast<int>(it - b.begin());
}

StageChainComplex stage_complex(const FilteredComplex& X, int i,
                                const SubcomplexSpec* relative_to, std::uint32_t p,
                                int max_degree) {
    if (i < 0 || i > X.max_level())
        throw std::invalid_argument("stage level " + std::to_string(i) + " out of range 0.." +
                                    std::to_string(X.max_level()));
    StageChainComplex out;
    out.level = i;
    out.p = p;
    out.relative = relative_to != nullptr;

    auto omitted = [&](const Simplex& s) { return relative_to && relative_to->contains(s); };

    out.basis.resize(max_degree + 1);
    for (const auto& [s, lvl] : X.levels())
        if (lvl <= i && s.dim() <= max_degree && !omitted(s)) out.basis[s.dim()].push_back(s);
    // map iteration is lex-ordered already; per-degree lists inherit it

    out.boundary.reserve(max_degree + 1);
    for (int k = 0; k <= max_degree; ++k) {
        const int rows = k == 0 ? 0 : static_cast<int>(out.basis[k - 1].size());
        FieldMatrix d(p, rows, static_cast<int>(out.basis[k].size()));
        if (k > 0) {
            for (std::size_t c = 0; c < out.basis[k].size(); ++c) {
                const Simplex& s = out.basis[k][c];
                for (int t = 0; t <= s.dim(); ++t) {
                    Simplex f = s.facet(t);
                    if (omitted(f)) continue;
                    int r = out.index_of(k - 1, f);
                    if (r < 0) throw std::logic_error("missing facet in stage basis");
                    d.set(r, static_cast<int>(c), (t % 2 == 0) ? 1u : p - 1);
                }
            }
        }
        out.boundary.push_back(std::move(d));
    }
    for (int k = 1; k < max_degree; ++k)
        if (!(out.boundary[k] * out.boundary[k + 1]).is_zero())
            throw std::logic_error("boundary of boundary nonzero at degree " + std::to_string(k));
    return out;
}

FieldMatrix HomologySpace::decode(const FieldMatrix& cycles) const {
    auto X = solve_columns(boundaries.hcat(reps), cycles);
    if (!X) throw std::logic_error("chain is not a boundary-representative combination");
    FieldMatrix out(p, reps.cols(), cycles.cols());
    for (int r = 0; r < reps.cols(); ++r)
        for (int c = 0; c < cycles.cols(); ++c) out.set(r, c, (*X)(boundaries.cols() + r, c));
    return out;
}

HomologySpace homology(const StageChainComplex& stage, int k) {
    HomologySpace out;
    out.level = stage.level;
    out.degree = k;
    out.p = stage.p;
    out.chain_dim = stage.dim_c(k);
    if (k < 0 || out.chain_dim == 0) {
        out.reps = FieldMatrix(stage.p, out.chain_dim, 0);
        out.boundaries = FieldMatrix(stage.p, out.chain_dim, 0);
        return out;
    }

    auto [img_next, ker] = image_kernel(stage.d(k));
    (void)img_next;
    FieldMatrix cycles = ker.basis;                        // chain_dim x z
    FieldMatrix bnd = image_kernel(stage.d(k + 1)).first.basis;  // chain_dim x b

    // Cycle columns that extend the boundary basis to a basis of Z_k are the
    // representatives; found as the pivots of [bnd | cycles] past the bnd
    // block.
    Echelon e = echelon(bnd.hcat(cycles));
    std::vector<int> rep_cols;
    for (int pc : e.pivot_cols)
        if (pc >= bnd.cols()) rep_cols.push_back(pc - bnd.cols());

    FieldMatrix reps(stage.p, out.chain_dim, static_cast<int>(rep_cols.size()));
    for (std::size_t t = 0; t < rep_cols.size(); ++t)
        for (int r = 0; r < out.chain_dim; ++r) reps.set(r, static_cast<int>(t), cycles(r, rep_cols[t]));
    out.reps = std::move(reps);
    out.boundaries = std::move(bnd);
    return out;
}

FieldMatrix induced_map(const HomologySpace& src, const std::vector<Simplex>& src_basis,
                        const HomologySpace& dst, const std::vector<Simplex>& dst_basis) {
    FieldMatrix pushed(src.p, dst.chain_dim, src.dim());
    for (int c = 0; c < src.dim(); ++c)
        for (std::size_t r = 0; r < src_basis.size(); ++r) {
            std::uint32_t v = src.reps(static_cast<int>(r), c);
            if (!v) continue;
            auto it = std::lower_bound(dst_basis.begin(), dst_basis.end(), src_basis[r]);
            if (it == dst_basis.end() || *it != src_basis[r]) continue;  // quotiented away
            pushed.set(static_cast<int>(it - dst_basis.begin()), c, v);
        }
    return dst.decode(pushed);
}

FieldMatrix PersistenceModule::transition(int i, int j) const {
    if (i > j) throw std::invalid_argument("transition requires i <= j");
    FieldMatrix t = FieldMatrix::identity(p, dims.at(i));
    for (int s = i; s < j; ++s) t = steps.at(s) * t;
    return t;
}

int persistent_betti(const PersistenceModule& M, int i, int j) {
    return rank(M.transition(i, j));
}

bool ModuleMorphism::commutes() const {
    for (std::size_t i = 0; i + 1 < components.size(); ++i) {
        FieldMatrix lhs = components[i + 1] * source.steps.at(i);
        FieldMatrix rhs = target.steps.at(i) * components[i];
        if (!(lhs == rhs)) return false;
    }
    return true;
}

RestrictedMap restricted_map(const CommutingSquare& sq) {
    if (!((sq.j * sq.f) == (sq.g * sq.i)))
        throw std::invalid_argument("restricted_map: square does not commute");
    RestrictedMap out;
    out.src_image = image_kernel(sq.f).first;
    out.dst_image = image_kernel(sq.g).first;
    auto coords = solve_columns(out.dst_image.basis, sq.j * out.src_image.basis);
    if (!coords)
        throw std::logic_error("restricted_map: j(Im f) not contained in Im g");
    out.matrix = std::move(*coords);
    return out;
}

const std::vector<Simplex> TowerCache::empty_basis_{};

TowerCache::TowerCache(FilteredComplex X, std::optional<std::set<Simplex>> omit, std::uint32_t p,
                       int kmax, Exec exec)
    : X_(std::move(X)), omit_(std::move(omit)), p_(p), kmax_(kmax) {
    const int n = X_.max_level();
    stages_.resize(n + 1);
    h_.assign(n + 1, std::vector<HomologySpace>(kmax_ + 2));

    std::optional<SubcomplexSpec> rel;
    if (omit_) rel.emplace(X_, *omit_);

    par_for(exec, n + 1, [&](int i) {
        stages_[i] = stage_complex(X_, i, rel ? &*rel : nullptr, p_, kmax_ + 2);
        for (int k = 0; k <= kmax_ + 1; ++k) h_[i][k] = homology(stages_[i], k);
    });
}

const HomologySpace& TowerCache::h(int i, int k) const { return h_.at(i).at(k); }

const std::vector<Simplex>& TowerCache::chain_basis(int i, int k) const {
    const StageChainComplex& s = stages_.at(i);
    if (k < 0 || k > s.max_degree()) return empty_basis_;
    return s.basis[k];
}

FieldMatrix TowerCache::map_between(int i, int j, int k) const {
    if (i > j) throw std::invalid_argument("map_between requires i <= j");
    return induced_map(h(i, k), chain_basis(i, k), h(j, k), chain_basis(j, k));
}

PersistenceModule TowerCache::module(int k) const {
    PersistenceModule M;
    M.degree = k;
    M.p = p_;
    for (int i = 0; i < levels(); ++i) M.dims.push_back(h(i, k).dim());
    for (int i = 0; i + 1 < levels(); ++i) M.steps.push_back(map_between(i, i + 1, k));
    return M;
}

PersistenceModule build_module(const FilteredComplex& X, int k, const SubcomplexSpec* relative_to,
                               std::uint32_t p, Exec exec) {
    std::optional<std::set<Simplex>> omit;
    if (relative_to) omit = relative_to->members();
    return TowerCache(X, std::move(omit), p, k, exec).module(k);
}

}  // namespace phex
