#include "phex/sequences.hpp"

#include <sstream>

namespace phex {

namespace {

std::string h_name(int k, const std::string& space) {
    return "H" + std::to_string(k) + "(" + space + ")";
}

std::vector<Simplex> offending_at_level(const CoverReport& cover, const FilteredComplex& X,
                                        int i) {
    std::vector<Simplex> out;
    for (const Simplex& s : cover.offending)
        if (X.level(s) <= i) out.push_back(s);
    return out;
}

// Restriction of a level-j map to persistent images, in the given bases.
FieldMatrix restrict_with(const FieldMatrix& level_j_map, const Subspace& src,
                          const Subspace& dst) {
    auto coords = solve_columns(dst.basis, level_j_map * src.basis);
    if (!coords)
        throw std::logic_error("restriction does not land in the target persistent image");
    return *coords;
}

// Restricted row: dims become the vertical ranks, horizontal maps are the
// level-j maps restricted to the vertical images. Each position goes through
// restricted_map, which also asserts the naturality square.
SequenceSlice restrict_row(const SequenceSlice& row_i, const SequenceSlice& row_j,
                           const std::vector<FieldMatrix>& verticals, std::uint32_t p) {
    SequenceSlice out;
    out.names = row_i.names;
    out.degrees = row_i.degrees;
    const int real = static_cast<int>(verticals.size());  // spaces before the trailing 0
    std::vector<Subspace> images(real);
    for (int t = 0; t < real; ++t) {
        images[t] = image_kernel(verticals[t]).first;
        out.dims.push_back(images[t].dim());
    }
    out.dims.push_back(0);
    for (int t = 0; t < real; ++t) {
        if (t + 1 < real) {
            RestrictedMap r = restricted_map(
                {verticals[t], row_i.maps[t], row_j.maps[t], verticals[t + 1]});
            out.maps.push_back(std::move(r.matrix));
        } else {
            out.maps.push_back(FieldMatrix(p, 0, out.dims[t]));
        }
    }
    return out;
}

std::string describe_position(const SeqPosition& p) {
    std::ostringstream os;
    os << p.name << " dim=" << p.dim << " rank_in=" << p.rank_in << " rank_out=" << p.rank_out
       << " zero=" << (p.composite_zero ? 'y' : 'n') << " chain=" << (p.im_subset_ker ? 'y' : 'n')
       << " exact=";
    if (p.boundary)
        os << "boundary";
    else
        os << (p.exact ? 'y' : 'n');
    return os.str();
}

}  // namespace

SequenceReport classify_slice(const SequenceSlice& slice) {
    SequenceReport rep;
    const int T = static_cast<int>(slice.names.size());
    for (int t = 0; t + 1 < T; ++t) {
        SeqPosition pos;
        pos.name = slice.names[t];
        pos.degree = t < static_cast<int>(slice.degrees.size()) ? slice.degrees[t] : 0;
        pos.dim = slice.dims[t];
        pos.rank_out = rank(slice.maps[t]);
        if (t == 0) {
            pos.boundary = true;
            pos.rank_in = 0;
            pos.composite_zero = true;  // vacuous: incoming map outside the window
            pos.im_subset_ker = true;
        } else {
            const FieldMatrix& in = slice.maps[t - 1];
            const FieldMatrix& out = slice.maps[t];
            pos.rank_in = rank(in);
            pos.composite_zero = (out * in).is_zero();
            auto [in_image, in_kernel] = image_kernel(in);
            (void)in_kernel;
            pos.im_subset_ker = subspace_contains(image_kernel(out).second, in_image.basis);
            pos.exact = pos.composite_zero && (pos.rank_in + pos.rank_out == pos.dim);
        }
        rep.positions.push_back(std::move(pos));
    }
    bool all_exact = true, all_chain = true;
    for (const SeqPosition& pos : rep.positions) {
        if (pos.boundary) continue;
        all_exact = all_exact && pos.exact;
        all_chain = all_chain && pos.composite_zero && pos.im_subset_ker;
    }
    rep.verdict = all_exact   ? SeqVerdict::Exact
                  : all_chain ? SeqVerdict::ChainComplexOnly
                              : SeqVerdict::NotChainComplex;
    return rep;
}

const char* verdict_name(SeqVerdict v) {
    switch (v) {
        case SeqVerdict::Exact: return "exact";
        case SeqVerdict::ChainComplexOnly: return "chain_complex_only";
        default: return "not_chain_complex";
    }
}

std::string to_text(const SequenceReport& report) {
    std::ostringstream os;
    for (const SeqPosition& p : report.positions) os << describe_position(p) << '\n';
    os << "verdict " << verdict_name(report.verdict) << '\n';
    return os.str();
}

ConnectingData mv_splitting(const std::vector<Simplex>& chain_basis, const SubcomplexSpec& A,
                            const SubcomplexSpec& B, TieBreak tie) {
    ConnectingData cd;
    cd.a_side.resize(chain_basis.size());
    for (std::size_t t = 0; t < chain_basis.size(); ++t) {
        const bool in_a = A.contains(chain_basis[t]);
        const bool in_b = B.contains(chain_basis[t]);
        if (!in_a && !in_b)
            throw HypothesisError("simplex " + chain_basis[t].str() + " not covered by A or B",
                                  {chain_basis[t]});
        cd.a_side[t] = (tie == TieBreak::AFirst) ? in_a : (in_a && !in_b);
    }
    return cd;
}

// --- Mayer-Vietoris ---------------------------------------------------------

MvAnalyzer::MvAnalyzer(const FilteredComplex& X, const SubcomplexSpec& A, const SubcomplexSpec& B,
                       int kmax, std::uint32_t p, Exec exec)
    : a_(A),
      b_(B),
      cover_(check_cover(X, A, B)),
      kmax_(kmax),
      p_(p),
      tx_(X, std::nullopt, p, kmax, exec),
      ta_(induced_filtration(A), std::nullopt, p, kmax, exec),
      tb_(induced_filtration(B), std::nullopt, p, kmax, exec),
      ti_(induced_filtration(intersect(A, B)), std::nullopt, p, kmax, exec) {}

FieldMatrix MvAnalyzer::connecting(int i, int k, TieBreak tie) const {
    const HomologySpace& hx = tx_.h(i, k + 1);
    const std::vector<Simplex>& basis_top = tx_.chain_basis(i, k + 1);
    ConnectingData tags = mv_splitting(basis_top, a_, b_, tie);

    // A-side part of every representative, then its boundary.
    FieldMatrix masked(p_, hx.chain_dim, hx.dim());
    for (int c = 0; c < hx.dim(); ++c)
        for (int r = 0; r < hx.chain_dim; ++r)
            if (tags.a_side[r]) masked.set(r, c, hx.reps(r, c));
    FieldMatrix bnd = tx_.stage(i).d(k + 1) * masked;  // in C_k(X_i) coordinates

    const std::vector<Simplex>& basis_x = tx_.chain_basis(i, k);
    const std::vector<Simplex>& basis_ab = ti_.chain_basis(i, k);
    const HomologySpace& hi = ti_.h(i, k);
    FieldMatrix in_ab(p_, hi.chain_dim, hx.dim());
    for (int r = 0; r < bnd.rows(); ++r)
        for (int c = 0; c < bnd.cols(); ++c) {
            if (!bnd(r, c)) continue;
            auto it = std::lower_bound(basis_ab.begin(), basis_ab.end(), basis_x[r]);
            if (it == basis_ab.end() || *it != basis_x[r])
                throw std::logic_error("connecting boundary not supported on the intersection");
            in_ab.set(static_cast<int>(it - basis_ab.begin()), c, bnd(r, c));
        }
    return hi.decode(in_ab);
}

SequenceSlice MvAnalyzer::stage_row(int i, TieBreak tie) const {
    if (i < 0 || i >= levels()) throw std::invalid_argument("stage level out of range");
    if (!cover_.per_level_cover[i])
        throw HypothesisError("cover hypothesis fails at level " + std::to_string(i),
                              offending_at_level(cover_, tx_.complex(), i));

    SequenceSlice row;
    row.names.push_back(h_name(kmax_ + 1, "X"));
    row.degrees.push_back(kmax_ + 1);
    row.dims.push_back(tx_.h(i, kmax_ + 1).dim());
    row.maps.push_back(connecting(i, kmax_, tie));
    for (int k = kmax_; k >= 0; --k) {
        row.names.push_back(h_name(k, "AnB"));
        row.degrees.push_back(k);
        row.dims.push_back(ti_.h(i, k).dim());
        FieldMatrix alpha = induced_map(ti_.h(i, k), ti_.chain_basis(i, k), ta_.h(i, k),
                                        ta_.chain_basis(i, k));
        FieldMatrix beta = induced_map(ti_.h(i, k), ti_.chain_basis(i, k), tb_.h(i, k),
                                       tb_.chain_basis(i, k));
        row.maps.push_back(alpha.vcat(beta));

        row.names.push_back(h_name(k, "A") + "+" + h_name(k, "B"));
        row.degrees.push_back(k);
        row.dims.push_back(ta_.h(i, k).dim() + tb_.h(i, k).dim());
        FieldMatrix ia = induced_map(ta_.h(i, k), ta_.chain_basis(i, k), tx_.h(i, k),
                                     tx_.chain_basis(i, k));
        FieldMatrix ib = induced_map(tb_.h(i, k), tb_.chain_basis(i, k), tx_.h(i, k),
                                     tx_.chain_basis(i, k));
        row.maps.push_back(ia.hcat(ib.negated()));  // gamma([z],[z']) = [z - z']

        row.names.push_back(h_name(k, "X"));
        row.degrees.push_back(k);
        row.dims.push_back(tx_.h(i, k).dim());
        if (k > 0)
            row.maps.push_back(connecting(i, k - 1, tie));
        else
            row.maps.push_back(FieldMatrix(p_, 0, row.dims.back()));
    }
    row.names.push_back("0");
    row.degrees.push_back(-1);
    row.dims.push_back(0);

    if (classify_slice(row).verdict != SeqVerdict::Exact)
        throw std::logic_error("Mayer-Vietoris stage row failed exactness");
    return row;
}

SequenceReport MvAnalyzer::persistent_row(int i, int j) const {
    if (i > j) throw std::invalid_argument("persistent_row requires i <= j");
    SequenceSlice row_i = stage_row(i);
    SequenceSlice row_j = stage_row(j);

    std::vector<FieldMatrix> verticals;
    verticals.push_back(tx_.map_between(i, j, kmax_ + 1));
    for (int k = kmax_; k >= 0; --k) {
        verticals.push_back(ti_.map_between(i, j, k));
        verticals.push_back(FieldMatrix::block_diag(
            {ta_.map_between(i, j, k), tb_.map_between(i, j, k)}, p_));
        verticals.push_back(tx_.map_between(i, j, k));
    }
    return classify_slice(restrict_row(row_i, row_j, verticals, p_));
}

SequenceReport MvAnalyzer::module_row() const {
    if (!cover_.is_cover) throw HypothesisError("A and B do not cover X", cover_.offending);
    std::vector<SequenceSlice> rows;
    for (int i = 0; i < levels(); ++i) rows.push_back(stage_row(i));
    SequenceSlice sum;
    sum.names = rows[0].names;
    sum.degrees = rows[0].degrees;
    for (std::size_t t = 0; t < sum.names.size(); ++t) {
        int d = 0;
        for (const SequenceSlice& r : rows) d += r.dims[t];
        sum.dims.push_back(d);
    }
    for (std::size_t t = 0; t + 1 < sum.names.size(); ++t) {
        std::vector<FieldMatrix> blocks;
        for (const SequenceSlice& r : rows) blocks.push_back(r.maps[t]);
        sum.maps.push_back(FieldMatrix::block_diag(blocks, p_));
    }
    return classify_slice(sum);
}

// --- pair sequence ----------------------------------------------------------

PairAnalyzer::PairAnalyzer(const FilteredComplex& X, const SubcomplexSpec& A, int kmax,
                           std::uint32_t p, Exec exec)
    : kmax_(kmax),
      p_(p),
      tx_(X, std::nullopt, p, kmax, exec),
      ta_(induced_filtration(A), std::nullopt, p, kmax, exec),
      tr_(X, A.members(), p, kmax, exec) {}

FieldMatrix PairAnalyzer::connecting(int i, int k) const {
    const HomologySpace& hrel = tr_.h(i, k + 1);
    const std::vector<Simplex>& basis_rel = tr_.chain_basis(i, k + 1);
    const std::vector<Simplex>& basis_abs = tx_.chain_basis(i, k + 1);

    // Lift relative representatives to absolute chains (identity on the
    // surviving simplices), then take the absolute boundary.
    FieldMatrix lift(p_, tx_.h(i, k + 1).chain_dim, hrel.dim());
    for (int c = 0; c < hrel.dim(); ++c)
        for (int r = 0; r < hrel.chain_dim; ++r) {
            if (!hrel.reps(r, c)) continue;
            auto it = std::lower_bound(basis_abs.begin(), basis_abs.end(), basis_rel[r]);
            if (it == basis_abs.end() || *it != basis_rel[r])
                throw std::logic_error("relative basis simplex missing from absolute basis");
            lift.set(static_cast<int>(it - basis_abs.begin()), c, hrel.reps(r, c));
        }
    FieldMatrix bnd = tx_.stage(i).d(k + 1) * lift;

    // A relative cycle has boundary supported on A.
    const std::vector<Simplex>& basis_x = tx_.chain_basis(i, k);
    const std::vector<Simplex>& basis_a = ta_.chain_basis(i, k);
    const HomologySpace& ha = ta_.h(i, k);
    FieldMatrix in_a(p_, ha.chain_dim, hrel.dim());
    for (int r = 0; r < bnd.rows(); ++r)
        for (int c = 0; c < bnd.cols(); ++c) {
            if (!bnd(r, c)) continue;
            auto it = std::lower_bound(basis_a.begin(), basis_a.end(), basis_x[r]);
            if (it == basis_a.end() || *it != basis_x[r])
                throw std::logic_error("relative cycle boundary escapes the subcomplex");
            in_a.set(static_cast<int>(it - basis_a.begin()), c, bnd(r, c));
        }
    return ha.decode(in_a);
}

SequenceSlice PairAnalyzer::stage_row(int i) const {
    if (i < 0 || i >= levels()) throw std::invalid_argument("stage level out of range");
    SequenceSlice row;
    row.names.push_back(h_name(kmax_ + 1, "X,A"));
    row.degrees.push_back(kmax_ + 1);
    row.dims.push_back(tr_.h(i, kmax_ + 1).dim());
    row.maps.push_back(connecting(i, kmax_));
    for (int k = kmax_; k >= 0; --k) {
        row.names.push_back(h_name(k, "A"));
        row.degrees.push_back(k);
        row.dims.push_back(ta_.h(i, k).dim());
        row.maps.push_back(induced_map(ta_.h(i, k), ta_.chain_basis(i, k), tx_.h(i, k),
                                       tx_.chain_basis(i, k)));
        row.names.push_back(h_name(k, "X"));
        row.degrees.push_back(k);
        row.dims.push_back(tx_.h(i, k).dim());
        row.maps.push_back(induced_map(tx_.h(i, k), tx_.chain_basis(i, k), tr_.h(i, k),
                                       tr_.chain_basis(i, k)));
        row.names.push_back(h_name(k, "X,A"));
        row.degrees.push_back(k);
        row.dims.push_back(tr_.h(i, k).dim());
        if (k > 0)
            row.maps.push_back(connecting(i, k - 1));
        else
            row.maps.push_back(FieldMatrix(p_, 0, row.dims.back()));
    }
    row.names.push_back("0");
    row.degrees.push_back(-1);
    row.dims.push_back(0);

    if (classify_slice(row).verdict != SeqVerdict::Exact)
        throw std::logic_error("pair stage row failed exactness");
    return row;
}

SequenceReport PairAnalyzer::persistent_row(int i, int j) const {
    if (i > j) throw std::invalid_argument("persistent_row requires i <= j");
    SequenceSlice row_i = stage_row(i);
    SequenceSlice row_j = stage_row(j);
    std::vector<FieldMatrix> verticals;
    verticals.push_back(tr_.map_between(i, j, kmax_ + 1));
    for (int k = kmax_; k >= 0; --k) {
        verticals.push_back(ta_.map_between(i, j, k));
        verticals.push_back(tx_.map_between(i, j, k));
        verticals.push_back(tr_.map_between(i, j, k));
    }
    return classify_slice(restrict_row(row_i, row_j, verticals, p_));
}

SequenceReport PairAnalyzer::module_row() const {
    std::vector<SequenceSlice> rows;
    for (int i = 0; i < levels(); ++i) rows.push_back(stage_row(i));
    SequenceSlice sum;
    sum.names = rows[0].names;
    sum.degrees = rows[0].degrees;
    for (std::size_t t = 0; t < sum.names.size(); ++t) {
        int d = 0;
        for (const SequenceSlice& r : rows) d += r.dims[t];
        sum.dims.push_back(d);
    }
    for (std::size_t t = 0; t + 1 < sum.names.size(); ++t) {
        std::vector<FieldMatrix> blocks;
        for (const SequenceSlice& r : rows) blocks.push_back(r.maps[t]);
        sum.maps.push_back(FieldMatrix::block_diag(blocks, p_));
    }
    return classify_slice(sum);
}

// --- free functions ---------------------------------------------------------

SequenceSlice mv_stage(const FilteredComplex& X, const SubcomplexSpec& A, const SubcomplexSpec& B,
                       int i, int kmax, std::uint32_t p, TieBreak tie) {
    return MvAnalyzer(X, A, B, kmax, p).stage_row(i, tie);
}

SequenceReport mv_persistent(const FilteredComplex& X, const SubcomplexSpec& A,
                             const SubcomplexSpec& B, int i, int j, int kmax, std::uint32_t p) {
    return MvAnalyzer(X, A, B, kmax, p).persistent_row(i, j);
}

SequenceSlice pair_stage(const FilteredComplex& X, const SubcomplexSpec& A, int i, int kmax,
                         std::uint32_t p) {
    return PairAnalyzer(X, A, kmax, p).stage_row(i);
}

SequenceReport pair_persistent(const FilteredComplex& X, const SubcomplexSpec& A, int i, int j,
                               int kmax, std::uint32_t p) {
    return PairAnalyzer(X, A, kmax, p).persistent_row(i, j);
}

SequenceReport module_sequence(SeqKind kind, const FilteredComplex& X, const SubcomplexSpec& A,
                               const SubcomplexSpec* B, int kmax, std::uint32_t p, Exec exec) {
    if (kind == SeqKind::Pair) return PairAnalyzer(X, A, kmax, p, exec).module_row();
    if (!B) throw std::invalid_argument("Mayer-Vietoris module sequence needs B");
    return MvAnalyzer(X, A, *B, kmax, p, exec).module_row();
}

// --- derivation from excision -----------------------------------------------

DeriveResult derive_mv_from_excision(const FilteredComplex& X, const SubcomplexSpec& A,
                                     const SubcomplexSpec& B, int i, int j, int kmax,
                                     std::uint32_t p, Exec exec) {
    if (i > j) throw std::invalid_argument("derive requires i <= j");
    CoverReport cover = check_cover(X, A, B);
    if (!cover.is_cover) throw HypothesisError("A and B do not cover X", cover.offending);

    SubcomplexSpec ab = intersect(A, B);
    FilteredComplex bx = induced_filtration(B);
    SubcomplexSpec ab_in_b(bx, ab.members());

    TowerCache tx(X, std::nullopt, p, kmax, exec);
    TowerCache ta(induced_filtration(A), std::nullopt, p, kmax, exec);
    TowerCache tb(bx, std::nullopt, p, kmax, exec);
    TowerCache ti(induced_filtration(ab), std::nullopt, p, kmax, exec);
    TowerCache txa(X, A.members(), p, kmax, exec);
    TowerCache tbi(bx, ab_in_b.members(), p, kmax, exec);

    // Persistent image bases, one per space and degree, shared by every
    // restricted map below.
    auto images = [&](const TowerCache& t) {
        std::vector<Subspace> out;
        for (int k = 0; k <= kmax + 1; ++k)
            out.push_back(image_kernel(t.map_between(i, j, k)).first);
        return out;
    };
    std::vector<Subspace> sx = images(tx), sa = images(ta), sb = images(tb), si = images(ti),
                          sxa = images(txa), sbi = images(tbi);

    auto cross = [&](const TowerCache& src, const TowerCache& dst, int k) {
        return induced_map(src.h(j, k), src.chain_basis(j, k), dst.h(j, k), dst.chain_basis(j, k));
    };

    // Pair connecting map of (B, AnB) at level j: H_{k+1}(B,AnB) -> H_k(AnB).
    auto pair_connecting_b = [&](int k) {
        const HomologySpace& hrel = tbi.h(j, k + 1);
        const std::vector<Simplex>& basis_rel = tbi.chain_basis(j, k + 1);
        const std::vector<Simplex>& basis_abs = tb.chain_basis(j, k + 1);
        FieldMatrix lift(p, tb.h(j, k + 1).chain_dim, hrel.dim());
        for (int c = 0; c < hrel.dim(); ++c)
            for (int r = 0; r < hrel.chain_dim; ++r) {
                if (!hrel.reps(r, c)) continue;
                auto it = std::lower_bound(basis_abs.begin(), basis_abs.end(), basis_rel[r]);
                if (it == basis_abs.end() || *it != basis_rel[r])
                    throw std::logic_error("relative basis simplex missing from absolute basis");
                lift.set(static_cast<int>(it - basis_abs.begin()), c, hrel.reps(r, c));
            }
        FieldMatrix bnd = tb.stage(j).d(k + 1) * lift;
        const std::vector<Simplex>& basis_b = tb.chain_basis(j, k);
        const std::vector<Simplex>& basis_i = ti.chain_basis(j, k);
        const HomologySpace& hi = ti.h(j, k);
        FieldMatrix in_i(p, hi.chain_dim, hrel.dim());
        for (int r = 0; r < bnd.rows(); ++r)
            for (int c = 0; c < bnd.cols(); ++c) {
                if (!bnd(r, c)) continue;
                auto it = std::lower_bound(basis_i.begin(), basis_i.end(), basis_b[r]);
                if (it == basis_i.end() || *it != basis_b[r])
                    throw std::logic_error("relative cycle boundary escapes the intersection");
                in_i.set(static_cast<int>(it - basis_i.begin()), c, bnd(r, c));
            }
        return hi.decode(in_i);
    };

    // omega_k: H^{i,j}_{k+1}(X) -> H^{i,j}_k(AnB), through the pair sequence
    // of (X,A), the inverted excision component, and the pair boundary of
    // (B, AnB).
    auto omega = [&](int k) {
        FieldMatrix kappa_r = restrict_with(cross(tx, txa, k + 1), sx[k + 1], sxa[k + 1]);
        FieldMatrix exc_r = restrict_with(cross(tbi, txa, k + 1), sbi[k + 1], sxa[k + 1]);
        FieldMatrix bnd_r = restrict_with(pair_connecting_b(k), sbi[k + 1], si[k]);
        return bnd_r * inverse(exc_r) * kappa_r;
    };

    SequenceSlice row;
    row.names.push_back(h_name(kmax + 1, "X"));
    row.degrees.push_back(kmax + 1);
    row.dims.push_back(sx[kmax + 1].dim());
    row.maps.push_back(omega(kmax));
    for (int k = kmax; k >= 0; --k) {
        row.names.push_back(h_name(k, "AnB"));
        row.degrees.push_back(k);
        row.dims.push_back(si[k].dim());
        FieldMatrix alpha_r = restrict_with(cross(ti, ta, k), si[k], sa[k]);
        FieldMatrix beta_r = restrict_with(cross(ti, tb, k), si[k], sb[k]);
        row.maps.push_back(alpha_r.vcat(beta_r));

        row.names.push_back(h_name(k, "A") + "+" + h_name(k, "B"));
        row.degrees.push_back(k);
        row.dims.push_back(sa[k].dim() + sb[k].dim());
        FieldMatrix ia_r = restrict_with(cross(ta, tx, k), sa[k], sx[k]);
        FieldMatrix ib_r = restrict_with(cross(tb, tx, k), sb[k], sx[k]);
        row.maps.push_back(ia_r.hcat(ib_r.negated()));

        row.names.push_back(h_name(k, "X"));
        row.degrees.push_back(k);
        row.dims.push_back(sx[k].dim());
        if (k > 0)
            row.maps.push_back(omega(k - 1));
        else
            row.maps.push_back(FieldMatrix(p, 0, row.dims.back()));
    }
    row.names.push_back("0");
    row.degrees.push_back(-1);
    row.dims.push_back(0);

    DeriveResult result;
    result.derived = classify_slice(row);
    result.direct = MvAnalyzer(X, A, B, kmax, p, exec).persistent_row(i, j);

    result.agrees = result.derived.positions.size() == result.direct.positions.size();
    if (result.agrees) {
        for (std::size_t t = 0; t < result.derived.positions.size(); ++t) {
            const SeqPosition& d = result.derived.positions[t];
            const SeqPosition& m = result.direct.positions[t];
            if (d.name != m.name || d.dim != m.dim || d.rank_in != m.rank_in ||
                d.rank_out != m.rank_out || d.composite_zero != m.composite_zero ||
                d.im_subset_ker != m.im_subset_ker || d.boundary != m.boundary ||
                (!d.boundary && d.exact != m.exact)) {
                result.agrees = false;
                result.mismatch = "position " + std::to_string(t) + ": derived [" +
                                  describe_position(d) + "] vs direct [" + describe_position(m) +
                                  "]";
                break;
            }
        }
    } else {
        result.mismatch = "position count differs";
    }
    if (result.agrees && result.derived.verdict != result.direct.verdict) {
        result.agrees = false;
        result.mismatch = "verdict differs";
    }
    return result;
}

}  // namespace phex
