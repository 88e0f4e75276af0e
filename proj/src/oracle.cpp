#include "phex/oracle.hpp"

#include <algorithm>
#include <random>

namespace phex {

namespace {

// The oracle builds its own boundary matrices straight from the simplex
// lists, independently of the engine's stage complexes.
std::vector<Simplex> oracle_basis(const FilteredComplex& X, const SubcomplexSpec* rel, int i,
                                  int k) {
    std::vector<Simplex> out;
    for (const auto& [s, lvl] : X.levels())
        if (lvl <= i && s.dim() == k && !(rel && rel->contains(s))) out.push_back(s);
    return out;
}

FieldMatrix oracle_boundary(const std::vector<Simplex>& rows, const std::vector<Simplex>& cols,
                            std::uint32_t p) {
    FieldMatrix d(p, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (int t = 0; cols[c].dim() >= 1 && t <= cols[c].dim(); ++t) {
            Simplex f = cols[c].facet(t);
            auto it = std::lower_bound(rows.begin(), rows.end(), f);
            if (it == rows.end() || *it != f) continue;  // quotiented away
            d.set(static_cast<int>(it - rows.begin()), static_cast<int>(c),
                  (t % 2 == 0) ? 1u : p - 1);
        }
    return d;
}

}  // namespace

int oracle_betti(const FilteredComplex& X, const SubcomplexSpec* relative_to, int k, int i,
                 int j, std::uint32_t p) {
    if (i > j) throw std::invalid_argument("oracle_betti requires i <= j");
    if (k < 0) return 0;

    std::vector<Simplex> rows_i = oracle_basis(X, relative_to, i, k);
    std::vector<Simplex> sub_i = k > 0 ? oracle_basis(X, relative_to, i, k - 1)
                                       : std::vector<Simplex>{};
    std::vector<Simplex> rows_j = oracle_basis(X, relative_to, j, k);
    std::vector<Simplex> cols_j = oracle_basis(X, relative_to, j, k + 1);

    // Cycles of stage i, as columns in the stage-j chain coordinates.
    FieldMatrix di = oracle_boundary(sub_i, rows_i, p);
    FieldMatrix zi = image_kernel(di).second.basis;  // |rows_i| x z
    FieldMatrix z_in_j(p, static_cast<int>(rows_j.size()), zi.cols());
    for (std::size_t r = 0; r < rows_i.size(); ++r) {
        auto it = std::lower_bound(rows_j.begin(), rows_j.end(), rows_i[r]);
        if (it == rows_j.end() || *it != rows_i[r])
            throw std::logic_error("stage i simplex missing from stage j");
        int rj = static_cast<int>(it - rows_j.begin());
        for (int c = 0; c < zi.cols(); ++c)
            if (zi(static_cast<int>(r), c)) z_in_j.set(rj, c, zi(static_cast<int>(r), c));
    }

    FieldMatrix dj = oracle_boundary(rows_j, cols_j, p);
    return rank(z_in_j.hcat(dj)) - rank(dj);
}

// --- generation ---------------------------------------------------------

namespace {

void close_faces(std::set<Simplex>& simplices) {
    std::vector<Simplex> queue(simplices.begin(), simplices.end());
    while (!queue.empty()) {
        Simplex s = queue.back();
        queue.pop_back();
        for (int t = 0; s.dim() >= 1 && t <= s.dim(); ++t) {
            Simplex f = s.facet(t);
            if (simplices.insert(f).second) queue.push_back(f);
        }
    }
}

std::vector<std::vector<int>> subsets_of_size(int n, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

Triple generate(const InstanceParams& params) {
    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    const int nv = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(params.max_vertices));

    // Density falls with dimension so desk-scale instances stay sparse.
    std::set<Simplex> chosen;
    for (int v = 0; v < nv; ++v)
        if (coin(rng) < 0.9) chosen.insert(Simplex({v}));
    for (int d = 1; d <= params.max_dim; ++d) {
        double density = 0.55 / (1 << (d - 1));
        for (const auto& verts : subsets_of_size(nv, d + 1))
            if (coin(rng) < density) chosen.insert(Simplex(verts));
    }
    if (chosen.empty()) chosen.insert(Simplex({0}));
    close_faces(chosen);

    // Monotone levels: raw draw per simplex, lifted to the facet maximum,
    // assigned in dimension-ascending passes.
    std::map<Simplex, int> level;
    std::vector<Simplex> by_dim(chosen.begin(), chosen.end());
    std::stable_sort(by_dim.begin(), by_dim.end(),
                     [](const Simplex& a, const Simplex& b) { return a.dim() < b.dim(); });
    for (const Simplex& s : by_dim) {
        int lvl = static_cast<int>(rng() % static_cast<std::uint64_t>(params.n_levels));
        for (int t = 0; s.dim() >= 1 && t <= s.dim(); ++t)
            lvl = std::max(lvl, level.at(s.facet(t)));
        level[s] = lvl;
    }

    // Membership draws in deterministic (lex) order; forced into at least
    // one side, then face-closed.
    std::set<Simplex> a_members, b_members;
    for (const Simplex& s : chosen) {
        bool in_a = coin(rng) < params.cover_bias;
        bool in_b = coin(rng) < params.cover_bias;
        if (!in_a && !in_b) {
            if (rng() & 1)
                in_a = true;
            else
                in_b = true;
        }
        if (in_a) a_members.insert(s);
        if (in_b) b_members.insert(s);
    }
    close_faces(a_members);
    close_faces(b_members);

    std::vector<std::pair<Simplex, int>> pairs(level.begin(), level.end());
    auto X = std::make_unique<FilteredComplex>(FilteredComplex::from_pairs(pairs));
    SubcomplexSpec A(*X, std::move(a_members));
    SubcomplexSpec B(*X, std::move(b_members));
    return Triple{std::move(X), std::move(A), std::move(B)};
}

// --- witness search -------------------------------------------------------

SweepResult search_nonexact(const InstanceParams& base, std::uint64_t first_seed, int count,
                            SweepTarget target, int kmax, std::uint32_t p, Exec exec) {
    struct PerSeed {
        bool found = false;
        bool violated = false;
        Witness witness;
    };
    std::vector<PerSeed> results(count);

    par_for(exec, count, [&](int t) {
        InstanceParams params = base;
        params.seed = first_seed + static_cast<std::uint64_t>(t);
        Triple triple = generate(params);
        const int n = triple.X->max_level();
        PerSeed& slot = results[t];

        auto scan = [&](auto&& persistent_row) {
            for (int i = 0; i <= n && !slot.found; ++i)
                for (int j = i + 1; j <= n && !slot.found; ++j) {
                    SequenceReport rep = persistent_row(i, j);
                    if (rep.verdict == SeqVerdict::NotChainComplex) slot.violated = true;
                    if (rep.verdict != SeqVerdict::ChainComplexOnly) continue;
                    for (const SeqPosition& pos : rep.positions)
                        if (!pos.boundary && !pos.exact) {
                            slot.found = true;
                            slot.witness = Witness{params, i, j, pos.degree, pos.name};
                            break;
                        }
                }
        };
        if (target == SweepTarget::MayerVietoris) {
            MvAnalyzer mv(*triple.X, triple.A, triple.B, kmax, p, Exec::Serial);
            scan([&](int i, int j) { return mv.persistent_row(i, j); });
        } else {
            PairAnalyzer pa(*triple.X, triple.A, kmax, p, Exec::Serial);
            scan([&](int i, int j) { return pa.persistent_row(i, j); });
        }
    });

    SweepResult out;
    out.attempted = count;
    for (const PerSeed& slot : results) {
        if (slot.violated) out.chain_complex_violated = true;
        if (slot.found) {
            ++out.witnesses;
            if (!out.first) out.first = slot.witness;
        }
    }
    return out;
}

}  // namespace phex
