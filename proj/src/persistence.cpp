#include "phex/persistence.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace phex {

int Barcode::alive_at(int t) const {
    int count = 0;
    for (const Bar& b : bars)
        if (b.birth <= t && (b.infinite() || t < b.death)) ++count;
    return count;
}

std::vector<std::pair<Bar, int>> Barcode::aggregate() const {
    std::vector<std::pair<Bar, int>> out;
    for (const Bar& b : bars) {
        if (!out.empty() && out.back().first == b)
            ++out.back().second;
        else
            out.emplace_back(b, 1);
    }
    return out;
}

int betti_from_barcode(const Barcode& bc, int i, int j) {
    if (i > j) throw std::invalid_argument("betti_from_barcode requires i <= j");
    int count = 0;
    for (const Bar& b : bc.bars)
        if (b.birth <= i && (b.infinite() || b.death > j)) ++count;
    return count;
}

namespace {

std::uint32_t inv_mod_small(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, base = a % p;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(r);
}

// target += scale * source, sparse merge on ascending row indices.
void add_scaled(std::vector<std::pair<int, std::uint32_t>>& target,
                const std::vector<std::pair<int, std::uint32_t>>& source, std::uint32_t scale,
                std::uint32_t p) {
    std::vector<std::pair<int, std::uint32_t>> merged;
    merged.reserve(target.size() + source.size());
    std::size_t a = 0, b = 0;
    while (a < target.size() || b < source.size()) {
        if (b == source.size() || (a < target.size() && target[a].first < source[b].first)) {
            merged.push_back(target[a++]);
        } else if (a == target.size() || source[b].first < target[a].first) {
            std::uint32_t v =
                static_cast<std::uint32_t>(static_cast<std::uint64_t>(source[b].second) * scale % p);
            if (v) merged.emplace_back(source[b].first, v);
            ++b;
        } else {
            std::uint64_t v = target[a].second + static_cast<std::uint64_t>(source[b].second) * scale % p;
            std::uint32_t r = static_cast<std::uint32_t>(v % p);
            if (r) merged.emplace_back(target[a].first, r);
            ++a;
            ++b;
        }
    }
    target = std::move(merged);
}

}  // namespace

ReducedMatrix reduce(const FilteredComplex& X, const SubcomplexSpec* relative_to,
                     std::uint32_t p, ReduceStrategy strategy) {
    ReducedMatrix R;
    R.p_ = p;

    std::vector<const Simplex*> order;
    for (const auto& [s, lvl] : X.levels()) {
        if (relative_to && relative_to->contains(s)) continue;
        order.push_back(&s);
    }
    std::sort(order.begin(), order.end(), [&](const Simplex* a, const Simplex* b) {
        int la = X.level(*a), lb = X.level(*b);
        if (la != lb) return la < lb;
        if (a->dim() != b->dim()) return a->dim() < b->dim();
        return *a < *b;
    });

    std::map<Simplex, int> position;
    for (std::size_t c = 0; c < order.size(); ++c) position[*order[c]] = static_cast<int>(c);

    int max_dim = 0;
    R.cols_.reserve(order.size());
    for (std::size_t c = 0; c < order.size(); ++c) {
        R.cols_.emplace_back(*order[c]);
        ReducedMatrix::Column& col = R.cols_.back();
        col.level = X.level(col.simplex);
        col.dim = col.simplex.dim();
        max_dim = std::max(max_dim, col.dim);
        for (int t = 0; col.dim >= 1 && t <= col.dim; ++t) {
            Simplex f = col.simplex.facet(t);
            auto it = position.find(f);
            if (it == position.end()) continue;  // facet quotiented away
            col.entries.emplace_back(it->second, (t % 2 == 0) ? 1u : p - 1);
        }
        std::sort(col.entries.begin(), col.entries.end());
    }

    std::vector<int> pivot_owner(order.size(), -1);  // low row -> column index
    auto reduce_column = [&](int c) {
        ReducedMatrix::Column& col = R.cols_[c];
        while (!col.entries.empty()) {
            int lo = col.entries.back().first;
            int owner = pivot_owner[lo];
            if (owner < 0) break;
            const auto& pcol = R.cols_[owner].entries;
            std::uint32_t scale = static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(p - col.entries.back().second) *
                inv_mod_small(pcol.back().second, p) % p);
            add_scaled(col.entries, pcol, scale, p);
        }
        if (!col.entries.empty()) {
            int lo = col.entries.back().first;
            pivot_owner[lo] = c;
            col.paired_with = lo;
            R.cols_[lo].paired_with = c;
        }
    };

    if (strategy == ReduceStrategy::Standard) {
        for (std::size_t c = 0; c < order.size(); ++c) reduce_column(static_cast<int>(c));
    } else {
        // Columns of a pivot row reduce to zero, so once a pivot is claimed in
        // the pass above, the owning row's column is cleared outright.
        std::vector<char> cleared(order.size(), 0);
        for (int d = max_dim; d >= 0; --d)
            for (std::size_t c = 0; c < order.size(); ++c) {
                if (R.cols_[c].dim != d) continue;
                if (cleared[c]) {
                    R.cols_[c].entries.clear();
                    continue;
                }
                reduce_column(static_cast<int>(c));
                if (!R.cols_[c].entries.empty())
                    cleared[R.cols_[c].entries.back().first] = 1;
            }
    }
    return R;
}

Barcode barcode(const ReducedMatrix& R, int k) {
    Barcode bc;
    bc.degree = k;
    for (int c = 0; c < R.size(); ++c) {
        const auto& col = R.col(c);
        if (col.dim != k) continue;
        if (!col.is_cycle()) continue;  // this column kills something in degree k-1
        if (col.paired_with >= 0) {
            // Born when this simplex enters, killed by its pairing column.
            int death = R.col(col.paired_with).level;
            if (death != col.level) bc.bars.push_back({col.level, death});
        } else {
            bc.bars.push_back({col.level, Bar::kInf});
        }
    }
    std::sort(bc.bars.begin(), bc.bars.end(), [](const Bar& a, const Bar& b) {
        if (a.infinite() != b.infinite()) return !a.infinite();
        return std::tie(a.birth, a.death) < std::tie(b.birth, b.death);
    });
    return bc;
}

void write_barcode(std::ostream& out, const Barcode& bc) {
    out << "degree " << bc.degree << '\n';
    for (const auto& [bar, mult] : bc.aggregate()) {
        out << bar.birth << ' ';
        if (bar.infinite())
            out << "inf";
        else
            out << bar.death;
        out << ' ' << mult << '\n';
    }
}

}  // namespace phex
