#include "phex/complex.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace phex {

namespace {

// All facets of s (dimension dim(s)-1); empty for vertices.
std::vector<Simplex> facets(const Simplex& s) {
    std::vector<Simplex> out;
    if (s.dim() == 0) return out;
    for (int t = 0; t <= s.dim(); ++t) out.push_back(s.facet(t));
    return out;
}

void validate_complex(const std::map<Simplex, int>& levels) {
    for (const auto& [s, lvl] : levels) {
        if (lvl < 0) throw ValidationError("negative level for " + s.str());
        for (const Simplex& f : facets(s)) {
            auto it = levels.find(f);
            if (it == levels.end())
                throw ValidationError("missing face " + f.str() + " of " + s.str());
            if (it->second > lvl)
                throw ValidationError("monotonicity violated: level(" + f.str() + ")=" +
                                      std::to_string(it->second) + " > level(" + s.str() +
                                      ")=" + std::to_string(lvl));
        }
    }
}

}  // namespace

FilteredComplex FilteredComplex::from_pairs(const std::vector<std::pair<Simplex, int>>& pairs,
                                            std::optional<int> n) {
    FilteredComplex X;
    for (const auto& [s, lvl] : pairs) {
        auto [it, inserted] = X.levels_.emplace(s, lvl);
        if (!inserted) throw ValidationError("duplicate simplex " + s.str());
    }
    validate_complex(X.levels_);
    int max_present = 0;
    for (const auto& [s, lvl] : X.levels_) max_present = std::max(max_present, lvl);
    X.n_ = n.value_or(max_present);
    if (X.n_ < max_present)
        throw ValidationError("tower length n smaller than a simplex level");
    return X;
}

int FilteredComplex::level(const Simplex& s) const {
    auto it = levels_.find(s);
    if (it == levels_.end()) throw ValidationError("simplex " + s.str() + " not in complex");
    return it->second;
}

std::vector<Simplex> FilteredComplex::stage(int i) const {
    std::vector<Simplex> out;
    for (const auto& [s, lvl] : levels_)
        if (lvl <= i) out.push_back(s);
    return out;
}

std::vector<Simplex> FilteredComplex::stage_basis(int i, int k) const {
    std::vector<Simplex> out;
    for (const auto& [s, lvl] : levels_)
        if (lvl <= i && s.dim() == k) out.push_back(s);
    return out;
}

int FilteredComplex::dimension() const {
    int d = -1;
    for (const auto& [s, lvl] : levels_) d = std::max(d, s.dim());
    return d;
}

SubcomplexSpec::SubcomplexSpec(const FilteredComplex& parent, std::set<Simplex> members)
    : parent_(&parent), members_(std::move(members)) {
    for (const Simplex& s : members_) {
        if (!parent_->contains(s))
            throw ValidationError("subcomplex member " + s.str() + " not in parent");
        for (int t = 0; s.dim() >= 1 && t <= s.dim(); ++t)
            if (!members_.count(s.facet(t)))
                throw ValidationError("subcomplex not face-closed: missing " + s.facet(t).str() +
                                      " of " + s.str());
    }
}

// --- parsing ----------------------------------------------------------------

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::vector<long long> parse_ints(const std::string& line, int lineno) {
    std::istringstream ss(line);
    std::vector<long long> vals;
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        try {
            std::size_t pos = 0;
            long long v = std::stoll(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            vals.push_back(v);
        } catch (const std::exception&) {
            throw ParseError(lineno, "not an integer: '" + tok + "'");
        }
    }
    return vals;
}

Simplex parse_vertices(const std::vector<long long>& vals, std::size_t first, int lineno) {
    std::vector<int> verts;
    for (std::size_t t = first; t < vals.size(); ++t) {
        if (vals[t] < 0) throw ParseError(lineno, "negative vertex id");
        verts.push_back(static_cast<int>(vals[t]));
    }
    try {
        return Simplex(std::move(verts));
    } catch (const std::invalid_argument& e) {
        throw ParseError(lineno, e.what());
    }
}

}  // namespace

FilteredComplex parse_complex(std::istream& in) {
    std::vector<std::pair<Simplex, int>> pairs;
    std::string line;
    int lineno = 0;
    std::map<Simplex, int> seen_at;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        std::vector<long long> vals = parse_ints(line, lineno);
        if (vals.size() < 2) throw ParseError(lineno, "expected '<level> <v0> [<v1> ...]'");
        if (vals[0] < 0) throw ParseError(lineno, "negative level");
        Simplex s = parse_vertices(vals, 1, lineno);
        if (seen_at.count(s))
            throw ParseError(lineno, "duplicate simplex " + s.str() + " (first at line " +
                                         std::to_string(seen_at[s]) + ")");
        seen_at[s] = lineno;
        pairs.emplace_back(std::move(s), static_cast<int>(vals[0]));
    }
    try {
        return FilteredComplex::from_pairs(pairs);
    } catch (const ValidationError& e) {
        // Re-attribute to the offending line where we can: the message names
        // the simplex, so find it.
        for (const auto& [s, ln] : seen_at)
            if (std::string(e.what()).find(s.str()) != std::string::npos)
                throw ParseError(ln, e.what());
        throw;
    }
}

FilteredComplex parse_complex_text(const std::string& text) {
    std::istringstream ss(text);
    return parse_complex(ss);
}

SubcomplexSpec parse_subcomplex(std::istream& in, const FilteredComplex& parent,
                                std::string* parent_path) {
    std::set<Simplex> members;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank_or_comment(line)) continue;
        if (!have_header) {
            auto pos = line.find("parent:");
            if (pos == std::string::npos)
                throw ParseError(lineno, "expected header 'parent: <path>'");
            std::string path = line.substr(pos + 7);
            auto b = path.find_first_not_of(" \t");
            auto e = path.find_last_not_of(" \t\r");
            if (parent_path)
                *parent_path = (b == std::string::npos) ? "" : path.substr(b, e - b + 1);
            have_header = true;
            continue;
        }
        std::vector<long long> vals = parse_ints(line, lineno);
        if (vals.empty()) continue;
        Simplex s = parse_vertices(vals, 0, lineno);
        if (!parent.contains(s))
            throw ParseError(lineno, "simplex " + s.str() + " not in parent complex");
        members.insert(std::move(s));
    }
    if (!have_header) throw ParseError(lineno + 1, "missing 'parent: <path>' header");
    return SubcomplexSpec(parent, std::move(members));
}

SubcomplexSpec parse_subcomplex_text(const std::string& text, const FilteredComplex& parent,
                                     std::string* parent_path) {
    std::istringstream ss(text);
    return parse_subcomplex(ss, parent, parent_path);
}

std::string to_text(const FilteredComplex& X) {
    // One simplex per line, sorted by (level, dim, lex) for reproducibility.
    std::vector<std::pair<Simplex, int>> rows(X.levels().begin(), X.levels().end());
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::tie(a.second, a.first) < std::tie(b.second, b.first);
    });
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first.dim() < b.first.dim();
    });
    std::ostringstream out;
    for (const auto& [s, lvl] : rows) {
        out << lvl;
        for (int v : s.vertices()) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

std::string to_text(const SubcomplexSpec& A, const std::string& parent_path) {
    std::ostringstream out;
    out << "parent: " << parent_path << '\n';
    for (const Simplex& s : A.members()) {
        bool first = true;
        for (int v : s.vertices()) {
            if (!first) out << ' ';
            out << v;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

// --- constructions ----------------------------------------------------------

FilteredComplex sublevel_filtration(const std::vector<Simplex>& complex_simplices,
                                    const std::map<int, double>& f) {
    std::vector<double> distinct;
    for (const Simplex& s : complex_simplices)
        for (int v : s.vertices()) {
            auto it = f.find(v);
            if (it == f.end())
                throw ValidationError("missing vertex value for vertex " + std::to_string(v));
            distinct.push_back(it->second);
        }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<std::pair<Simplex, int>> pairs;
    for (const Simplex& s : complex_simplices) {
        double mx = f.at(s.vertices()[0]);
        for (int v : s.vertices()) mx = std::max(mx, f.at(v));
        int rank = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), mx) -
                                    distinct.begin());
        pairs.emplace_back(s, rank);
    }
    return FilteredComplex::from_pairs(pairs);
}

FilteredComplex induced_filtration(const SubcomplexSpec& A) {
    std::vector<std::pair<Simplex, int>> pairs;
    for (const Simplex& s : A.members()) pairs.emplace_back(s, A.level(s));
    return FilteredComplex::from_pairs(pairs, A.parent().max_level());
}

SubcomplexSpec intersect(const SubcomplexSpec& A, const SubcomplexSpec& B) {
    if (&A.parent() != &B.parent())
        throw ValidationError("intersect: subcomplexes have different parents");
    std::set<Simplex> members;
    for (const Simplex& s : A.members())
        if (B.contains(s)) members.insert(s);
    return SubcomplexSpec(A.parent(), std::move(members));
}

CoverReport check_cover(const FilteredComplex& X, const SubcomplexSpec& A,
                        const SubcomplexSpec& B) {
    if (&A.parent() != &X || &B.parent() != &X)
        throw ValidationError("check_cover: subcomplexes must have parent X");
    CoverReport report;
    for (const auto& [s, lvl] : X.levels())
        if (!A.contains(s) && !B.contains(s)) report.offending.push_back(s);
    report.is_cover = report.offending.empty();
    report.per_level_cover.assign(X.max_level() + 1, true);
    for (const Simplex& s : report.offending)
        for (int i = X.level(s); i <= X.max_level(); ++i) report.per_level_cover[i] = false;
    return report;
}

}  // namespace phex
