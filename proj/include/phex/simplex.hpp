#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace phex {

// An abstract simplex: a non-empty, strictly increasing list of vertex ids.
// Dimension is vertex count minus one. Ordering is lexicographic on the
// vertex list, which within a fixed dimension is the order used for all
// chain bases.
class Simplex {
public:
    explicit Simplex(std::vector<int> vertices) : verts_(std::move(vertices)) {
        if (verts_.empty()) throw std::invalid_argument("simplex: empty vertex list");
        for (std::size_t t = 0; t < verts_.size(); ++t) {
            if (verts_[t] < 0)
                throw std::invalid_argument("simplex: negative vertex id");
            if (t > 0 && verts_[t - 1] >= verts_[t])
                throw std::invalid_argument("simplex: vertices not strictly increasing");
        }
    }

    Simplex(std::initializer_list<int> vertices) : Simplex(std::vector<int>(vertices)) {}

    int dim() const { return static_cast<int>(verts_.size()) - 1; }
    const std::vector<int>& vertices() const { return verts_; }

    // Facet obtained by deleting the t-th vertex. Only valid for dim() >= 1.
    Simplex facet(int t) const {
        std::vector<int> v = verts_;
        v.erase(v.begin() + t);
        return Simplex(std::move(v));
    }

    bool operator==(const Simplex& other) const = default;
    auto operator<=>(const Simplex& other) const { return verts_ <=> other.verts_; }

    std::string str() const {
        std::string s = "{";
        for (std::size_t t = 0; t < verts_.size(); ++t) {
            if (t) s += ',';
            s += std::to_string(verts_[t]);
        }
        return s + "}";
    }

private:
    std::vector<int> verts_;
};

}  // namespace phex
