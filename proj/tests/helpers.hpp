#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "phex/complex.hpp"

namespace phex::test {

inline std::string fixture_path(const std::string& name) {
    return std::string(PHEX_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline FilteredComplex load_complex(const std::string& name) {
    std::ifstream in(fixture_path(name));
    if (!in) throw std::runtime_error("cannot open fixture " + name);
    return parse_complex(in);
}

inline SubcomplexSpec load_sub(const std::string& name, const FilteredComplex& parent) {
    std::ifstream in(fixture_path(name));
    if (!in) throw std::runtime_error("cannot open fixture " + name);
    return parse_subcomplex(in, parent);
}

// The E1 fixture: triangle boundary with the closing edge at level 2.
inline FilteredComplex e1() { return load_complex("e1.cplx"); }

}  // namespace phex::test
