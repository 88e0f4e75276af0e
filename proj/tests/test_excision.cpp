#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "phex/excision.hpp"
#include "phex/oracle.hpp"

using namespace phex;

namespace {

SubcomplexSpec whole(const FilteredComplex& X) {
    std::set<Simplex> all;
    for (const auto& [s, lvl] : X.levels()) all.insert(s);
    return SubcomplexSpec(X, all);
}

const ExcisionReport::GroupCell& cell_at(const ExcisionReport::DegreeResult& deg, int i, int j) {
    for (const auto& cell : deg.group_table)
        if (cell.i == i && cell.j == j) return cell;
    throw std::runtime_error("missing table cell");
}

}  // namespace

TEST_CASE("verify_excision_step") {
    FilteredComplex X = test::e1();
    SubcomplexSpec W = whole(X);
    SUBCASE("A = B = X gives the identity") {
        for (int i = 0; i <= 2; ++i)
            for (int k = 0; k <= 2; ++k) CHECK(verify_excision_step(X, W, W, i, k, 2));
    }
    SUBCASE("E3 steps") {
        SubcomplexSpec A = test::load_sub("e3_a.sub", X);
        SubcomplexSpec B = test::load_sub("e3_b.sub", X);
        CHECK(verify_excision_step(X, A, B, 2, 1, 2));  // both sides dim 1
        CHECK(verify_excision_step(X, A, B, 1, 1, 2));  // both sides dim 0
        CHECK(verify_excision_step(X, A, B, 0, 0, 2));
    }
    SUBCASE("cover violated refuses") {
        SubcomplexSpec A(X, {Simplex{0}});
        SubcomplexSpec B(X, {Simplex{1}});
        CHECK_THROWS_AS(verify_excision_step(X, A, B, 0, 0, 2), HypothesisError);
    }
}

TEST_CASE("verify_persistent_excision on B = X") {
    FilteredComplex X = test::e1();
    SubcomplexSpec W = whole(X);
    SubcomplexSpec A = test::load_sub("e3_a.sub", X);
    // B = X: the pairs coincide, every component is the identity.
    ExcisionReport rep = verify_persistent_excision(X, A, W, 2, 2);
    CHECK(rep.all_hold());
    for (const auto& deg : rep.per_degree) {
        CHECK(deg.module_iso);
        CHECK(deg.dims_xa == deg.dims_bab);
    }
}

TEST_CASE("verify_persistent_excision on the E3 fixture") {
    FilteredComplex X = test::e1();
    SubcomplexSpec A = test::load_sub("e3_a.sub", X);
    SubcomplexSpec B = test::load_sub("e3_b.sub", X);
    ExcisionReport rep = verify_persistent_excision(X, A, B, 1, 2);
    CHECK(rep.all_hold());
    CHECK(rep.size_x == 6);
    CHECK(rep.size_a == 3);
    CHECK(rep.size_b == 5);
    CHECK(rep.size_ab == 2);

    const auto& deg1 = rep.per_degree[1];
    CHECK(deg1.module_iso);
    const auto& c22 = cell_at(deg1, 2, 2);
    CHECK(c22.beta_xa == 1);
    CHECK(c22.beta_bab == 1);
    CHECK(c22.equal);
    const auto& c02 = cell_at(deg1, 0, 2);
    CHECK(c02.beta_xa == 0);
    CHECK(c02.beta_bab == 0);
    CHECK(c02.equal);
    // dims match the relative module dims [0,0,1]
    CHECK(deg1.dims_xa == std::vector<int>{0, 0, 1});
    CHECK(deg1.dims_bab == std::vector<int>{0, 0, 1});
}

TEST_CASE("verify_persistent_excision refuses non-covers with witnesses") {
    FilteredComplex X = test::e1();
    SubcomplexSpec A(X, {Simplex{0}});
    SubcomplexSpec B(X, {Simplex{1}});
    try {
        verify_persistent_excision(X, A, B, 1, 2);
        FAIL("expected HypothesisError");
    } catch (const HypothesisError& e) {
        CHECK_FALSE(e.offending().empty());
    }
}

TEST_CASE("persistent excision holds on generated cover triples") {
    for (std::uint64_t seed = 2000; seed < 2040; ++seed) {
        Triple t = generate(InstanceParams{seed, 8, 3, 5, 0.6});
        for (std::uint32_t p : {2u, 3u}) {
            ExcisionReport rep = verify_persistent_excision(*t.X, t.A, t.B, 2, p, Exec::Serial);
            CHECK(rep.all_hold());
            // group table equals the oracle on both sides
            for (const auto& deg : rep.per_degree)
                for (const auto& cell : deg.group_table) {
                    CHECK(cell.beta_xa ==
                          oracle_betti(*t.X, &t.A, deg.k, cell.i, cell.j, p));
                }
        }
    }
}

TEST_CASE("degenerate covers: B empty (A = X) and A empty") {
    FilteredComplex X = test::e1();
    SubcomplexSpec W = whole(X);
    SubcomplexSpec empty(X, {});
    // (B, AnB) = (empty, empty): both pairs have zero homology everywhere.
    ExcisionReport rep = verify_persistent_excision(X, W, empty, 2, 2);
    CHECK(rep.all_hold());
    for (const auto& deg : rep.per_degree)
        for (int d : deg.dims_xa) CHECK(d == 0);
    // A empty: (X, empty) against (X, empty) via B = X.
    ExcisionReport rep2 = verify_persistent_excision(X, empty, W, 2, 2);
    CHECK(rep2.all_hold());
}

TEST_CASE("excise_compute") {
    FilteredComplex X = test::e1();
    SUBCASE("A empty, B = X reproduces the absolute barcode") {
        SubcomplexSpec empty(X, {});
        SubcomplexSpec W = whole(X);
        for (int k = 0; k <= 2; ++k) {
            ExciseComputation res = excise_compute(X, empty, W, k, 2);
            Barcode direct = barcode(reduce(X, nullptr, 2), k);
            CHECK(res.bc.bars == direct.bars);
            CHECK(res.simplices_direct == res.simplices_excised);
        }
    }
    SUBCASE("E3: degree-1 bar on 5 instead of 6 simplices") {
        SubcomplexSpec A = test::load_sub("e3_a.sub", X);
        SubcomplexSpec B = test::load_sub("e3_b.sub", X);
        ExciseComputation res = excise_compute(X, A, B, 1, 2);
        REQUIRE(res.bc.bars.size() == 1);
        CHECK(res.bc.bars[0] == Bar{2, Bar::kInf});
        CHECK(res.simplices_direct == 6);
        CHECK(res.simplices_excised == 5);
        Barcode direct = barcode(reduce(X, &A, 2), 1);
        CHECK(res.bc.bars == direct.bars);
    }
    SUBCASE("random triples: excised equals direct as multisets, sizes monotone") {
        for (std::uint64_t seed = 2100; seed < 2140; ++seed) {
            Triple t = generate(InstanceParams{seed, 9, 3, 5, 0.6});
            bool a_subset_b = true;
            for (const Simplex& s : t.A.members())
                if (!t.B.contains(s)) a_subset_b = false;
            for (int k = 0; k <= 2; ++k) {
                ExciseComputation res = excise_compute(*t.X, t.A, t.B, k, 2);
                Barcode direct = barcode(reduce(*t.X, &t.A, 2), k);
                CHECK(res.bc.bars == direct.bars);
                CHECK(res.simplices_excised <= res.simplices_direct);
                if (!a_subset_b) CHECK(res.simplices_excised < res.simplices_direct);
            }
        }
    }
}
