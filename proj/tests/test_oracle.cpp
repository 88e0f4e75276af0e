#include <doctest.h>

#include "helpers.hpp"
#include "phex/oracle.hpp"

using namespace phex;

TEST_CASE("oracle_betti on E1") {
    FilteredComplex X = test::e1();
    // One independent 1-cycle once the triangle closes, no 2-boundaries.
    CHECK(oracle_betti(X, nullptr, 1, 2, 2, 2) == 1);
    CHECK(oracle_betti(X, nullptr, 0, 0, 1, 2) == 1);
    CHECK(oracle_betti(X, nullptr, 0, 0, 0, 2) == 3);
    CHECK(oracle_betti(X, nullptr, 0, 1, 1, 2) == 1);
    CHECK(oracle_betti(X, nullptr, 1, 1, 2, 2) == 0);
    CHECK(oracle_betti(X, nullptr, 3, 2, 2, 2) == 0);  // above the complex dimension
    CHECK_THROWS_AS(oracle_betti(X, nullptr, 0, 2, 1, 2), std::invalid_argument);
}

TEST_CASE("oracle_betti relative on E3") {
    FilteredComplex X = test::e1();
    SubcomplexSpec A = test::load_sub("e3_a.sub", X);
    CHECK(oracle_betti(X, &A, 1, 2, 2, 2) == 1);
    CHECK(oracle_betti(X, &A, 1, 1, 2, 2) == 0);
    CHECK(oracle_betti(X, &A, 1, 0, 0, 2) == 0);
    CHECK(oracle_betti(X, &A, 0, 0, 0, 2) == 1);  // vertex c alone in the quotient
    CHECK(oracle_betti(X, &A, 0, 0, 1, 2) == 0);  // killed once bc arrives
}

TEST_CASE("oracle_betti across fields") {
    FilteredComplex X = test::e1();
    for (std::uint32_t p : {2u, 3u, 5u}) {
        CHECK(oracle_betti(X, nullptr, 1, 2, 2, p) == 1);
        CHECK(oracle_betti(X, nullptr, 0, 0, 2, p) == 1);
    }
}

TEST_CASE("generate: single-vertex degenerate instance") {
    Triple t = generate(InstanceParams{3, 1, 3, 5, 0.5});
    CHECK(t.X->size() == 1);
    CHECK(check_cover(*t.X, t.A, t.B).is_cover);
}

TEST_CASE("generate: deterministic in the seed, golden seed-42 snapshot") {
    InstanceParams params{42, 10, 3, 5, 0.6};
    Triple a = generate(params);
    Triple b = generate(params);
    std::string snap_a = to_text(*a.X) + "A:\n" + to_text(a.A, "X") + "B:\n" + to_text(a.B, "X");
    std::string snap_b = to_text(*b.X) + "A:\n" + to_text(b.A, "X") + "B:\n" + to_text(b.B, "X");
    CHECK(snap_a == snap_b);

    std::string golden = test::slurp(test::fixture_path("golden_seed42.txt"));
    CHECK(snap_a == golden);
}

TEST_CASE("generate: 1000 seeds yield valid cover triples") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        // Construction validates face closure and monotonicity; cover checked
        // explicitly.
        Triple t = generate(InstanceParams{seed, 10, 3, 5, 0.6});
        REQUIRE(check_cover(*t.X, t.A, t.B).is_cover);
    }
}

TEST_CASE("search_nonexact: degenerate A=B=X sweep finds nothing") {
    // cover_bias 1 forces A = B = X; those rows are exact everywhere.
    SweepResult r = search_nonexact(InstanceParams{0, 5, 2, 3, 1.0}, 0, 25,
                                    SweepTarget::MayerVietoris, 1, 2, Exec::Serial);
    CHECK(r.attempted == 25);
    CHECK(r.witnesses == 0);
    CHECK_FALSE(r.first.has_value());
    CHECK_FALSE(r.chain_complex_violated);
}
