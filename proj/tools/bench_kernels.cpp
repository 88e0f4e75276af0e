// Benchmark: serial reference vs OpenMP fan-out on the stage/query/seed
// loops, and direct vs excised relative reduction workloads.

#include <chrono>
#include <cstdio>
#include <string>

#include "phex/excision.hpp"
#include "phex/oracle.hpp"
#include "phex/persistence.hpp"

using namespace phex;

namespace {

double ms(const auto& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-34s %10.2f ms %10.2f ms %8.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    int seeds = argc > 1 ? std::stoi(argv[1]) : 300;

    std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        std::vector<Triple> triples;
        for (std::uint64_t s = 0; s < 24; ++s)
            triples.push_back(generate(InstanceParams{s, 10, 3, 5, 0.6}));

        auto modules = [&](Exec exec) {
            for (const Triple& t : triples)
                for (int k = 0; k <= 2; ++k) build_module(*t.X, k, &t.A, 2, exec);
        };
        row("module builds (24 triples, k<=2)", ms([&] { modules(Exec::Serial); }),
            ms([&] { modules(Exec::Parallel); }));

        auto excision = [&](Exec exec) {
            for (const Triple& t : triples) verify_persistent_excision(*t.X, t.A, t.B, 2, 2, exec);
        };
        row("excision verification", ms([&] { excision(Exec::Serial); }),
            ms([&] { excision(Exec::Parallel); }));
    }

    {
        InstanceParams base{0, 7, 2, 4, 0.55};
        auto sweep = [&](Exec exec) {
            search_nonexact(base, 0, seeds, SweepTarget::MayerVietoris, 1, 2, exec);
        };
        std::string name = "witness sweep (" + std::to_string(seeds) + " seeds)";
        row(name.c_str(), ms([&] { sweep(Exec::Serial); }), ms([&] { sweep(Exec::Parallel); }));
    }

    {
        // Direct (X,A) vs excised (B,AnB) relative reduction on a triple with
        // a large A-outside-B part; both pairs pre-materialized.
        Triple t = generate(InstanceParams{11, 10, 3, 5, 0.7});
        const FilteredComplex& X = *t.X;
        FilteredComplex bx = induced_filtration(t.B);
        SubcomplexSpec ab(bx, intersect(t.A, t.B).members());
        double direct = ms([&] {
            for (int r = 0; r < 500; ++r) reduce(X, &t.A, 2);
        });
        double excised = ms([&] {
            for (int r = 0; r < 500; ++r) reduce(bx, &ab, 2);
        });
        double twist = ms([&] {
            for (int r = 0; r < 500; ++r) reduce(X, &t.A, 2, ReduceStrategy::Twist);
        });
        std::printf("%-34s %10.2f ms %10.2f ms  (|X|=%zu vs |B|=%zu, twist %.2f ms)\n",
                    "relative reduction x500", direct, excised, X.size(), t.B.size(), twist);
    }
    return 0;
}
