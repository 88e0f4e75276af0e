#include "phex/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "phex/excision.hpp"
#include "phex/oracle.hpp"
#include "phex/persistence.hpp"

namespace phex::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::uint32_t field = 2;
    int max_dim = 3;
    std::string complex_path, sub_a_path, sub_b_path;
    int i = -1, j = -1;  // -1: every pair i <= j
    std::uint64_t seed = 0;
    int sweep = 0;
    std::string format = "text";
    std::string reduction = "standard";
    std::string out_prefix;
    std::string target = "mv";
    // generator shape
    int gen_vertices = 10, gen_dim = 3, gen_levels = 5;
    double gen_bias = 0.6;

    bool structured() const { return format == "structured"; }
    ReduceStrategy strategy() const {
        return reduction == "twist" ? ReduceStrategy::Twist : ReduceStrategy::Standard;
    }
};

FilteredComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open complex file " + path);
    return parse_complex(in);
}

SubcomplexSpec load_sub(const std::string& path, const FilteredComplex& parent) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open subcomplex file " + path);
    return parse_subcomplex(in, parent);
}

json bar_to_json(const Bar& bar, int mult) {
    json j;
    j["birth"] = bar.birth;
    if (bar.infinite())
        j["death"] = nullptr;
    else
        j["death"] = bar.death;
    j["multiplicity"] = mult;
    return j;
}

json barcode_to_json(const Barcode& bc) {
    json j;
    j["degree"] = bc.degree;
    j["bars"] = json::array();
    for (const auto& [bar, mult] : bc.aggregate()) j["bars"].push_back(bar_to_json(bar, mult));
    return j;
}

json report_to_json(const SequenceReport& rep) {
    json j;
    j["verdict"] = verdict_name(rep.verdict);
    j["positions"] = json::array();
    for (const SeqPosition& p : rep.positions) {
        json q;
        q["name"] = p.name;
        q["degree"] = p.degree;
        q["dim"] = p.dim;
        q["rank_in"] = p.rank_in;
        q["rank_out"] = p.rank_out;
        q["composite_zero"] = p.composite_zero;
        q["im_subset_ker"] = p.im_subset_ker;
        if (p.boundary)
            q["exact"] = "boundary";
        else
            q["exact"] = p.exact;
        j["positions"].push_back(q);
    }
    return j;
}

json excision_to_json(const ExcisionReport& rep) {
    json j;
    j["cover"] = rep.cover.is_cover;
    j["sizes"] = {{"X", rep.size_x}, {"A", rep.size_a}, {"B", rep.size_b}, {"AnB", rep.size_ab}};
    j["degrees"] = json::array();
    for (const auto& deg : rep.per_degree) {
        json d;
        d["k"] = deg.k;
        d["module_iso"] = deg.module_iso;
        d["dims_XA"] = deg.dims_xa;
        d["dims_BAnB"] = deg.dims_bab;
        d["component_ranks"] = deg.component_ranks;
        d["group_table"] = json::array();
        for (const auto& cell : deg.group_table)
            d["group_table"].push_back({{"i", cell.i},
                                        {"j", cell.j},
                                        {"beta_XA", cell.beta_xa},
                                        {"beta_BAnB", cell.beta_bab},
                                        {"equal", cell.equal}});
        j["degrees"].push_back(d);
    }
    return j;
}

void print_excision_text(std::ostream& out, const ExcisionReport& rep) {
    out << "cover: " << (rep.cover.is_cover ? "yes" : "no") << '\n';
    out << "sizes: X=" << rep.size_x << " A=" << rep.size_a << " B=" << rep.size_b
        << " AnB=" << rep.size_ab << '\n';
    for (const auto& deg : rep.per_degree) {
        out << "degree " << deg.k << ": module_iso=" << (deg.module_iso ? "yes" : "no")
            << " dims_XA=[";
        for (std::size_t t = 0; t < deg.dims_xa.size(); ++t)
            out << (t ? "," : "") << deg.dims_xa[t];
        out << "] dims_BAnB=[";
        for (std::size_t t = 0; t < deg.dims_bab.size(); ++t)
            out << (t ? "," : "") << deg.dims_bab[t];
        out << "]\n";
        for (const auto& cell : deg.group_table)
            out << "  beta[" << cell.i << "," << cell.j << "]: XA=" << cell.beta_xa
                << " BAnB=" << cell.beta_bab << " equal=" << (cell.equal ? "yes" : "no") << '\n';
    }
}

std::vector<std::pair<int, int>> level_pairs(const RunConfig& cfg, int n) {
    std::vector<std::pair<int, int>> pairs;
    if (cfg.i >= 0 || cfg.j >= 0) {
        int i = cfg.i >= 0 ? cfg.i : 0;
        int j = cfg.j >= 0 ? cfg.j : n;
        if (i > j || j > n) throw ValidationError("invalid --i/--j for tower of length " +
                                                  std::to_string(n + 1));
        pairs.emplace_back(i, j);
    } else {
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
}

int cmd_compute(const RunConfig& cfg, std::ostream& out) {
    FilteredComplex X = load_complex(cfg.complex_path);
    std::optional<SubcomplexSpec> A;
    if (!cfg.sub_a_path.empty()) A = load_sub(cfg.sub_a_path, X);
    ReducedMatrix R = reduce(X, A ? &*A : nullptr, cfg.field, cfg.strategy());

    if (cfg.structured()) {
        json j;
        j["field"] = cfg.field;
        j["relative"] = A.has_value();
        j["degrees"] = json::array();
        for (int k = 0; k <= cfg.max_dim; ++k) j["degrees"].push_back(barcode_to_json(barcode(R, k)));
        out << j.dump(2) << '\n';
    } else {
        for (int k = 0; k <= cfg.max_dim; ++k) write_barcode(out, barcode(R, k));
    }
    return kOk;
}

int cmd_verify(const std::string& kind, const RunConfig& cfg, std::ostream& out) {
    FilteredComplex X = load_complex(cfg.complex_path);
    SubcomplexSpec A = load_sub(cfg.sub_a_path, X);
    std::optional<SubcomplexSpec> B;
    if (!cfg.sub_b_path.empty()) B = load_sub(cfg.sub_b_path, X);
    auto need_b = [&]() -> SubcomplexSpec& {
        if (!B) throw ValidationError("--sub-b is required for verify " + kind);
        return *B;
    };
    const int n = X.max_level();
    const int kmax = cfg.max_dim;
    json doc;
    doc["command"] = "verify " + kind;
    bool holds = true;

    if (kind == "excision") {
        ExcisionReport rep = verify_persistent_excision(X, A, need_b(), kmax, cfg.field);
        holds = rep.all_hold();
        if (cfg.structured()) {
            doc["report"] = excision_to_json(rep);
        } else {
            print_excision_text(out, rep);
        }
    } else if (kind == "mv" || kind == "pair") {
        std::optional<MvAnalyzer> mv;
        std::optional<PairAnalyzer> pa;
        if (kind == "mv")
            mv.emplace(X, A, need_b(), kmax, cfg.field);
        else
            pa.emplace(X, A, kmax, cfg.field);
        json rows = json::array();
        for (auto [i, j] : level_pairs(cfg, n)) {
            SequenceReport rep = mv ? mv->persistent_row(i, j) : pa->persistent_row(i, j);
            holds = holds && rep.verdict != SeqVerdict::NotChainComplex;
            if (cfg.structured()) {
                json r = report_to_json(rep);
                r["i"] = i;
                r["j"] = j;
                rows.push_back(r);
            } else {
                out << "# " << kind << " persistent i=" << i << " j=" << j << '\n'
                    << to_text(rep);
            }
        }
        doc["rows"] = rows;
    } else if (kind == "modules") {
        SequenceReport pair_rep = module_sequence(SeqKind::Pair, X, A, nullptr, kmax, cfg.field);
        holds = pair_rep.verdict == SeqVerdict::Exact;
        if (cfg.structured())
            doc["pair"] = report_to_json(pair_rep);
        else
            out << "# pair module sequence\n" << to_text(pair_rep);
        if (B) {
            SequenceReport mv_rep =
                module_sequence(SeqKind::MayerVietoris, X, A, &*B, kmax, cfg.field);
            holds = holds && mv_rep.verdict == SeqVerdict::Exact;
            if (cfg.structured())
                doc["mv"] = report_to_json(mv_rep);
            else
                out << "# mv module sequence\n" << to_text(mv_rep);
        }
    } else if (kind == "derive") {
        json rows = json::array();
        for (auto [i, j] : level_pairs(cfg, n)) {
            DeriveResult res = derive_mv_from_excision(X, A, need_b(), i, j, kmax, cfg.field);
            holds = holds && res.agrees;
            if (cfg.structured()) {
                json r;
                r["i"] = i;
                r["j"] = j;
                r["agrees"] = res.agrees;
                r["derived"] = report_to_json(res.derived);
                if (!res.agrees) r["mismatch"] = res.mismatch;
                rows.push_back(r);
            } else {
                out << "# derived mv i=" << i << " j=" << j
                    << (res.agrees ? " agrees" : " MISMATCH: " + res.mismatch) << '\n'
                    << to_text(res.derived);
            }
        }
        doc["rows"] = rows;
    } else {
        throw ValidationError("unknown verify kind '" + kind + "'");
    }

    if (cfg.structured()) {
        doc["holds"] = holds;
        out << doc.dump(2) << '\n';
    } else {
        out << "claims " << (holds ? "hold" : "FALSIFIED") << '\n';
    }
    return holds ? kOk : kClaimFalsified;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
    FilteredComplex X = load_complex(cfg.complex_path);
    SubcomplexSpec A = load_sub(cfg.sub_a_path, X);
    if (cfg.sub_b_path.empty()) throw ValidationError("--sub-b is required for bench");
    SubcomplexSpec B = load_sub(cfg.sub_b_path, X);

    auto time_ms = [](auto&& fn) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(t1 - t0).count();
    };

    // Direct relative reduction on (X, A) vs the excised pair (B, AnB);
    // equality of the outputs is asserted before any timing is reported.
    ReducedMatrix direct_r = reduce(X, &A, cfg.field);
    ExciseComputation excised = excise_compute(X, A, B, 0, cfg.field);
    for (int k = 0; k <= cfg.max_dim; ++k) {
        Barcode d = barcode(direct_r, k);
        Barcode ex = k == 0 ? excised.bc : excise_compute(X, A, B, k, cfg.field).bc;
        if (!(d.bars == ex.bars)) {
            out << "barcode mismatch in degree " << k << " - excision claim falsified\n";
            return kClaimFalsified;
        }
    }

    double t_direct = time_ms([&] { reduce(X, &A, cfg.field); });
    double t_excised = time_ms([&] {
        FilteredComplex bx = induced_filtration(B);
        SubcomplexSpec ab(bx, intersect(A, B).members());
        reduce(bx, &ab, cfg.field);
    });
    double t_twist = time_ms([&] { reduce(X, &A, cfg.field, ReduceStrategy::Twist); });
    out << "workload simplices: direct(X,A)=" << excised.simplices_direct
        << " excised(B,AnB)=" << excised.simplices_excised << '\n';
    out << "reduction ms: direct=" << t_direct << " excised=" << t_excised
        << " direct+twist=" << t_twist << '\n';

    // Module build: serial reference vs the OpenMP fan-out.
    double t_serial = time_ms([&] {
        for (int k = 0; k <= cfg.max_dim; ++k) build_module(X, k, &A, cfg.field, Exec::Serial);
    });
    double t_parallel = time_ms([&] {
        for (int k = 0; k <= cfg.max_dim; ++k) build_module(X, k, &A, cfg.field, Exec::Parallel);
    });
    out << "module build ms: serial=" << t_serial << " parallel=" << t_parallel << '\n';
    return kOk;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
    InstanceParams params{cfg.seed, cfg.gen_vertices, cfg.gen_dim, cfg.gen_levels, cfg.gen_bias};
    Triple t = generate(params);
    std::string parent_name =
        cfg.out_prefix.empty() ? "complex" : cfg.out_prefix + ".cplx";
    std::string cx = "# generated seed=" + std::to_string(cfg.seed) + "\n" + to_text(*t.X);
    std::string sa = to_text(t.A, parent_name);
    std::string sb = to_text(t.B, parent_name);
    if (cfg.out_prefix.empty()) {
        out << "# complex\n" << cx << "# subcomplex A\n" << sa << "# subcomplex B\n" << sb;
    } else {
        std::ofstream(cfg.out_prefix + ".cplx") << cx;
        std::ofstream(cfg.out_prefix + "_a.sub") << sa;
        std::ofstream(cfg.out_prefix + "_b.sub") << sb;
        out << "wrote " << cfg.out_prefix << ".cplx, " << cfg.out_prefix << "_a.sub, "
            << cfg.out_prefix << "_b.sub\n";
    }
    return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    InstanceParams base{0, cfg.gen_vertices, cfg.gen_dim, cfg.gen_levels, cfg.gen_bias};
    SweepTarget target =
        cfg.target == "pair" ? SweepTarget::Pair : SweepTarget::MayerVietoris;
    if (cfg.target != "pair" && cfg.target != "mv")
        throw ValidationError("--target must be mv or pair");
    int count = cfg.sweep > 0 ? cfg.sweep : 1000;
    SweepResult res = search_nonexact(base, cfg.seed, count, target,
                                      std::min(cfg.max_dim, 2), cfg.field);
    out << "sweep target=" << cfg.target << " seeds=" << res.attempted
        << " witnesses=" << res.witnesses << '\n';
    if (res.chain_complex_violated) {
        out << "chain-complex property violated - claim falsified\n";
        return kClaimFalsified;
    }
    if (res.first) {
        const Witness& w = *res.first;
        out << "first witness: seed=" << w.params.seed << " i=" << w.i << " j=" << w.j
            << " k=" << w.k << " position=" << w.position << '\n';
        if (!cfg.out_prefix.empty()) {
            Triple t = generate(w.params);
            std::string parent_name = cfg.out_prefix + ".cplx";
            std::string meta = "# nonexactness witness target=" + cfg.target +
                               " seed=" + std::to_string(w.params.seed) +
                               " i=" + std::to_string(w.i) + " j=" + std::to_string(w.j) +
                               " k=" + std::to_string(w.k) + " position=" + w.position + "\n";
            std::ofstream(parent_name) << meta << to_text(*t.X);
            std::ofstream(cfg.out_prefix + "_a.sub") << to_text(t.A, parent_name);
            std::ofstream(cfg.out_prefix + "_b.sub") << to_text(t.B, parent_name);
            out << "wrote witness fixture " << parent_name << '\n';
        }
    } else {
        out << "no witness found at this scale\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"persistent homology with excision over GF(p)", "phex"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needs_complex) {
        sub->add_option("--field", cfg.field, "prime field modulus")->default_val(2);
        sub->add_option("--max-dim", cfg.max_dim, "maximum homology degree")->default_val(3);
        sub->add_option("--format", cfg.format, "text|structured")
            ->check(CLI::IsMember({"text", "structured"}))
            ->default_val("text");
        auto* c = sub->add_option("--complex", cfg.complex_path, "filtered complex file");
        if (needs_complex) c->required();
    };

    CLI::App* compute = app.add_subcommand("compute", "barcodes, absolute or relative");
    add_common(compute, true);
    compute->add_option("--sub-a", cfg.sub_a_path, "subcomplex A (relative mode)");
    compute->add_option("--reduction", cfg.reduction, "standard|twist")
        ->check(CLI::IsMember({"standard", "twist"}))
        ->default_val("standard");

    CLI::App* verify =
        app.add_subcommand("verify", "check the excision/sequence claims on a triple");
    add_common(verify, true);
    std::string verify_kind;
    verify->add_option("kind", verify_kind, "excision|mv|pair|modules|derive")->required();
    verify->add_option("--sub-a", cfg.sub_a_path, "subcomplex A")->required();
    verify->add_option("--sub-b", cfg.sub_b_path, "subcomplex B");
    verify->add_option("--i", cfg.i, "filtration index i");
    verify->add_option("--j", cfg.j, "filtration index j");

    CLI::App* bench = app.add_subcommand("bench", "direct vs excised workload comparison");
    add_common(bench, true);
    bench->add_option("--sub-a", cfg.sub_a_path, "subcomplex A")->required();
    bench->add_option("--sub-b", cfg.sub_b_path, "subcomplex B")->required();

    CLI::App* gen = app.add_subcommand("generate", "emit a generated cover triple");
    add_common(gen, false);
    gen->add_option("--seed", cfg.seed, "generator seed");
    gen->add_option("--out", cfg.out_prefix, "output file prefix");
    gen->add_option("--gen-vertices", cfg.gen_vertices, "max vertices");
    gen->add_option("--gen-dim", cfg.gen_dim, "max simplex dimension");
    gen->add_option("--gen-levels", cfg.gen_levels, "number of levels");
    gen->add_option("--gen-bias", cfg.gen_bias, "cover membership bias");

    CLI::App* sweep = app.add_subcommand("sweep", "search for non-exactness witnesses");
    add_common(sweep, false);
    sweep->add_option("--target", cfg.target, "mv|pair");
    sweep->add_option("--seed", cfg.seed, "first seed");
    sweep->add_option("--sweep", cfg.sweep, "number of seeds");
    sweep->add_option("--out", cfg.out_prefix, "witness fixture prefix");
    sweep->add_option("--gen-vertices", cfg.gen_vertices, "max vertices");
    sweep->add_option("--gen-dim", cfg.gen_dim, "max simplex dimension");
    sweep->add_option("--gen-levels", cfg.gen_levels, "number of levels");
    sweep->add_option("--gen-bias", cfg.gen_bias, "cover membership bias");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (!is_prime(cfg.field)) throw ValidationError("--field must be prime");
        if (compute->parsed()) return cmd_compute(cfg, out);
        if (verify->parsed()) return cmd_verify(verify_kind, cfg, out);
        if (bench->parsed()) return cmd_bench(cfg, out);
        if (gen->parsed()) return cmd_generate(cfg, out);
        if (sweep->parsed()) return cmd_sweep(cfg, out);
        err << "no command\n";
        return kInputError;
    } catch (const HypothesisError& e) {
        err << "hypothesis not met: " << e.what() << '\n';
        for (const Simplex& s : e.offending()) err << "  offending " << s.str() << '\n';
        return kHypothesisNotMet;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const ValidationError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::logic_error& e) {
        // A verified-impossible condition fired: report as falsification
        // evidence rather than hiding it.
        err << "claim check failed internally: " << e.what() << '\n';
        return kClaimFalsified;
    }
}

}  // namespace phex::cli
