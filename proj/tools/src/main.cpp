#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vexlab/errors.hpp"
#include "vexlab/extrapolation.hpp"
#include "vexlab/gf1.hpp"
#include "vexlab/maximal.hpp"
#include "vexlab/norms.hpp"
#include "vexlab/parallel.hpp"
#include "vexlab/serialize.hpp"
#include "vexlab/sparse.hpp"
#include "vexlab/weights.hpp"

#include "config.hpp"
#include "corpus.hpp"
#include "registry.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vexlab;
using namespace vexlab::cli;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct GlobalFlags {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> level;
    std::optional<int> half_extent_log2;
    std::optional<unsigned> threads;

    ExperimentConfig resolve() const {
        ExperimentConfig c = config.empty() ? ExperimentConfig{} : load_config(config);
        if (out) c.out = *out;
        if (seed) c.seed = *seed;
        if (level) c.level = *level;
        if (half_extent_log2) c.half_extent_log2 = *half_extent_log2;
        if (threads) c.threads = *threads;
        validate(c);
        set_thread_count(c.threads);
        return c;
    }
};

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

// The configured exponent and weight brought onto the grid of f.
Instance instance_for(const ExperimentConfig& c, const GridFunction& f) {
    const Domain d = f.domain().coarse();
    const Weight w = resolve_weight(c.weight, c.exponent, d).on(f.domain().is_thirds() ? f.domain() : d);
    return {w.domain(), resolve_exponent(c.exponent, d).on(w.domain()), w};
}

CubeFamily parse_family(const std::string& s) {
    if (s == "all-local") return CubeFamily::AllLocal;
    if (s == "all") return CubeFamily::All;
    if (s == "dyadic-local") return CubeFamily::DyadicLocal;
    if (s == "dyadic-all") return CubeFamily::DyadicAll;
    if (s == "local-r") return CubeFamily::LocalR;
    throw FormatError("unknown cube family '" + s + "'");
}

MaximalSpec parse_flavor(const std::string& s, double radius) {
    if (s == "global") return MaximalSpec::global();
    if (s == "local") return MaximalSpec::local();
    if (s == "local-r") return MaximalSpec::local_r(radius);
    if (s == "local6") return MaximalSpec::local6();
    throw FormatError("unknown maximal flavor '" + s + "'");
}

Shift parse_shift(const std::string& s) {
    Shift a{0, 0};
    int n = 0;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (n >= 2 || part.size() != 1 || part[0] < '0' || part[0] > '2') throw FormatError("shift must be like 1 or 1,1");
        a[static_cast<std::size_t>(n++)] = part[0] - '0';
    }
    if (n == 0) throw FormatError("empty shift");
    if (n == 1) a[1] = a[0];
    return a;
}

int run_verify(const ExperimentConfig& c, const std::string& suite) {
    ExperimentConfig cc = c;
    cc.suites = {suite};
    const auto results = run_suites(cc, cc.suites);
    const fs::path out(cc.out);
    write_text(out / "results.json", results_json(cc, results).dump(2) + "\n");
    write_text(out / "tables.csv", tables_csv(results));
    std::size_t failed = 0;
    for (const auto& r : results) {
        std::printf("%s %-42s %7.2f s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
        if (!r.pass) {
            ++failed;
            if (!r.witness.is_null()) std::printf("     witness: %s\n", r.witness.dump().c_str());
        }
    }
    std::printf("%zu checks, %zu failed; results in %s\n", results.size(), failed, (out / "results.json").c_str());
    return failed == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        assert_registry_complete();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitFail;
    }

    CLI::App app{"vexlab: experiments with variable-exponent spaces and local weights"};
    app.require_subcommand(1, 1);
    GlobalFlags g;
    app.add_option("--config", g.config, "JSON experiment config")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "output directory");
    app.add_option("--seed", g.seed, "corpus seed");
    app.add_option("--level", g.level, "grid level J (cells of side 2^-J)");
    app.add_option("--half-extent-log2", g.half_extent_log2, "box half-extent exponent S (box [-2^S, 2^S)^n)");
    app.add_option("--threads", g.threads, "worker threads");

    auto* gen = app.add_subcommand("gen", "write the exponent, weight and probe corpus as GF1 files");

    std::string input;
    auto* norm = app.add_subcommand("norm", "Luxemburg norm of a GF1 function in L^p(.)(w)");
    norm->add_option("file", input, "GF1 input")->required()->check(CLI::ExistingFile);

    std::string flavor = "local", shift;
    double radius = 1.0;
    auto* max = app.add_subcommand("maximal", "maximal function of a GF1 function, written as GF1");
    max->add_option("file", input, "GF1 input")->required()->check(CLI::ExistingFile);
    max->add_option("--flavor", flavor, "global | local | local-r | local6");
    max->add_option("--radius", radius, "R for local-r");
    max->add_option("--shift", shift, "use the dyadic grid D_a, e.g. 1 or 1,1");

    std::string family = "all-local";
    auto* ap = app.add_subcommand("apconst", "A_p(.) constant of the configured weight");
    ap->add_option("--family", family, "all-local | all | dyadic-local | dyadic-all | local-r");
    ap->add_option("--radius", radius, "R for local-r");

    double base = 0.0;
    auto* sp = app.add_subcommand("sparse", "sparse decomposition of M_D f for a GF1 function");
    sp->add_option("file", input, "GF1 input")->required()->check(CLI::ExistingFile);
    sp->add_option("--base", base, "base a > 2^n (default 2^{n+2})");

    auto* ex = app.add_subcommand("extrapolate", "extrapolation demo on maximal pairs from the probe corpus");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run check suites, write results.json and tables.csv");
    verify->add_option("suite", suite, "suite name or all");

    for (auto* sub : {gen, norm, max, ap, sp, ex, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        const ExperimentConfig c = g.resolve();
        if (*gen) {
            const json m = generate_corpus(c, c.out);
            std::printf("wrote %zu files to %s\n", m["files"].size() + 1, c.out.c_str());
            return kExitPass;
        }
        if (*norm) {
            const GridFunction f = load_gf1(input);
            const Instance in = instance_for(c, f);
            const auto r = luxemburg_norm(on_domain(f, in.domain), in.p, in.w.values());
            print({{"file", input}, {"domain", f.domain()}, {"norm", r}});
            return kExitPass;
        }
        if (*max) {
            const GridFunction f = load_gf1(input);
            MaximalSpec spec = parse_flavor(flavor, radius);
            if (!shift.empty()) spec = spec.on_grid(parse_shift(shift));
            const GridFunction mf = maximal(f, spec);
            const fs::path path = fs::path(c.out) / "maximal.gf1";
            write_text(path, to_gf1(mf));
            const Instance in = instance_for(c, mf);
            const double ratio =
                f.is_zero() ? 0.0 : boundedness_ratio(on_domain(f, in.domain), in.p, in.w, spec);
            print({{"file", input}, {"output", path.string()}, {"sup", mf.max()}, {"norm_ratio", ratio}});
            return kExitPass;
        }
        if (*ap) {
            const Instance in = make_instance(c);
            FamilySpec spec;
            spec.family = parse_family(family);
            spec.radius = radius;
            print(constant_report_json(muckenhoupt_constant(in.w, in.p, spec)));
            return kExitPass;
        }
        if (*sp) {
            const GridFunction f = load_gf1(input);
            const double a = base > 0.0 ? base : default_sparse_base(f.domain().dim());
            const auto fam = sparse_decompose(f, a);
            const auto inv = verify_sparse_family(fam, f);
            const fs::path path = fs::path(c.out) / "sparse.json";
            write_text(path, sparse_family_json(fam).dump() + "\n");
            print({{"file", input},
                   {"output", path.string()},
                   {"cubes", fam.cube_count()},
                   {"invariants", inv},
                   {"domination_constant", fam.empty() ? 0.0 : sparse_domination_check(fam)}});
            return inv.all() ? kExitPass : kExitFail;
        }
        if (*ex) {
            const Instance in = make_instance(c);
            const auto corpus = standard_probe_corpus(in.domain, in.w, in.p, c.seed);
            const auto b = estimate_operator_norm(in.p, in.w, MaximalSpec::local(), corpus);
            const auto b_dual = estimate_dual_operator_norm(in.p, in.w, corpus);
            const auto rep = extrapolate_demo(maximal_pairs(corpus), 2.0, in.p, in.w, b, b_dual);
            print({{"B", b}, {"B_dual", b_dual}, {"report", rep}});
            return rep.holder_chain ? kExitPass : kExitFail;
        }
        return run_verify(c, suite);
    } catch (const std::exception& e) {
        // Bad configs, unreadable or malformed GF1 and arguments outside an operation's domain.
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
