#include "cutenc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cutenc/bisection.hpp"
#include "cutenc/encoder.hpp"
#include "cutenc/faults.hpp"
#include "cutenc/verify.hpp"

namespace cutenc::cli {

namespace {

struct FunctionSpec {
    std::string graph_path;
    std::string matrix_path;
    std::string table_path;
    std::string func;  // edgecut | cutrank | vertexcut | matroid | table
};

void add_function_options(CLI::App* cmd, FunctionSpec& spec) {
    auto* g = cmd->add_option("--graph", spec.graph_path, "graph input file");
    auto* m = cmd->add_option("--matrix", spec.matrix_path, "GF(2) matrix input file");
    auto* t = cmd->add_option("--table", spec.table_path, "explicit value table file");
    g->excludes(m)->excludes(t);
    m->excludes(t);
    cmd->add_option("--func", spec.func,
                    "function family: edgecut|cutrank|vertexcut (graph), matroid (matrix)");
}

ConnectivityFn load_function(const FunctionSpec& spec) {
    if (!spec.graph_path.empty()) {
        Graph g = load_graph_file(spec.graph_path);
        std::string func = spec.func.empty() ? "edgecut" : spec.func;
        if (func == "edgecut") return edge_cut_oracle(g);
        if (func == "cutrank") return cut_rank_oracle(g);
        if (func == "vertexcut") return vertex_cut_oracle(g);
        throw InputError("--func " + func + " does not apply to --graph inputs");
    }
    if (!spec.matrix_path.empty()) {
        if (!spec.func.empty() && spec.func != "matroid")
            throw InputError("--func " + spec.func + " does not apply to --matrix inputs");
        return matroid_connectivity_oracle(load_gf2_file(spec.matrix_path));
    }
    if (!spec.table_path.empty()) {
        if (!spec.func.empty() && spec.func != "table")
            throw InputError("--func " + spec.func + " does not apply to --table inputs");
        return load_table_oracle_file(spec.table_path);
    }
    throw InputError("one of --graph, --matrix or --table is required");
}

SfmBackend parse_backend(const std::string& name) {
    if (name.empty() || name == "exhaustive") return SfmBackend::exhaustive();
    if (name == "mnp" || name == "min-norm-point") return SfmBackend::min_norm_point();
    throw InputError("unknown backend: " + name + " (use exhaustive or mnp)");
}

std::vector<Value> parse_targets(const std::string& text, int n) {
    if (text == "half") return {static_cast<Value>(n / 2)};
    std::vector<Value> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("targets must be integers or the keyword half: " + item);
        }
    }
    if (out.empty()) throw InputError("no targets given");
    return out;
}

struct AxiomsArgs {
    FunctionSpec fn;
};

int cmd_axioms(const AxiomsArgs& a, std::ostream& out) {
    ConnectivityFn f = load_function(a.fn);
    AxiomReport r = check_axioms(f);
    VerifyReport rep;
    rep.name = "axioms";
    rep.pass = r.pass;
    rep.instances = r.instances;
    if (!r.pass) {
        rep.witness = r.axiom + ":X={" + render_subset(f.ground(), r.witness_x) + "}";
        if (r.axiom == "submodularity")
            rep.witness += ";Y={" + render_subset(f.ground(), r.witness_y) + "}";
    }
    out << format_report(rep) << '\n';
    return r.pass ? kOk : kAxiomViolation;
}

struct EncodeArgs {
    FunctionSpec fn;
    Value k = 0;
    std::string output;
    std::string backend;
    int jobs = 1;
    bool no_provenance = false;
};

int cmd_encode(const EncodeArgs& a, std::ostream& out, std::ostream& err) {
    ConnectivityFn f = load_function(a.fn);
    Representation rep = encode(f, a.k, parse_backend(a.backend), a.jobs, !a.no_provenance);
    std::ofstream file(a.output);
    if (!file) throw InputError("cannot open output file: " + a.output);
    file << serialize(rep, !a.no_provenance);
    EncodeStats st = stats(rep);
    out << "triples=" << st.triples << " bound=" << st.bound
        << " pairs=" << st.contributing_pairs << " fstar=" << st.fstar_evals << '\n';
    err << "wall_seconds=" << st.wall_seconds << '\n';
    return kOk;
}

struct EnumerateArgs {
    std::string rep_path;
    std::uint64_t budget = kDefaultExpansionBudget;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out) {
    Representation rep = load_representation_file(a.rep_path);
    std::set<SubsetMask> family = enumerate_family(rep, a.budget);
    std::vector<std::string> lines;
    lines.reserve(family.size());
    for (const auto& x : family) lines.push_back(render_subset(rep.ground, x));
    std::sort(lines.begin(), lines.end());
    for (const auto& line : lines) out << line << '\n';
    return kOk;
}

struct MemberArgs {
    std::string rep_path;
    std::string set_text;
};

int cmd_member(const MemberArgs& a, std::ostream& out) {
    Representation rep = load_representation_file(a.rep_path);
    SubsetMask x = subset_parse(rep.ground, a.set_text);
    bool yes = member(rep, x);
    out << (yes ? "yes" : "no") << '\n';
    return yes ? kOk : kNotFound;
}

struct BisectArgs {
    FunctionSpec fn;
    Value k = 0;
    std::string window;
    bool window_given = false;
    std::string targets;
    std::string mode = "exact";
    std::string backend;
};

int cmd_bisect(const BisectArgs& a, std::ostream& out, std::ostream& err) {
    ConnectivityFn f = load_function(a.fn);
    CardinalityQuery q;
    q.window = a.window_given ? subset_parse(f.ground(), a.window) : f.ground().full_mask();
    q.targets = parse_targets(a.targets, f.ground().size());
    q.k = a.k;
    if (a.mode == "exact")
        q.mode = CardinalityMode::exact;
    else if (a.mode == "atmost" || a.mode == "at_most")
        q.mode = CardinalityMode::at_most;
    else
        throw InputError("unknown mode: " + a.mode + " (use exact or atmost)");

    bool clamped = false;
    normalize_targets(q.targets, q.window.count(), &clamped);
    if (clamped) err << "warning: targets outside 0..|W| were ignored\n";

    auto answer = solve(f, q, parse_backend(a.backend));
    if (!answer) {
        out << "INFEASIBLE\n";
        return kNotFound;
    }
    out << render_subset(f.ground(), *answer) << '\n';
    return kOk;
}

struct VerifyArgs {
    FunctionSpec fn;
    Value k = 0;
    std::string suite;
    std::string backend;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    bool force_exhaustive = false;
    int bisect_trials = 20;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    static const std::vector<std::string> kSuites = {"encoding", "skew",   "digraph",
                                                     "axioms",   "interp", "bisect"};
    std::vector<std::string> chosen;
    if (a.suite == "all")
        chosen = kSuites;
    else if (std::find(kSuites.begin(), kSuites.end(), a.suite) != kSuites.end())
        chosen = {a.suite};
    else
        throw InputError("unknown suite: " + a.suite);

    ConnectivityFn f = load_function(a.fn);
    SfmBackend backend = parse_backend(a.backend);
    int n = f.ground().size();

    bool all_pass = true;
    for (const auto& suite : chosen) {
        VerifyReport rep;
        if (suite == "encoding") {
            rep = check_encoding_exact(f, a.k, backend);
        } else if (suite == "skew") {
            rep = check_no_large_skew(f, a.k, backend);
        } else if (suite == "digraph") {
            // Exhaustive while the quadruple count stays reasonable.
            std::uint64_t quads = 1;
            for (int i = 0; i < n; ++i) quads *= 5;
            bool exhaustive = a.force_exhaustive || quads <= 1000000;
            std::uint64_t trials = a.trials ? a.trials : 20000;
            rep = check_lemma_digraph(f, backend, exhaustive, trials, a.seed);
            if (!exhaustive) rep.name = "digraph-sampled";
        } else if (suite == "axioms") {
            AxiomReport r = check_axioms(f);
            rep.name = "axioms";
            rep.pass = r.pass;
            rep.instances = r.instances;
            if (!r.pass) rep.witness = r.axiom + ":X={" + render_subset(f.ground(), r.witness_x) + "}";
        } else if (suite == "interp") {
            rep = check_interpolation_axioms(f, backend);
        } else {
            rep = check_bisection_agreement(f, a.k, backend, a.seed, a.bisect_trials);
        }
        out << format_report(rep) << '\n';
        all_pass = all_pass && rep.pass;
    }
    return all_pass ? kOk : kVerifyFailure;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polynomial-size encodings of constant-value cuts of connectivity functions"};
    app.name("cutenc");
    app.require_subcommand(1);
    app.fallthrough();

    std::string inject;
    app.add_option("--inject-bug", inject, "")->group("");  // test hook, hidden

    AxiomsArgs ax;
    auto* axioms = app.add_subcommand("axioms", "check the connectivity-function axioms");
    add_function_options(axioms, ax.fn);

    EncodeArgs en;
    auto* encode_cmd = app.add_subcommand("encode", "build the representation of {X : f(X)=k}");
    add_function_options(encode_cmd, en.fn);
    encode_cmd->add_option("-k,--k", en.k, "cut value")->required();
    encode_cmd->add_option("-o,--output", en.output, "output file")->required();
    encode_cmd->add_option("--backend", en.backend, "exhaustive (default) or mnp");
    encode_cmd->add_option("--jobs", en.jobs, "worker threads for the pair loop");
    encode_cmd->add_flag("--no-provenance", en.no_provenance, "strip provenance records");

    EnumerateArgs enu;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "list every decodable set");
    enumerate_cmd->add_option("rep", enu.rep_path, "representation file")->required();
    enumerate_cmd->add_option("--budget", enu.budget, "expansion budget");

    MemberArgs mem;
    auto* member_cmd = app.add_subcommand("member", "test one set against a representation");
    member_cmd->add_option("rep", mem.rep_path, "representation file")->required();
    member_cmd->add_option("--set", mem.set_text, "comma-separated labels")->required();

    BisectArgs bi;
    auto* bisect_cmd = app.add_subcommand("bisect", "cardinality-constrained cut search");
    add_function_options(bisect_cmd, bi.fn);
    bisect_cmd->add_option("-k,--k", bi.k, "cut value")->required();
    auto* wopt = bisect_cmd->add_option("--window", bi.window, "window W (default: all of V)");
    bisect_cmd->add_option("--targets", bi.targets, "comma-separated |A^W| targets, or half")
        ->required();
    bisect_cmd->add_option("--mode", bi.mode, "exact (default) or atmost");
    bisect_cmd->add_option("--backend", bi.backend, "exhaustive (default) or mnp");

    VerifyArgs ve;
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    add_function_options(verify_cmd, ve.fn);
    verify_cmd->add_option("-k,--k", ve.k, "cut value for encoding/skew/bisect suites");
    verify_cmd->add_option("--suite", ve.suite, "encoding|skew|digraph|axioms|interp|bisect|all")
        ->required();
    verify_cmd->add_option("--backend", ve.backend, "exhaustive (default) or mnp");
    verify_cmd->add_option("--seed", ve.seed, "seed for sampled checks");
    verify_cmd->add_option("--trials", ve.trials, "sample count for sampled checks");
    verify_cmd->add_flag("--exhaustive", ve.force_exhaustive, "force exhaustive enumeration");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kInputError;
    }

    std::optional<faults::Scoped> fault_guard;
    if (!inject.empty()) {
        auto bug = faults::parse(inject);
        if (!bug) {
            err << "unknown bug name: " << inject << '\n';
            return kInputError;
        }
        fault_guard.emplace(*bug);
    }

    try {
        if (*axioms) return cmd_axioms(ax, out);
        if (*encode_cmd) return cmd_encode(en, out, err);
        if (*enumerate_cmd) return cmd_enumerate(enu, out);
        if (*member_cmd) return cmd_member(mem, out);
        if (*bisect_cmd) {
            bi.window_given = wopt->count() > 0;
            return cmd_bisect(bi, out, err);
        }
        if (*verify_cmd) return cmd_verify(ve, out);
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kBudgetExceeded;
    } catch (const BackendError& e) {
        err << "error: " << e.what() << '\n';
        return kBudgetExceeded;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace cutenc::cli
