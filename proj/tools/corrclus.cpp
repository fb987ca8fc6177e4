// Command-line front end: generate instances, run the solvers, evaluate
// solutions, compare algorithms and sweep benchmark grids. Identical command
// lines (seeds included) produce byte-identical outputs.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corrclus/exact.hpp"
#include "corrclus/generators.hpp"
#include "corrclus/io.hpp"
#include "corrclus/maxagree.hpp"
#include "corrclus/mindisagree.hpp"
#include "corrclus/rng.hpp"

namespace {

using namespace corrclus;

constexpr std::uint32_t kLocalSearchRounds = 1000;

unsigned thread_cap() {
    const char* env = std::getenv("CORRCLUS_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    return static_cast<unsigned>(std::min<long>(v, 64));
}

struct SolveFlags {
    std::string algo = "exact";
    ClusterId k = 2;
    double eps = 0.5;
    double delta = 0.1;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> sample_override;
    std::optional<std::uint64_t> enum_budget;
    bool full_sample = false;
};

void add_solver_flags(CLI::App* cmd, SolveFlags& f, bool with_algo) {
    if (with_algo)
        cmd->add_option("--algo", f.algo, "exact|maxag|mindisag|local|baseline")
            ->check(CLI::IsMember({"exact", "maxag", "mindisag", "local", "baseline"}));
    cmd->add_option("--k", f.k, "cluster budget")->check(CLI::PositiveNumber);
    cmd->add_option("--eps", f.eps, "accuracy in (0,1]");
    cmd->add_option("--delta", f.delta, "failure probability in (0,1]");
    cmd->add_option("--seed", f.seed, "rng seed");
    cmd->add_option("--sample-override", f.sample_override,
                    "draws per sample instead of the theoretical size");
    cmd->add_option("--enum-budget", f.enum_budget, "cap on sample clusterings tried");
    cmd->add_flag("--full-sample", f.full_sample, "mindisag testing mode: sample = V");
}

SolverParams to_params(const SolveFlags& f) {
    SolverParams p;
    p.k = f.k;
    p.epsilon = f.eps;
    p.delta = f.delta;
    p.seed = f.seed;
    p.sample_override = f.sample_override;
    p.enumeration_budget = f.enum_budget;
    return p;
}

SolveReport run_algorithm(const SignedCompleteGraph& g, const SolveFlags& f) {
    if (f.algo == "exact") return exact_best(g, f.k, Objective::MinDisagreements, thread_cap());
    if (f.algo == "maxag") return max_ag(g, to_params(f));
    if (f.algo == "mindisag") {
        MinDisParams p;
        p.base = to_params(f);
        p.propagate_full_sample = f.full_sample;
        return min_dis_ag(g, p);
    }
    if (f.algo == "local") {
        // hill climbing from the seeded random baseline
        const Clustering start = baselines(g, f.k, f.seed)[1];
        const auto t0 = std::chrono::steady_clock::now();
        Clustering improved = local_switch_improve(g, start, kLocalSearchRounds);
        SolveReport r;
        r.clustering = std::move(improved);
        r.agreements = agreements(g, r.clustering);
        r.disagreements = g.pair_count() - r.agreements;
        r.guarantee_valid = false;  // heuristic, no bound attached
        r.trace.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        return r;
    }
    if (f.algo == "baseline") {
        const auto t0 = std::chrono::steady_clock::now();
        SolveReport r;
        EdgeCount best = 0;
        for (const Clustering& c : baselines(g, f.k, f.seed)) {
            const EdgeCount a = agreements(g, c);
            if (r.clustering.assignment.empty() || a > best) {
                best = a;
                r.clustering = c;
            }
        }
        r.agreements = best;
        r.disagreements = g.pair_count() - best;
        r.guarantee_valid = false;
        r.trace.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        return r;
    }
    throw std::invalid_argument("unknown algorithm: " + f.algo);
}

io::RunReport build_report(const SignedCompleteGraph& g, const SolveFlags& f,
                           const SolveReport& solved) {
    io::RunReport r = io::make_report(g, f.algo, solved);
    r.k = f.k;
    r.epsilon = f.eps;
    r.delta = f.delta;
    r.seed = f.seed;
    r.sample_override = f.sample_override;
    r.enumeration_budget = f.enum_budget;
    r.full_sample = f.full_sample;
    return r;
}

void emit_report(const std::string& path, const io::RunReport& r, EdgeCount pairs) {
    const std::string line = io::report_line(r, pairs);
    if (path.empty())
        std::cout << line << "\n";
    else
        io::append_line(path, line);
}

SimpleGraph parse_edge_list(std::uint32_t gn, const std::string& edges) {
    SimpleGraph g(gn);
    std::stringstream ss(edges);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto dash = item.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("edge must look like 'u-v': " + item);
        g.add_edge(static_cast<Vertex>(std::stoul(item.substr(0, dash))),
                   static_cast<Vertex>(std::stoul(item.substr(dash + 1))));
    }
    return g;
}

// --- subcommands -----------------------------------------------------------

int cmd_gen(const std::string& kind, std::uint32_t n, ClusterId k, double p,
            std::uint64_t seed, const std::string& balance, std::uint32_t gn,
            const std::string& edges, const std::string& in_path, ClusterId k_target,
            const std::string& out, const std::string& truth_out) {
    SignedCompleteGraph g(1);
    if (kind == "planted") {
        const Balance b = balance == "random-sizes" ? Balance::RandomSizes : Balance::Balanced;
        PlantedInstance inst = planted(n, k, p, seed, b);
        g = std::move(inst.graph);
        if (!truth_out.empty()) io::write_file(truth_out, io::serialize_solution(inst.truth));
    } else if (kind == "bisection-gadget") {
        g = bisection_gadget(parse_edge_list(gn, edges));
    } else if (kind == "pad") {
        g = pad_groups(io::parse_instance(io::read_file(in_path)), k_target);
    } else if (kind == "all-plus") {
        g = all_plus(n);
    } else if (kind == "all-minus") {
        g = all_minus(n);
    } else {
        throw std::invalid_argument("unknown kind: " + kind);
    }
    const std::string text = io::serialize_instance(g);
    if (out.empty())
        std::cout << text;
    else
        io::write_file(out, text);
    return 0;
}

int cmd_solve(const SolveFlags& flags, const std::string& in_path,
              const std::string& out_solution, const std::string& report_path) {
    const SignedCompleteGraph g = io::parse_instance(io::read_file(in_path));
    const SolveReport solved = run_algorithm(g, flags);
    if (!out_solution.empty())
        io::write_file(out_solution, io::serialize_solution(solved.clustering));
    emit_report(report_path, build_report(g, flags, solved), g.pair_count());
    return 0;
}

int cmd_eval(const std::string& in_path, const std::string& solution_path) {
    const SignedCompleteGraph g = io::parse_instance(io::read_file(in_path));
    const Clustering c = io::parse_solution(io::read_file(solution_path));
    std::cout << "agreements=" << agreements(g, c) << " disagreements=" << disagreements(g, c)
              << "\n";
    return 0;
}

int cmd_compare(const SolveFlags& a, const SolveFlags& b, std::uint32_t n, ClusterId k,
                double p, std::uint32_t seeds, std::uint64_t seed0,
                const std::string& report_path) {
    std::uint32_t equal = 0;
    for (std::uint32_t s = 0; s < seeds; ++s) {
        const std::uint64_t inst_seed = derive_seed(seed0, s);
        PlantedInstance inst = planted(n, k, p, inst_seed);
        SolveFlags fa = a, fb = b;
        fa.seed = inst_seed;
        fb.seed = inst_seed;
        const SolveReport ra = run_algorithm(inst.graph, fa);
        const SolveReport rb = run_algorithm(inst.graph, fb);
        auto rep_a = build_report(inst.graph, fa, ra);
        auto rep_b = build_report(inst.graph, fb, rb);
        emit_report(report_path, rep_a, inst.graph.pair_count());
        emit_report(report_path, rep_b, inst.graph.pair_count());
        if (ra.disagreements == rb.disagreements) ++equal;
    }
    std::cout << "equal_objective " << equal << "/" << seeds << "\n";
    return 0;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_bench(const std::string& config_path, const std::string& report_path) {
    std::map<std::string, std::string> cfg;
    std::stringstream ss(io::read_file(config_path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw io::ParseError(line_no, "expected key=value");
            continue;
        }
        auto trim = [](std::string t) {
            const auto b = t.find_first_not_of(" \t\r");
            const auto e = t.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : t.substr(b, e - b + 1);
        };
        cfg[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }

    auto get = [&](const std::string& key, const std::string& fallback) {
        auto it = cfg.find(key);
        return it == cfg.end() ? fallback : it->second;
    };

    const auto algos = split_list(get("algo", "exact"));
    const auto ns = split_list(get("n", "8"));
    const auto ks = split_list(get("k", "2"));
    const auto ps = split_list(get("p", "0.5"));
    const auto seeds = static_cast<std::uint32_t>(std::stoul(get("seeds", "1")));
    const auto seed0 = static_cast<std::uint64_t>(std::stoull(get("seed0", "0")));

    SolveFlags base;
    base.eps = std::stod(get("eps", "0.5"));
    base.delta = std::stod(get("delta", "0.1"));
    if (cfg.count("sample_override"))
        base.sample_override = std::stoull(cfg.at("sample_override"));
    if (cfg.count("enum_budget")) base.enum_budget = std::stoull(cfg.at("enum_budget"));
    base.full_sample = get("full_sample", "0") == "1";

    for (const auto& algo : algos)
        for (const auto& n_str : ns)
            for (const auto& k_str : ks)
                for (const auto& p_str : ps)
                    for (std::uint32_t s = 0; s < seeds; ++s) {
                        const auto n = static_cast<std::uint32_t>(std::stoul(n_str));
                        const auto k = static_cast<ClusterId>(std::stoul(k_str));
                        const double p = std::stod(p_str);
                        const std::uint64_t inst_seed = derive_seed(seed0, s);
                        PlantedInstance inst = planted(n, k, p, inst_seed);
                        SolveFlags f = base;
                        f.algo = algo;
                        f.k = k;
                        f.seed = inst_seed;
                        const SolveReport solved = run_algorithm(inst.graph, f);
                        emit_report(report_path, build_report(inst.graph, f, solved),
                                    inst.graph.pair_count());
                    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"correlation clustering toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance");
    std::string gen_kind = "planted";
    std::uint32_t gen_n = 8, gen_gn = 2;
    ClusterId gen_k = 2, gen_k_target = 2;
    double gen_p = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_balance = "balanced", gen_edges, gen_in, gen_out, gen_truth_out;
    gen->add_option("--kind", gen_kind, "planted|bisection-gadget|pad|all-plus|all-minus")
        ->check(CLI::IsMember({"planted", "bisection-gadget", "pad", "all-plus", "all-minus"}));
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--k", gen_k, "planted cluster count");
    gen->add_option("--p", gen_p, "planted flip probability");
    gen->add_option("--seed", gen_seed, "rng seed");
    gen->add_option("--balance", gen_balance, "balanced|random-sizes")
        ->check(CLI::IsMember({"balanced", "random-sizes"}));
    gen->add_option("--gn", gen_gn, "bisection input vertex count (even)");
    gen->add_option("--edges", gen_edges, "bisection input edges, e.g. 0-1,1-2");
    gen->add_option("--in", gen_in, "base instance to pad");
    gen->add_option("--k-target", gen_k_target, "pad to this cluster budget");
    gen->add_option("--out", gen_out, "output instance path (stdout if omitted)");
    gen->add_option("--truth-out", gen_truth_out, "write planted ground truth solution");

    // solve
    auto* solve = app.add_subcommand("solve", "run one solver on an instance");
    SolveFlags solve_flags;
    std::string solve_in, solve_out_solution, solve_report;
    add_solver_flags(solve, solve_flags, true);
    solve->add_option("--in", solve_in, "instance path")->required();
    solve->add_option("--out-solution", solve_out_solution, "solution output path");
    solve->add_option("--report", solve_report, "append one report line here");

    // eval
    auto* eval = app.add_subcommand("eval", "objective values of a solution");
    std::string eval_in, eval_solution;
    eval->add_option("--in", eval_in, "instance path")->required();
    eval->add_option("--solution", eval_solution, "solution path")->required();

    // compare
    auto* compare = app.add_subcommand("compare", "run two algorithms on a seeded family");
    SolveFlags cmp_flags;  // shared solver knobs
    std::string cmp_algo_a = "exact", cmp_algo_b = "mindisag", cmp_report;
    std::uint32_t cmp_n = 10, cmp_seeds = 20;
    ClusterId cmp_k = 2;
    double cmp_p = 0.5;
    std::uint64_t cmp_seed0 = 0;
    add_solver_flags(compare, cmp_flags, false);
    compare->add_option("--algo-a", cmp_algo_a, "first algorithm");
    compare->add_option("--algo-b", cmp_algo_b, "second algorithm");
    compare->add_option("--n", cmp_n, "instance size");
    compare->add_option("--p", cmp_p, "flip probability");
    compare->add_option("--family-k", cmp_k, "planted cluster count (defaults to --k)");
    compare->add_option("--seeds", cmp_seeds, "number of instances");
    compare->add_option("--seed0", cmp_seed0, "family base seed");
    compare->add_option("--report", cmp_report, "append paired report lines here");

    // bench
    auto* bench = app.add_subcommand("bench", "sweep a key=value config grid");
    std::string bench_config, bench_report;
    bench->add_option("--config", bench_config, "config path")->required();
    bench->add_option("--report", bench_report, "append report lines here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_kind, gen_n, gen_k, gen_p, gen_seed, gen_balance, gen_gn,
                           gen_edges, gen_in, gen_k_target, gen_out, gen_truth_out);
        if (solve->parsed()) return cmd_solve(solve_flags, solve_in, solve_out_solution,
                                              solve_report);
        if (eval->parsed()) return cmd_eval(eval_in, eval_solution);
        if (compare->parsed()) {
            SolveFlags a = cmp_flags, b = cmp_flags;
            a.algo = cmp_algo_a;
            b.algo = cmp_algo_b;
            if (compare->count("--family-k") == 0) cmp_k = cmp_flags.k;
            return cmd_compare(a, b, cmp_n, cmp_k, cmp_p, cmp_seeds, cmp_seed0, cmp_report);
        }
        if (bench->parsed()) return cmd_bench(bench_config, bench_report);
    } catch (const FeasibilityError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
