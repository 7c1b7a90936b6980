// Command-line front end: generate, inspect, solve and verify chore
// allocation instances. Exit codes: 0 success / verification passed,
// 1 verification failed, 2 input or parameter error, 3 search budget
// exceeded.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "wmms/assignment_lp.hpp"
#include "wmms/engine.hpp"
#include "wmms/generators.hpp"
#include "wmms/io.hpp"
#include "wmms/oracle.hpp"
#include "wmms/solver.hpp"

using namespace wmms;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

Rational parse_rational_flag(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw CLI::ValidationError(std::string(flag) + ": " + e.what());
    }
}

Instance load_and_validate(const std::string& path) {
    Instance inst = load_instance(path);
    ValidationReport rep = validate_instance(inst);
    if (!rep.ok()) {
        std::string msg = "invalid instance '" + path + "':";
        for (const auto& e : rep.errors) msg += "\n  - " + e;
        throw std::invalid_argument(msg);
    }
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    return inst;
}

struct WmmsOptions {
    std::string instance_path;
    bool exact = false;
    bool estimate = false;
    std::string eps = "1/10";
    bool partitions = false;
    bool json = false;
};

int cmd_wmms(const WmmsOptions& opt) {
    Instance inst = load_and_validate(opt.instance_path);
    bool use_estimate = opt.estimate;
    Rational eps = parse_rational_flag(opt.eps, "--eps");

    Json out;
    out["instance"] = opt.instance_path;
    out["agents"] = Json::array();
    std::printf("%-12s %-12s %-16s %s\n", "agent", "weight", "wmms", "source");
    for (int i = 0; i < inst.n(); ++i) {
        Rational value;
        std::string source;
        Json agent;
        if (use_estimate) {
            WmmsEstimate est = estimate_wmms(inst, i, eps);
            value = est.value;
            source = est.exact_backend ? "estimate" : "estimate-heuristic";
        } else {
            AgentWmms res = exact_wmms(inst, i);
            value = res.value;
            source = "exact";
            if (opt.partitions) {
                Json bundles = Json::array();
                for (const auto& bundle : res.partition) {
                    Json ids = Json::array();
                    for (int j : bundle) ids.push_back(inst.items[j]);
                    bundles.push_back(ids);
                }
                agent["partition"] = std::move(bundles);
            }
        }
        agent["id"] = inst.agents[i];
        agent["weight"] = inst.weights[i].str();
        agent["wmms"] = value.str();
        agent["source"] = source;
        out["agents"].push_back(std::move(agent));
        std::printf("%-12s %-12s %-16s %s\n", inst.agents[i].c_str(),
                    inst.weights[i].str().c_str(), value.str().c_str(), source.c_str());
    }
    if (opt.json) std::cout << out.dump(2) << "\n";
    return kExitOk;
}

struct SolveOptions {
    std::string instance_path;
    std::string method = "canonical12";
    std::string eps = "1/100";
    std::string alpha_max = "12";
    std::uint64_t seed = 0;
    std::string output;
};

int cmd_solve(const SolveOptions& opt) {
    Instance inst = load_and_validate(opt.instance_path);
    Rational eps = parse_rational_flag(opt.eps, "--eps");

    Allocation alloc;
    Json meta;
    meta["method"] = opt.method;
    meta["flags"] = Json{{"eps", eps.str()}, {"seed", opt.seed}};

    std::vector<Rational> wmms(inst.n());
    std::string wmms_source = "exact";

    if (opt.method == "canonical12") {
        TwelveWmmsReport rep = solve_12wmms(inst);
        alloc = rep.alloc;
        for (int i = 0; i < inst.n(); ++i) wmms[i] = rep.agents[i].wmms;
    } else if (opt.method == "lp") {
        Rational alpha_max = parse_rational_flag(opt.alpha_max, "--alpha-max");
        PolytimeResult res = solve_polytime(inst, eps, alpha_max);
        alloc = res.alloc;
        meta["flags"]["alpha_max"] = alpha_max.str();
        meta["alpha"] = res.alpha.str();
        // Report against exact shares when the search budget allows it,
        // otherwise against the (flagged) estimates.
        for (int i = 0; i < inst.n(); ++i) {
            try {
                wmms[i] = exact_wmms(inst, i).value;
            } catch (const BudgetExceeded&) {
                wmms[i] = res.estimates[i].value;
                wmms_source = "estimate";
            }
        }
    } else {
        throw std::invalid_argument("unknown --method '" + opt.method + "'");
    }

    auto bundles = alloc.bundles(inst);
    Rational max_ratio;
    Json ratios = Json::object();
    std::printf("%-12s %-16s %-16s %s\n", "agent", "cost", "wmms", "ratio");
    for (int i = 0; i < inst.n(); ++i) {
        Rational cost = bundle_cost(inst, i, bundles[i]);
        Rational ratio = wmms[i].is_zero() ? Rational(0) : cost / wmms[i];
        if (ratio > max_ratio) max_ratio = ratio;
        ratios[inst.agents[i]] = ratio.str();
        std::printf("%-12s %-16s %-16s %s\n", inst.agents[i].c_str(), cost.str().c_str(),
                    wmms[i].str().c_str(), ratio.str().c_str());
    }
    meta["ratios"] = std::move(ratios);
    meta["max_ratio"] = max_ratio.str();
    meta["wmms_source"] = wmms_source;
    std::printf("max ratio %s (wmms %s)\n", max_ratio.str().c_str(), wmms_source.c_str());

    if (!opt.output.empty()) save_json(opt.output, allocation_to_json(alloc, meta));
    return kExitOk;
}

struct VerifyOptions {
    std::string instance_path;
    std::string allocation_path;
    std::string alpha = "1";
};

int cmd_verify(const VerifyOptions& opt) {
    Instance inst = load_and_validate(opt.instance_path);
    Allocation alloc = allocation_from_json(load_json(opt.allocation_path));
    Rational alpha = parse_rational_flag(opt.alpha, "--alpha");

    std::vector<Rational> wmms;
    for (int i = 0; i < inst.n(); ++i) wmms.push_back(exact_wmms(inst, i).value);
    AlphaCheck check = verify_alpha(inst, alloc, wmms, alpha);

    std::printf("%-12s %-16s %-10s %s\n", "agent", "wmms", "ratio", "verdict");
    for (int i = 0; i < inst.n(); ++i) {
        std::string ratio = check.ratios[i].unbounded ? "unbounded" : check.ratios[i].value.str();
        std::printf("%-12s %-16s %-10s %s\n", inst.agents[i].c_str(), wmms[i].str().c_str(),
                    ratio.c_str(), check.pass[i] ? "pass" : "FAIL");
    }
    std::printf("%s at alpha %s\n", check.all_pass ? "PASS" : "FAIL", alpha.str().c_str());
    return check.all_pass ? kExitOk : kExitVerifyFailed;
}

struct GenOptions {
    std::string eps = "1/4";
    std::uint64_t seed = 0;
    int n = 2;
    int m = 4;
    int k = 2;
    std::string mode = "tiling";
    std::string output;
    std::string certificates;
};

int cmd_gen_table1(const GenOptions& opt) {
    save_json(opt.output, instance_to_json(example_table1(parse_rational_flag(opt.eps, "--eps"))));
    return kExitOk;
}

int cmd_gen_random(const GenOptions& opt) {
    save_json(opt.output, instance_to_json(gen_random(opt.seed, opt.n, opt.m)));
    return kExitOk;
}

int cmd_gen_canonical(const GenOptions& opt) {
    CanonicalMode mode;
    if (opt.mode == "tiling")
        mode = CanonicalMode::DirectTiling;
    else if (opt.mode == "pipeline")
        mode = CanonicalMode::Pipeline;
    else
        throw std::invalid_argument("unknown --mode '" + opt.mode + "'");
    GenCanonicalResult res = gen_canonical(opt.seed, opt.n, opt.m, mode);
    save_json(opt.output, instance_to_json(res.canon.inst));
    return kExitOk;
}

int cmd_gen_lowerbound(const GenOptions& opt) {
    LowerBoundFamily fam = gen_lower_bound(opt.k);
    // Small families ship fully expanded; large ones keep the compressed
    // group encoding.
    if (fam.inst.agent_count() <= 1000)
        save_json(opt.output, instance_to_json(fam.inst.expand()));
    else
        save_json(opt.output, grouped_to_json(fam.inst));
    if (!opt.certificates.empty()) save_json(opt.certificates, certificates_to_json(fam.certificates));

    LowerBoundReport rep = verify_lower_bound(fam.inst, fam.certificates);
    for (size_t g = 0; g < rep.groups.size(); ++g)
        std::printf("group %zu: upper %s, lower %s (w = %s)\n", g + 1,
                    rep.groups[g].upper_ok ? "ok" : "FAIL",
                    rep.groups[g].lower_ok ? "ok" : "FAIL", fam.weights[g].str().c_str());
    std::printf("sandwich %s: WMMS equals the weight in every group (k=%d, %s regime)\n",
                rep.ok() ? "closed" : "FAILED", fam.k, fam.deep_regime ? "deep" : "shallow");
    return rep.ok() ? kExitOk : kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted maximin share solvers for indivisible chores"};
    app.require_subcommand(1);

    WmmsOptions wopt;
    CLI::App* wmms_cmd = app.add_subcommand("wmms", "compute per-agent WMMS values");
    wmms_cmd->add_option("instance", wopt.instance_path)->required();
    auto* exact_flag = wmms_cmd->add_flag("--exact", wopt.exact, "exact search (default)");
    wmms_cmd->add_flag("--estimate", wopt.estimate, "(1+eps) estimator")->excludes(exact_flag);
    wmms_cmd->add_option("--eps", wopt.eps, "estimator accuracy");
    wmms_cmd->add_flag("--partitions", wopt.partitions, "include defining partitions (json)");
    wmms_cmd->add_flag("--json", wopt.json, "machine-readable output");

    SolveOptions sopt;
    CLI::App* solve_cmd = app.add_subcommand("solve", "compute an approximate-WMMS allocation");
    solve_cmd->add_option("instance", sopt.instance_path)->required();
    solve_cmd->add_option("--method", sopt.method, "canonical12 | lp");
    solve_cmd->add_option("--eps", sopt.eps, "lp estimator accuracy");
    solve_cmd->add_option("--alpha-max", sopt.alpha_max, "lp alpha search ceiling");
    solve_cmd->add_option("--seed", sopt.seed, "recorded in the metadata");
    solve_cmd->add_option("-o,--output", sopt.output, "allocation file");

    VerifyOptions vopt;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check an allocation against alpha");
    verify_cmd->add_option("instance", vopt.instance_path)->required();
    verify_cmd->add_option("allocation", vopt.allocation_path)->required();
    verify_cmd->add_option("--alpha", vopt.alpha)->required();

    GenOptions gopt;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate instances");
    gen_cmd->require_subcommand(1);
    CLI::App* g_table = gen_cmd->add_subcommand("table1", "the two-agent running example");
    g_table->add_option("--eps", gopt.eps)->required();
    g_table->add_option("-o,--output", gopt.output)->required();
    CLI::App* g_random = gen_cmd->add_subcommand("random", "seeded random instance");
    g_random->add_option("--seed", gopt.seed)->required();
    g_random->add_option("--n", gopt.n)->required();
    g_random->add_option("--m", gopt.m)->required();
    g_random->add_option("-o,--output", gopt.output)->required();
    CLI::App* g_canon = gen_cmd->add_subcommand("canonical", "certified canonical instance");
    g_canon->add_option("--seed", gopt.seed)->required();
    g_canon->add_option("--n", gopt.n)->required();
    g_canon->add_option("--m", gopt.m)->required();
    g_canon->add_option("--mode", gopt.mode, "tiling | pipeline");
    g_canon->add_option("-o,--output", gopt.output)->required();
    CLI::App* g_lower = gen_cmd->add_subcommand("lowerbound", "hardness family with certificates");
    g_lower->add_option("--k", gopt.k)->required();
    g_lower->add_option("-o,--output", gopt.output)->required();
    g_lower->add_option("--certificates", gopt.certificates, "certificate file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*wmms_cmd) return cmd_wmms(wopt);
        if (*solve_cmd) return cmd_solve(sopt);
        if (*verify_cmd) return cmd_verify(vopt);
        if (*g_table) return cmd_gen_table1(gopt);
        if (*g_random) return cmd_gen_random(gopt);
        if (*g_canon) return cmd_gen_canonical(gopt);
        if (*g_lower) return cmd_gen_lowerbound(gopt);
        std::cerr << "no subcommand\n";
        return kExitInputError;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}
