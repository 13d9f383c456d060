#include "cake/base_cases.hpp"
#include "cake/core.hpp"
#include "cake/errors.hpp"
#include "cake/io.hpp"
#include "cake/main_protocol.hpp"
#include "cake/oracles.hpp"
#include "cake/partial.hpp"
#include "cake/snapshot.hpp"
#include "cake/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>

using namespace cake;

namespace {

enum Exit { Ok = 0, VerdictFailed = 1, BadInput = 2, OutOfBudget = 3, Bug = 4 };

struct RunFlags {
    std::string protocol = "main";
    std::string input;
    std::vector<long> random;  // n k
    std::uint64_t seed = 1;
    std::string mode = "adaptive";
    std::string threshold;
    std::uint64_t max_queries = 0;
    std::string trace;
    int cutter = 0;
};

struct Outcome {
    std::map<int, Piece> shares;
    bool budget_stop = false;
    std::string stop_reason;
    std::vector<std::pair<std::string, long>> stats;
};

Params make_params(const RunFlags& f, int n) {
    if (f.mode == "strict") {
        if (!f.threshold.empty()) std::cerr << "warning: --sig-threshold is ignored in strict mode\n";
        Params p = Params::strict(n);
        if (f.max_queries) p.max_queries = f.max_queries;
        return p;
    }
    Params p = f.threshold.empty() ? Params::adaptive(n) : Params::adaptive(n, parse_rat(f.threshold));
    if (f.max_queries) p.max_queries = f.max_queries;
    return p;
}

Outcome dispatch(const RunFlags& f, Oracle& oracle, ImaginaryLedger& ledger) {
    const int n = static_cast<int>(oracle.agents());
    std::vector<int> agents(n);
    std::iota(agents.begin(), agents.end(), 0);
    const Piece cake = Piece::whole();
    Outcome out;
    if (f.protocol != "main" && f.max_queries) oracle.counter().set_budget(f.max_queries);

    if (f.protocol == "divide-choose") {
        if (n != 2) throw UnsupportedParameters("divide-choose needs exactly 2 agents");
        out.shares = divide_and_choose(cake, 0, 1, oracle);
    } else if (f.protocol == "selfridge-conway") {
        if (n != 3) throw UnsupportedParameters("selfridge-conway needs exactly 3 agents");
        out.shares = selfridge_conway(cake, 0, 1, 2, oracle);
    } else if (f.protocol == "core") {
        if (f.cutter < 0 || f.cutter >= n) throw UnsupportedParameters("no agent " + std::to_string(f.cutter));
        CoreOutcome c = core(f.cutter, agents, cake, oracle, ledger);
        out.shares = c.shares;
        out.stats = {{"subcore_frames", c.stats.frames}, {"subcore_searched", c.stats.searched ? 1 : 0}};
    } else if (f.protocol == "prop-ef" || f.protocol == "connected") {
        PartialOutcome p = f.protocol == "prop-ef" ? proportional_ef_partial(cake, agents, oracle, ledger)
                                                   : connected_pieces(cake, agents, oracle, ledger);
        out.shares = p.shares;
        out.stats = {{"core_rounds", p.core_rounds},
                     {"subcore_calls", p.subcore_calls},
                     {"upgrades", p.upgrades},
                     {"literal_fallbacks", p.literal_fallbacks}};
    } else if (f.protocol == "main") {
        Params params = make_params(f, n);
        MainResult r = run_main(cake, agents, params, oracle, ledger);
        for (int a = 0; a < n; ++a) out.shares[a] = r.shares[a];
        out.budget_stop = !r.stopped.empty();
        out.stop_reason = r.stopped;
        const MainStats& s = r.stats;
        out.stats = {{"core_rounds", s.core_rounds},
                     {"snapshots", s.snapshots},
                     {"restarts", s.restarts},
                     {"resets", s.resets},
                     {"discrepancy_calls", s.discrepancy_calls},
                     {"discrepancy_splits", s.discrepancy_splits},
                     {"dominance_recursions", s.dominance_recursions},
                     {"goleft_runs", s.goleft_runs},
                     {"goleft_separations", s.goleft_separations},
                     {"exchanges", s.exchanges},
                     {"attachments", s.attachments},
                     {"conversions", s.conversions},
                     {"max_depth", s.max_depth},
                     {"subcore_fallbacks", s.subcore_fallbacks}};
    } else {
        throw UnsupportedParameters("unknown protocol " + f.protocol);
    }
    return out;
}

int cmd_run(const RunFlags& f) {
    Profile vals;
    if (!f.input.empty()) {
        vals = read_valuation_file(f.input);
    } else if (f.random.size() == 2) {
        if (f.random[0] < 1 || f.random[1] < 1) throw UnsupportedParameters("--random needs n >= 1 and k >= 1");
        vals = random_instance(static_cast<int>(f.random[0]), static_cast<int>(f.random[1]), f.seed);
    } else {
        throw UnsupportedParameters("give --input <file> or --random <n> <k>");
    }
    Oracle oracle(vals);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < vals.size(); ++i) labels.push_back(std::to_string(i));
    oracle.set_labels(labels);
    std::unique_ptr<std::ofstream> trace;
    if (!f.trace.empty()) {
        trace = std::make_unique<std::ofstream>(f.trace);
        if (!*trace) throw ParseError(0, "cannot write " + f.trace);
        oracle.set_trace(trace.get());
    }
    ImaginaryLedger ledger;

    Outcome out;
    try {
        out = dispatch(f, oracle, ledger);
    } catch (const BudgetExhausted& e) {
        std::cout << "stopped: " << e.what() << '\n';
        return OutOfBudget;
    }

    Allocation a;
    a.origin = Piece::whole();
    a.shares.assign(vals.size(), Piece());
    for (const auto& [agent, p] : out.shares) a.shares[agent] = p;
    a.residue = piece_subtract(a.origin, piece_union_all(a.shares));
    const bool connected = f.protocol == "connected";
    Verdicts v = verify_allocation(a, vals, connected);
    std::cout << "protocol " << f.protocol << '\n';
    write_report(std::cout, a, vals, v, &oracle.counter());
    for (const auto& [name, value] : out.stats) std::cout << "stat " << name << ' ' << value << '\n';
    if (trace) {
        *trace << "F\n";
        write_allocation(*trace, a);
    }

    bool pass = v.envy.ok && v.conservation;
    if (f.protocol == "divide-choose" || f.protocol == "selfridge-conway" || f.protocol == "main")
        pass = pass && v.proportional && v.complete;
    if (f.protocol == "prop-ef") pass = pass && v.proportional;
    if (connected) pass = pass && *v.connected && *v.third_share;
    if (out.budget_stop) {
        std::cout << "stopped: " << out.stop_reason << '\n';
        return OutOfBudget;
    }
    return pass ? Ok : VerdictFailed;
}

int cmd_verify(const std::string& allocation, const std::string& valuations) {
    Profile vals = read_valuation_file(valuations);
    Allocation a = read_allocation_file(allocation, vals.size());
    Verdicts v = verify_allocation(a, vals, false);
    write_report(std::cout, a, vals, v);
    return v.envy.ok && v.conservation ? Ok : VerdictFailed;
}

int cmd_oracle(const std::string& suite, int count, std::uint64_t seed) {
    std::vector<SuiteResult> results;
    if (suite == "subcore" || suite == "all") results.push_back(subcore_suite(count, seed));
    if (suite == "dominated" || suite == "all") results.push_back(dominated_suite(count, seed));
    if (suite == "cycles" || suite == "all") results.push_back(cycle_suite(4));
    if (results.empty()) throw UnsupportedParameters("unknown suite " + suite);
    bool ok = true;
    for (const SuiteResult& r : results) {
        std::cout << r.name << ": " << r.agreements << '/' << r.cases << " agree, " << r.positives
                  << " with a solution\n";
        for (const std::string& d : r.disagreements) std::cout << "  " << d << '\n';
        ok = ok && r.ok();
    }
    return ok ? Ok : VerdictFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact envy-free cake cutting"};
    app.require_subcommand(1);

    RunFlags rf;
    auto* run = app.add_subcommand("run", "Run a protocol and verify the result");
    run->add_option("--protocol", rf.protocol)
        ->check(CLI::IsMember({"main", "core", "prop-ef", "connected", "divide-choose", "selfridge-conway"}));
    auto* input = run->add_option("--input", rf.input, "Valuation file");
    auto* random = run->add_option("--random", rf.random, "Random instance: agents and segments per agent")
                       ->expected(2);
    input->excludes(random);
    run->add_option("--seed", rf.seed);
    run->add_option("--mode", rf.mode)->check(CLI::IsMember({"strict", "adaptive"}));
    run->add_option("--sig-threshold", rf.threshold, "Significance threshold p/q (adaptive mode)");
    run->add_option("--max-queries", rf.max_queries);
    run->add_option("--trace", rf.trace, "Write the query trace here");
    run->add_option("--cutter", rf.cutter, "Cutter for --protocol core");

    std::string alloc_file, val_file;
    auto* verify = app.add_subcommand("verify", "Check an allocation file against a valuation file");
    verify->add_option("allocation", alloc_file)->required();
    verify->add_option("valuations", val_file)->required();

    std::string suite = "all";
    int count = 100;
    std::uint64_t oracle_seed = 1;
    auto* oracle = app.add_subcommand("oracle", "Compare the engine with brute-force references");
    oracle->add_option("--suite", suite)->check(CLI::IsMember({"all", "subcore", "dominated", "cycles"}));
    oracle->add_option("--count", count);
    oracle->add_option("--seed", oracle_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : BadInput;
    }

    try {
        if (*run) return cmd_run(rf);
        if (*verify) return cmd_verify(alloc_file, val_file);
        return cmd_oracle(suite, count, oracle_seed);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return BadInput;
    } catch (const UnsupportedParameters& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return BadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad argument: " << e.what() << '\n';
        return BadInput;
    } catch (const ProtocolBug& e) {
        std::cerr << "protocol error: " << e.what() << '\n';
        return Bug;
    } catch (const CakeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Bug;
    }
}
