#pragma once

#include "cake/goleft.hpp"
#include "cake/piece.hpp"
#include "cake/valuation.hpp"

#include <map>
#include <optional>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace cake {

// Brute-force reference procedures. They share no code with the engine
// beyond exact valuation arithmetic and are meant for small inputs only.

// Searches for shares, one suffix of a distinct piece per agent, with some
// piece left untouched, nobody preferring an untouched piece or another
// agent's share, and every agent reaching its benchmark. Preferences are
// weak and physical. Splits each cut range at every breakpoint and solves the
// resulting linear systems by vertex enumeration. Returns a witness.
std::optional<std::map<int, Piece>> brute_force_neat(const std::vector<Piece>& pieces, const std::vector<int>& agents,
                                                     const std::map<int, Rat>& benchmarks, const Profile& vals);

// Every nonempty proper subset (as sorted agent lists) whose members are all
// dominated by every agent outside it.
std::vector<std::vector<int>> all_dominated_sets(const std::vector<Piece>& shares, const Piece& residue,
                                                 const std::vector<int>& agents, const Profile& vals);

// Plain description of a permutation graph: agent a points to agent b when
// (a, b) is in `edges`; `finished` lists the nodes outside T.
struct SmallGraph {
    int nodes = 0;
    std::set<std::pair<int, int>> edges;
    std::set<int> finished;

    bool valid() const;
    PermutationGraph to_graph() const;
};

// All graphs on `nodes` nodes meeting the in-degree and T' rules.
std::vector<SmallGraph> all_valid_graphs(int nodes);

// Every simple directed cycle through at least one T node, each rotated to
// start at its smallest node.
std::set<std::vector<int>> all_cycles_with_T_node(const SmallGraph& g);

// Agreement runs between the engine and the reference procedures above.
struct SuiteResult {
    std::string name;
    long cases = 0;
    long agreements = 0;
    long positives = 0;  // cases where a solution, set or cycle exists
    std::vector<std::string> disagreements;
    bool ok() const { return cases > 0 && agreements == cases; }
};

// SubCore on tiny instances (at most three agents, one more piece than
// agents, random benchmarks) against brute_force_neat, in both directions.
SuiteResult subcore_suite(int count, std::uint64_t seed);
// find_dominated_set against all_dominated_sets, up to `max_agents` agents.
SuiteResult dominated_suite(int count, std::uint64_t seed, int max_agents = 6);
// find_cycle_with_T_node against all_cycles_with_T_node on every valid graph.
SuiteResult cycle_suite(int max_nodes = 4);

}  // namespace cake
