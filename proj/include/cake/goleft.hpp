#pragma once

#include "cake/piece.hpp"
#include "cake/snapshot.hpp"
#include "cake/valuation.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cake {

// Nodes are agents. Edges are stored against classes (the piece sets a node
// currently holds), so an exchange moves in-edges along with the pieces.
// a -> b means a accepts the class b holds together with its attachments.
class PermutationGraph {
public:
    PermutationGraph() = default;
    // Self-loops only, every agent holding its own class, every class in T.
    explicit PermutationGraph(const std::vector<int>& agents);
    PermutationGraph(const std::vector<int>& agents, const std::map<int, int>& holder_of_class,
                     const std::set<std::pair<int, int>>& agent_to_class, const std::set<int>& finished_classes);

    const std::vector<int>& agents() const { return agents_; }
    int holder(int cls) const { return holder_.at(cls); }
    int class_of(int agent) const { return class_of_.at(agent); }
    bool points_to(int a, int b) const { return edges_.count({a, class_of(b)}) != 0; }
    std::vector<int> in_neighbours(int agent) const;
    bool in_T(int agent) const { return finished_.count(class_of(agent)) == 0; }
    bool any_in_T() const { return finished_.size() < agents_.size(); }

    void add_edge(int agent, int cls) { edges_.insert({agent, cls}); }
    void remove_edge(int agent, int cls) { edges_.erase({agent, cls}); }
    // Moves the class to T' and makes every node point to it.
    void finish_class(int cls);
    // cycle[i] takes the class held by cycle[i+1].
    void apply_exchange(const std::vector<int>& cycle);

    // In-degree >= 1 everywhere, exactly 1 on T, everyone points to T'.
    // Returns a description of the first violation, or an empty string.
    std::string violation() const;

private:
    std::vector<int> agents_;
    std::map<int, int> holder_;
    std::map<int, int> class_of_;
    std::set<std::pair<int, int>> edges_;
    std::set<int> finished_;
};

// A simple cycle through at least one T node, as [a0, a1, ...] with each a_i
// pointing to a_{i+1} and the last pointing to a0. Starts from the
// lowest-numbered T node and follows unique in-edges backwards. Throws
// InvariantViolation if the graph breaks its invariants.
std::vector<int> find_cycle_with_T_node(const PermutationGraph& g);

struct QuotaEvent {
    int phase = 1;  // 1: agents not yet attracted, 2: agents already attracted
    int chooser = -1;
    long taken = 0;
    long remaining = 0;  // working-set size left after the whole phase
    int n = 0;
    bool holds() const { return phase == 1 ? taken >= remaining : taken >= static_cast<long>(n) * remaining; }
};

// Quotas of successive choosers: ceil(size/(c+1)) in phase 1 and
// ceil(n*size/(n*c+1)) in phase 2, c counting choosers still to go.
std::vector<long> phase_quotas(int phase, long size, int choosers, int n);

struct GoLeftState {
    std::map<int, Piece> shares;
    Piece residue;
    Piece floating;  // extracted pieces neither held nor back in the residue
    std::vector<Snapshot> snapshots;
};

enum class GoLeftStatus { Separated, Insufficient, RolledBack, NoSeparation };

struct GoLeftOutcome {
    GoLeftStatus status = GoLeftStatus::NoSeparation;
    std::vector<int> dominated;
    GoLeftState state;  // last state that passed the envy check
    std::string reason;
    long exchanges = 0;
    long attachments = 0;
    long value_checks = 0;
    std::vector<QuotaEvent> quotas;
};

struct GoLeftHooks {
    // Complete envy-free division of a piece among a subset of agents.
    std::function<std::map<int, Piece>(const Piece& cake, const std::vector<int>& agents)> divide;
    std::function<bool(const std::map<int, Piece>& shares)> envy_free;
};

// Works on the snapshots at positions `working`, which must share one
// signature. Exchanges, shared pieces and attachments are applied one at a
// time and kept only when the resulting shares stay envy-free.
GoLeftOutcome goleft(GoLeftState state, const std::vector<int>& working, const std::vector<int>& agents,
                     Oracle& oracle, const GoLeftHooks& hooks);

// Position of `agent` in the class order: original holder 1, then extractors
// in extraction order, then the rest by id.
int class_index(const Snapshot& s, int cls, int agent, const std::vector<int>& agents);
std::vector<int> class_order(const Snapshot& s, int cls, const std::vector<int>& agents);

// The class piece with the attachments its current holder may use.
Piece held_piece(const Snapshot& s, int cls, const std::vector<int>& agents);

}  // namespace cake
