#include "cake/goleft.hpp"

#include "cake/errors.hpp"

#include <algorithm>

namespace cake {

PermutationGraph::PermutationGraph(const std::vector<int>& agents) : agents_(agents) {
    for (int a : agents) {
        holder_[a] = a;
        class_of_[a] = a;
        edges_.insert({a, a});
    }
}

PermutationGraph::PermutationGraph(const std::vector<int>& agents, const std::map<int, int>& holder_of_class,
                                   const std::set<std::pair<int, int>>& agent_to_class,
                                   const std::set<int>& finished_classes)
    : agents_(agents), holder_(holder_of_class), edges_(agent_to_class), finished_(finished_classes) {
    for (const auto& [cls, a] : holder_) class_of_[a] = cls;
}

std::vector<int> PermutationGraph::in_neighbours(int agent) const {
    std::vector<int> out;
    int cls = class_of(agent);
    for (int a : agents_)
        if (edges_.count({a, cls})) out.push_back(a);
    return out;
}

void PermutationGraph::finish_class(int cls) {
    finished_.insert(cls);
    for (int a : agents_) edges_.insert({a, cls});
}

void PermutationGraph::apply_exchange(const std::vector<int>& cycle) {
    std::vector<int> taken;
    for (std::size_t i = 0; i < cycle.size(); ++i) taken.push_back(class_of(cycle[(i + 1) % cycle.size()]));
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        holder_[taken[i]] = cycle[i];
        class_of_[cycle[i]] = taken[i];
    }
}

std::string PermutationGraph::violation() const {
    for (int a : agents_) {
        std::size_t in = in_neighbours(a).size();
        if (in == 0) return "agent " + std::to_string(a) + " has no in-edge";
        if (in_T(a) && in != 1) return "T node " + std::to_string(a) + " has in-degree " + std::to_string(in);
        if (!in_T(a))
            for (int b : agents_)
                if (!points_to(b, a)) return "agent " + std::to_string(b) + " misses T' node " + std::to_string(a);
    }
    return {};
}

std::vector<int> find_cycle_with_T_node(const PermutationGraph& g) {
    if (auto v = g.violation(); !v.empty()) throw InvariantViolation("permutation graph: " + v);
    std::vector<int> order = g.agents();
    std::sort(order.begin(), order.end());
    for (int start : order) {
        if (!g.in_T(start)) continue;
        std::vector<int> path{start};
        for (;;) {
            int cur = path.back();
            int pred = g.in_neighbours(cur).front();
            auto seen = std::find(path.begin(), path.end(), pred);
            if (seen != path.end()) {
                std::vector<int> cycle{pred};
                for (auto it = path.rbegin(); *it != pred; ++it) cycle.push_back(*it);
                return cycle;
            }
            if (!g.in_T(pred)) {
                std::vector<int> cycle{pred};
                for (auto it = path.rbegin(); it != path.rend(); ++it) cycle.push_back(*it);
                return cycle;
            }
            path.push_back(pred);
        }
    }
    throw InvariantViolation("permutation graph has no T node");
}

std::vector<long> phase_quotas(int phase, long size, int choosers, int n) {
    std::vector<long> out;
    for (int c = choosers; c >= 1; --c) {
        long q = phase == 1 ? (size + c) / (c + 1) : (static_cast<long>(n) * size + n * c) / (static_cast<long>(n) * c + 1);
        q = std::min(q, size);
        out.push_back(q);
        size -= q;
    }
    return out;
}

std::vector<int> class_order(const Snapshot& s, int cls, const std::vector<int>& agents) {
    std::vector<int> order{cls};
    for (const Extraction& e : s.extractions.at(cls)) order.push_back(e.extractor);
    std::vector<int> rest = agents;
    std::sort(rest.begin(), rest.end());
    for (int a : rest)
        if (std::find(order.begin(), order.end(), a) == order.end()) order.push_back(a);
    return order;
}

int class_index(const Snapshot& s, int cls, int agent, const std::vector<int>& agents) {
    auto order = class_order(s, cls, agents);
    return static_cast<int>(std::find(order.begin(), order.end(), agent) - order.begin()) + 1;
}

namespace {

int realized_count(const Snapshot& s, int cls, const std::vector<int>& agents) {
    return std::min(s.attached.at(cls), class_index(s, cls, s.holder.at(cls), agents) - 1);
}

Piece realized_part(const Snapshot& s, int cls, const std::vector<int>& agents) {
    Piece out;
    int upto = realized_count(s, cls, agents);
    for (int m = 0; m < upto; ++m) out = piece_union(out, s.extractions.at(cls)[m].piece);
    return out;
}

// Collects many small pieces so they can be merged in one pass.
struct Batch {
    std::vector<Interval> parts;
    void add(const Piece& p) { parts.insert(parts.end(), p.intervals().begin(), p.intervals().end()); }
    Piece piece() const { return Piece::normalize(parts); }
    bool empty() const { return parts.empty(); }
};

class Run {
public:
    Run(GoLeftState state, const std::vector<int>& working, const std::vector<int>& agents, Oracle& oracle,
        const GoLeftHooks& hooks)
        : st_(std::move(state)), work_(working), agents_(agents), oracle_(oracle), hooks_(hooks), graph_(agents) {
        n_ = static_cast<int>(agents.size());
        for (int a : agents) history_[a] = {a};
    }

    GoLeftOutcome go();

private:
    Snapshot& snap(int pos) { return st_.snapshots[pos]; }
    const Snapshot& first() const { return st_.snapshots[work_.front()]; }

    GoLeftOutcome finish(GoLeftStatus status, const std::string& reason) {
        out_.status = status;
        out_.reason = reason;
        out_.state = std::move(st_);
        oracle_.note("goleft " + reason);
        return std::move(out_);
    }

    // False when the envy check rejected the exchange.
    bool exchange(const std::vector<int>& cycle);
    // Empty when the attachment went through; otherwise why GoLeft stops.
    std::optional<GoLeftStatus> attach(int cls, std::string& reason);
    void release(Snapshot& s, int cls, int m, bool to_residue);
    void release_unattached(Snapshot& s, int keep_cls = -1, int keep_index = -1);
    // Applies the releases collected since the last flush.
    void flush();

    GoLeftState st_;
    std::vector<int> work_;
    std::vector<int> agents_;
    Oracle& oracle_;
    const GoLeftHooks& hooks_;
    PermutationGraph graph_;
    std::map<int, std::set<int>> history_;
    int n_ = 0;
    GoLeftOutcome out_;
    Batch to_residue_;
    Batch off_floating_;
};

void Run::release(Snapshot& s, int cls, int m, bool to_residue) {
    Extraction& e = s.extractions[cls][m];
    if (e.released) return;
    e.released = true;
    off_floating_.add(e.piece);
    if (to_residue) to_residue_.add(e.piece);
}

void Run::flush() {
    if (!off_floating_.empty()) st_.floating = piece_subtract(st_.floating, off_floating_.piece());
    if (!to_residue_.empty()) {
        to_residue_.add(st_.residue);
        st_.residue = to_residue_.piece();
    }
    off_floating_ = Batch();
    to_residue_ = Batch();
}

void Run::release_unattached(Snapshot& s, int keep_cls, int keep_index) {
    for (auto& [cls, list] : s.extractions)
        for (int m = s.attached[cls]; m < static_cast<int>(list.size()); ++m)
            if (!(cls == keep_cls && m == keep_index)) release(s, cls, m, true);
}

bool Run::exchange(const std::vector<int>& cycle) {
    if (cycle.size() < 2) return true;
    GoLeftState saved = st_;
    std::map<int, Batch> removed, added;
    Batch float_in, float_out;
    for (int pos : work_) {
        Snapshot& s = snap(pos);
        std::map<int, int> old_class;
        std::map<int, Rat> before;
        for (int a : cycle) {
            int cls = graph_.class_of(a);
            old_class[a] = cls;
            Piece held = held_piece(s, cls, agents_);
            before[a] = oracle_.eval(a, held);
            removed[a].add(held);
            float_in.add(realized_part(s, cls, agents_));
        }
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            int cls = old_class[cycle[(i + 1) % cycle.size()]];
            s.holder[cls] = cycle[i];
            s.history[cls].insert(cycle[i]);
        }
        for (int a : cycle) {
            int cls = old_class[cycle[(std::find(cycle.begin(), cycle.end(), a) - cycle.begin() + 1) % cycle.size()]];
            Piece held = held_piece(s, cls, agents_);
            added[a].add(held);
            float_out.add(realized_part(s, cls, agents_));
            ++out_.value_checks;
            if (oracle_.eval(a, held) != before[a])
                throw InvariantViolation("exchange changed agent " + std::to_string(a) + "'s value in snapshot " +
                                         std::to_string(s.id));
        }
    }
    for (int a : cycle) {
        added[a].add(piece_subtract(st_.shares[a], removed[a].piece()));
        st_.shares[a] = added[a].piece();
    }
    float_in.add(st_.floating);
    st_.floating = piece_subtract(float_in.piece(), float_out.piece());
    for (std::size_t i = 0; i < cycle.size(); ++i) history_[graph_.class_of(cycle[(i + 1) % cycle.size()])].insert(cycle[i]);
    graph_.apply_exchange(cycle);
    ++out_.exchanges;
    if (!hooks_.envy_free(st_.shares)) {
        st_ = std::move(saved);
        return false;
    }
    return true;
}

std::optional<GoLeftStatus> Run::attach(int cls, std::string& reason) {
    const int attached = first().attached.at(cls);
    const int l = attached + 1;
    const std::vector<int> order = class_order(first(), cls, agents_);
    const std::vector<int> late(order.begin() + l, order.end());
    const std::vector<int> early(order.begin(), order.begin() + l);

    auto q1 = phase_quotas(1, static_cast<long>(work_.size()), static_cast<int>(late.size()), n_);
    long left1 = static_cast<long>(work_.size());
    for (long q : q1) left1 -= q;
    auto q2 = phase_quotas(2, left1, static_cast<int>(early.size()), n_);
    long left2 = left1;
    for (long q : q2) left2 -= q;
    if (left2 <= 0) {
        reason = "working set of " + std::to_string(work_.size()) + " cannot survive attachment " + std::to_string(l) +
                 " on class " + std::to_string(cls);
        return GoLeftStatus::Insufficient;
    }

    GoLeftState saved = st_;
    std::vector<int> saved_work = work_;

    auto take = [&](long q, const std::function<Rat(const Snapshot&)>& score) {
        std::vector<std::pair<Rat, std::size_t>> ranked;
        for (std::size_t t = 0; t < work_.size(); ++t) ranked.emplace_back(score(snap(work_[t])), t);
        std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<std::size_t> chosen;
        for (long c = 0; c < q; ++c) chosen.push_back(ranked[c].second);
        std::sort(chosen.begin(), chosen.end());
        std::vector<int> picked, kept;
        for (std::size_t t = 0; t < work_.size(); ++t)
            (std::binary_search(chosen.begin(), chosen.end(), t) ? picked : kept).push_back(work_[t]);
        work_ = kept;
        return picked;
    };

    for (std::size_t c = 0; c < late.size(); ++c) {
        int o = late[c];
        auto picked = take(q1[c], [&](const Snapshot& s) {
            Piece attached_part;
            for (int m = 0; m < attached; ++m) attached_part = piece_union(attached_part, s.extractions.at(cls)[m].piece);
            return bonus(oracle_, s, o, cls) - oracle_.eval(o, attached_part);
        });
        for (int pos : picked) release_unattached(snap(pos));
        flush();
        out_.quotas.push_back(QuotaEvent{1, o, q1[c], left1, n_});
    }

    Batch shared_parts;
    for (std::size_t c = 0; c < early.size(); ++c) {
        int r = early[c];
        auto picked = take(q2[c], [&](const Snapshot& s) { return oracle_.eval(r, s.extractions.at(cls)[attached].piece); });
        for (int pos : picked) {
            Snapshot& s = snap(pos);
            shared_parts.add(s.extractions[cls][attached].piece);
            release(s, cls, attached, false);
            release_unattached(s);
        }
        flush();
        out_.quotas.push_back(QuotaEvent{2, r, q2[c], left2, n_});
    }
    const Piece shared = shared_parts.piece();
    if (!shared.empty()) {
        for (const auto& [a, p] : hooks_.divide(shared, early)) st_.shares[a] = piece_union(st_.shares[a], p);
        if (!hooks_.envy_free(st_.shares)) {
            st_ = std::move(saved);
            work_ = std::move(saved_work);
            reason = "sharing the phase-two pieces broke envy-freeness";
            return GoLeftStatus::RolledBack;
        }
    }

    const int extractor = first().extractions.at(cls)[attached].extractor;
    std::map<int, Batch> gained;
    Batch realized;
    for (int pos : work_) {
        Snapshot& s = snap(pos);
        s.attached[cls] = attached + 1;
        if (realized_count(s, cls, agents_) == attached + 1) {
            const Piece& e = s.extractions[cls][attached].piece;
            gained[s.holder[cls]].add(e);
            realized.add(e);
        }
    }
    for (auto& [a, b] : gained) {
        b.add(st_.shares[a]);
        st_.shares[a] = b.piece();
    }
    if (!realized.empty()) st_.floating = piece_subtract(st_.floating, realized.piece());
    ++out_.attachments;
    if (!hooks_.envy_free(st_.shares)) {
        st_ = std::move(saved);
        work_ = std::move(saved_work);
        reason = "attachment " + std::to_string(l) + " on class " + std::to_string(cls) + " broke envy-freeness";
        return GoLeftStatus::RolledBack;
    }
    graph_.remove_edge(graph_.holder(cls), cls);
    graph_.add_edge(extractor, cls);
    if (attached + 1 == n_ - 1) graph_.finish_class(cls);
    if (auto v = graph_.violation(); !v.empty()) throw InvariantViolation("permutation graph: " + v);
    oracle_.note("goleft attached extraction " + std::to_string(l) + " of class " + std::to_string(cls) +
                 ", working set " + std::to_string(work_.size()));
    return std::nullopt;
}

GoLeftOutcome Run::go() {
    if (work_.empty()) return finish(GoLeftStatus::Insufficient, "empty working set");
    const long budget = static_cast<long>(n_) * n_ + n_;
    for (long step = 0; step <= budget; ++step) {
        if (!graph_.any_in_T()) return finish(GoLeftStatus::NoSeparation, "every class is fully attached");
        std::vector<int> cycle = find_cycle_with_T_node(graph_);
        if (!exchange(cycle)) return finish(GoLeftStatus::RolledBack, "exchange broke envy-freeness");

        std::vector<int> t_nodes;
        for (int a : cycle)
            if (graph_.in_T(a)) t_nodes.push_back(a);
        std::sort(t_nodes.begin(), t_nodes.end());
        for (int a : t_nodes) {
            int cls = graph_.class_of(a);
            if (first().attached.at(cls) == static_cast<int>(first().extractions.at(cls).size())) {
                std::vector<int> A(history_[cls].begin(), history_[cls].end());
                if (A.size() >= agents_.size()) return finish(GoLeftStatus::NoSeparation, "every agent held the class");
                out_.dominated = A;
                return finish(GoLeftStatus::Separated, "separated on class " + std::to_string(cls));
            }
        }
        std::string reason;
        if (auto stop = attach(graph_.class_of(t_nodes.front()), reason)) return finish(*stop, reason);
    }
    throw InvariantViolation("GoLeft made no progress");
}

}  // namespace

Piece held_piece(const Snapshot& s, int cls, const std::vector<int>& agents) {
    return piece_union(s.pieces.at(cls), realized_part(s, cls, agents));
}

GoLeftOutcome goleft(GoLeftState state, const std::vector<int>& working, const std::vector<int>& agents,
                     Oracle& oracle, const GoLeftHooks& hooks) {
    return Run(std::move(state), working, agents, oracle, hooks).go();
}

}  // namespace cake
