#include "cake/main_protocol.hpp"

#include "cake/base_cases.hpp"
#include "cake/core.hpp"
#include "cake/discrepancy.hpp"
#include "cake/errors.hpp"
#include "cake/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

namespace cake {

namespace {

struct Context {
    const Params& params;
    Oracle& oracle;
    ImaginaryLedger& ledger;
    MainStats& stats;
    // Last root-level state that passed its checkpoint.
    std::vector<Piece> good_shares;
    Piece good_residue;
};

class Level {
public:
    Level(Context& ctx, Piece cake, std::vector<int> agents, int depth)
        : ctx_(ctx), cake_(std::move(cake)), agents_(std::move(agents)), depth_(depth) {
        for (int a : agents_) shares_[a] = Piece();
        ctx_.stats.max_depth = std::max(ctx_.stats.max_depth, depth_);
    }

    std::map<int, Piece> run();
    std::map<int, Piece> run_from_discrepancy(const Piece& piece, int trimmer, const Rat& trimmer_bonus);
    std::map<int, Piece> run_from_goleft(const LevelState& state);

private:
    enum class PassResult { Ready, Split };

    const Profile& vals() const { return ctx_.oracle.profile(); }
    Rat value(int a, const Piece& p) { return ctx_.oracle.eval(a, p); }
    long size() const { return static_cast<long>(agents_.size()); }
    long working_set() const { return std::max(8L, size() * size() + 2); }

    std::vector<Piece> share_vector() const;
    void checkpoint(const std::string& phase);
    void commit(const std::map<int, Piece>& add, const std::string& phase);
    Piece core_round(int cutter, bool snapshot);
    int next_cutter();
    bool settle_if_exhausted();
    std::map<int, Piece> divide(const Piece& cake, const std::vector<int>& agents);
    void hand_over(const std::vector<int>& group, const std::string& phase);
    void tighten_band();
    PassResult extraction_pass();
    void return_floating();
    bool group_dominated(const std::vector<int>& group);
    bool convert_and_recurse(const std::vector<int>& group);
    std::map<int, Piece> result();
    bool base_case();
    // True when the split finished the level.
    bool discrepancy_step(const Piece& piece, int trimmer, const Rat& trimmer_bonus);
    // True when a recursion finished the level.
    bool goleft_step(const std::vector<int>& working);
    std::map<int, Piece> machinery(long target);

    Context& ctx_;
    Piece cake_;
    std::vector<int> agents_;
    int depth_;
    std::map<int, Piece> shares_;
    Piece residue_;
    Piece floating_;
    std::map<int, long> cutter_uses_;
    std::vector<Snapshot> snaps_;
};

std::vector<Piece> Level::share_vector() const {
    std::vector<Piece> out(ctx_.oracle.agents());
    for (const auto& [a, p] : shares_) out[a] = p;
    return out;
}

void Level::checkpoint(const std::string& phase) {
    ++ctx_.stats.checkpoints;
    std::vector<Piece> shares = share_vector();
    EnvyCheck ef = is_envy_free_among(shares, agents_, vals());
    if (!ef)
        throw InvariantViolation("envy after " + phase + ": agent " + std::to_string(ef.witness->envier) +
                                 " envies agent " + std::to_string(ef.witness->envied));
    std::vector<Piece> parts;
    for (const auto& [a, p] : shares_) parts.push_back(p);
    parts.push_back(residue_);
    parts.push_back(floating_);
    if (!is_partition(parts, cake_)) throw InvariantViolation("conservation fails after " + phase);
    if (depth_ == 0) {
        ctx_.good_shares = shares;
        ctx_.good_residue = piece_union(residue_, floating_);
    }
}

void Level::commit(const std::map<int, Piece>& add, const std::string& phase) {
    for (const auto& [a, p] : add) shares_[a] = piece_union(shares_[a], p);
    checkpoint(phase);
}

Piece Level::core_round(int cutter, bool snapshot) {
    CoreOutcome c = core(cutter, agents_, residue_, ctx_.oracle, ctx_.ledger);
    ++ctx_.stats.core_rounds;
    ++cutter_uses_[cutter];
    if (c.stats.searched) ++ctx_.stats.subcore_fallbacks;
    residue_ = c.leftover;
    if (snapshot) {
        snaps_.push_back(Snapshot::from_core(static_cast<int>(snaps_.size()), cutter, c.shares));
        ++ctx_.stats.snapshots;
    }
    commit(c.shares, "Core round");
    return residue_;
}

// Least-used cutter among agents who value the residue; -1 if none does.
int Level::next_cutter() {
    int best = -1;
    for (int a : agents_) {
        if (value(a, residue_) == 0) continue;
        if (best == -1 || cutter_uses_[a] < cutter_uses_[best]) best = a;
    }
    return best;
}

// Finishes the level when nobody values the residue: it goes to the first
// agent, which nobody can envy.
bool Level::settle_if_exhausted() {
    if (!floating_.empty()) return false;
    if (!residue_.empty()) {
        for (int a : agents_)
            if (value(a, residue_) > 0) return false;
        shares_[agents_.front()] = piece_union(shares_[agents_.front()], residue_);
        residue_ = Piece();
    }
    checkpoint("final residue");
    return true;
}

std::map<int, Piece> Level::divide(const Piece& cake, const std::vector<int>& agents) {
    return Level(ctx_, cake, agents, depth_ + 1).run();
}

void Level::hand_over(const std::vector<int>& group, const std::string& phase) {
    ++ctx_.stats.dominance_recursions;
    Piece rest = residue_;
    auto add = divide(rest, group);
    residue_ = Piece();
    commit(add, phase);
}

void Level::tighten_band() {
    const Rat& s = ctx_.params.threshold;
    const Rat low = s * s;
    // Bonuses are fixed by the snapshot geometry.
    std::vector<std::tuple<int, Rat>> bonuses;
    for (const Snapshot& snap : snaps_)
        for (int i : agents_)
            for (int k : agents_)
                if (k != i) {
                    Rat b = bonus(ctx_.oracle, snap, i, k);
                    if (b > 0) bonuses.emplace_back(i, b);
                }
    for (;;) {
        std::map<int, Rat> rest;
        for (int a : agents_) rest[a] = value(a, residue_);
        int cutter = -1;
        for (const auto& [i, b] : bonuses) {
            if (rest[i] == 0) continue;
            Rat ratio = b / rest[i];
            if (ratio > low && ratio * ratio < s) {
                cutter = i;
                break;
            }
        }
        if (cutter == -1) return;
        ++ctx_.stats.band_rounds;
        core_round(cutter, false);
    }
}

void Level::return_floating() {
    residue_ = piece_union(residue_, floating_);
    floating_ = Piece();
}

Level::PassResult Level::extraction_pass() {
    const long reset_cap = static_cast<long>(snaps_.size()) * size() * size() + 1;
    long resets = 0;
    for (;;) {
        bool restart = false;
        for (Snapshot& snap : snaps_) {
            for (int k : agents_) {
                ExtractionResult res = extract_for_piece(snap, k, residue_, agents_, ctx_.params, ctx_.oracle);
                if (!res.discrepant) {
                    for (Extraction& e : res.extracted) {
                        floating_ = piece_union(floating_, e.piece);
                        snap.extractions[k].push_back(std::move(e));
                    }
                    residue_ = res.residue;
                    continue;
                }
                // Every extraction of this pass goes back before the discrepancy
                // protocol runs.
                for (Snapshot& t : snaps_)
                    for (auto& [cls, list] : t.extractions) list.clear();
                return_floating();
                if (discrepancy_step(res.discrepant_piece, res.trimmer, res.trimmer_bonus)) return PassResult::Split;
                ++ctx_.stats.resets;
                if (++resets > reset_cap) throw InvariantViolation("extraction resets exceed their bound");
                restart = true;
                break;
            }
            if (restart) break;
        }
        if (!restart) {
            checkpoint("extraction pass");
            return PassResult::Ready;
        }
    }
}

bool Level::group_dominated(const std::vector<int>& group) {
    Allocation alloc;
    alloc.shares = share_vector();
    alloc.residue = residue_;
    for (int i : agents_) {
        if (std::find(group.begin(), group.end(), i) != group.end()) continue;
        for (int j : group)
            if (!dominates(alloc, i, j, vals())) return false;
    }
    return true;
}

// Core rounds until the GoLeft set is dominated, then recursion on it. Falls
// back to any dominated set once the round cap is reached. False when
// neither appears, so the caller regenerates snapshots.
bool Level::convert_and_recurse(const std::vector<int>& group) {
    ++ctx_.stats.conversions;
    const long cap = 8 * size() * size();
    for (long round = 0;; ++round) {
        if (group_dominated(group)) {
            ++ctx_.stats.conversions_confirmed;
            if (!residue_.empty()) ++ctx_.stats.conversions_nonvacuous;
            hand_over(group, "recursion on the GoLeft set");
            return true;
        }
        if (settle_if_exhausted()) return true;
        if (round >= cap) break;
        int cutter = next_cutter();
        core_round(cutter, false);
    }
    if (auto other = find_dominated_set(share_vector(), residue_, agents_, vals())) {
        ++ctx_.stats.conversions_substituted;
        hand_over(*other, "recursion on a dominated set");
        return true;
    }
    return false;
}

bool Level::discrepancy_step(const Piece& piece, int trimmer, const Rat& trimmer_bonus) {
    ++ctx_.stats.discrepancy_calls;
    residue_ = piece_subtract(residue_, piece);
    floating_ = piece;
    checkpoint("discrepant piece set aside");
    CoreRunner runner = [this](int cutter, const Piece&) { return core_round(cutter, false); };
    DiscrepancyOutcome d = discrepancy(piece, trimmer, trimmer_bonus, residue_, agents_, ctx_.params, ctx_.oracle,
                                       runner, 64L * size() * size() + 64);
    if (d.split) {
        ++ctx_.stats.discrepancy_splits;
        ctx_.stats.splits.emplace_back(d.D, d.D_prime);
        auto add = divide(piece, d.D);
        for (const auto& [a, p] : divide(residue_, d.D_prime)) add[a] = piece_union(add[a], p);
        floating_ = Piece();
        residue_ = Piece();
        commit(add, "discrepancy split");
        return true;
    }
    floating_ = Piece();
    residue_ = piece_union(residue_, piece);
    checkpoint("discrepancy without split");
    return false;
}

bool Level::goleft_step(const std::vector<int>& working) {
    ++ctx_.stats.goleft_runs;
    GoLeftHooks hooks;
    hooks.divide = [this](const Piece& p, const std::vector<int>& g) { return divide(p, g); };
    hooks.envy_free = [this](const std::map<int, Piece>& sh) {
        std::vector<Piece> v(ctx_.oracle.agents());
        for (const auto& [a, p] : sh) v[a] = p;
        return static_cast<bool>(is_envy_free_among(v, agents_, vals()));
    };
    GoLeftOutcome g = goleft(GoLeftState{shares_, residue_, floating_, snaps_}, working, agents_, ctx_.oracle, hooks);
    shares_ = std::move(g.state.shares);
    residue_ = std::move(g.state.residue);
    floating_ = std::move(g.state.floating);
    snaps_ = std::move(g.state.snapshots);
    ctx_.stats.exchanges += g.exchanges;
    ctx_.stats.attachments += g.attachments;
    ctx_.stats.value_checks += g.value_checks;
    ctx_.stats.quotas.insert(ctx_.stats.quotas.end(), g.quotas.begin(), g.quotas.end());
    return_floating();
    checkpoint("GoLeft");
    switch (g.status) {
    case GoLeftStatus::Separated:
        ++ctx_.stats.goleft_separations;
        ctx_.stats.separations.push_back(g.dominated);
        return convert_and_recurse(g.dominated);
    case GoLeftStatus::Insufficient: ++ctx_.stats.goleft_insufficient; break;
    case GoLeftStatus::RolledBack: ++ctx_.stats.goleft_rolled_back; break;
    case GoLeftStatus::NoSeparation: ++ctx_.stats.goleft_no_separation; break;
    }
    return false;
}

std::map<int, Piece> Level::result() {
    std::map<int, Piece> out;
    for (int a : agents_) out[a] = shares_[a];
    return out;
}

// Up to three agents, a worthless cake, or no cake at all.
bool Level::base_case() {
    if (cake_.empty() || agents_.empty()) return true;
    if (settle_if_exhausted()) return true;
    std::map<int, Piece> add;
    if (agents_.size() == 1) {
        add[agents_[0]] = cake_;
    } else if (agents_.size() == 2) {
        add = divide_and_choose(cake_, agents_[0], agents_[1], ctx_.oracle);
    } else if (agents_.size() == 3) {
        add = selfridge_conway(cake_, agents_[0], agents_[1], agents_[2], ctx_.oracle);
    } else {
        return false;
    }
    residue_ = Piece();
    commit(add, "base case");
    return true;
}

std::map<int, Piece> Level::machinery(long target) {
    for (int restart = 0; restart <= ctx_.params.max_restarts; ++restart) {
        if (restart > 0) ++ctx_.stats.restarts;
        snaps_.clear();
        for (long r = 0; r < target; ++r) {
            if (settle_if_exhausted()) return result();
            core_round(next_cutter(), true);
        }
        tighten_band();
        if (settle_if_exhausted()) return result();
        if (auto group = find_dominated_set(share_vector(), residue_, agents_, vals())) {
            hand_over(*group, "recursion on a dominated set");
            return result();
        }
        if (extraction_pass() == PassResult::Split) return result();

        std::vector<int> ids = find_isomorphic_subset(snaps_, working_set());
        if (ids.empty()) {
            ++ctx_.stats.missing_iso_group;
            ctx_.oracle.note("no isomorphic group of " + std::to_string(working_set()) + " among " +
                             std::to_string(snaps_.size()) + " snapshots");
        } else if (goleft_step(ids)) {
            return result();
        }
        return_floating();
        target = std::min(2 * target, ctx_.params.snapshot_cap);
    }
    throw BudgetExhausted("snapshot regeneration limit reached");
}

std::map<int, Piece> Level::run() {
    residue_ = cake_;
    if (base_case()) return result();
    return machinery(working_set());
}

std::map<int, Piece> Level::run_from_discrepancy(const Piece& piece, int trimmer, const Rat& trimmer_bonus) {
    residue_ = cake_;
    checkpoint("start");
    if (discrepancy_step(piece, trimmer, trimmer_bonus)) return result();
    if (base_case()) return result();
    return machinery(working_set());
}

std::map<int, Piece> Level::run_from_goleft(const LevelState& state) {
    shares_ = state.shares;
    for (int a : agents_) shares_[a];
    residue_ = state.residue;
    snaps_ = state.snapshots;
    for (const Snapshot& s : snaps_)
        for (const auto& [cls, list] : s.extractions)
            for (const Extraction& e : list)
                if (!e.released) floating_ = piece_union(floating_, e.piece);
    checkpoint("start");
    std::vector<int> working = state.working;
    if (working.empty()) working = find_isomorphic_subset(snaps_, working_set());
    if (working.empty()) throw InsufficientSnapshots("no isomorphic group in the given snapshots");
    if (goleft_step(working)) return result();
    return_floating();
    if (settle_if_exhausted()) return result();
    return machinery(working_set());
}

}  // namespace

namespace {

MainResult drive(const Piece& cake, const std::vector<int>& agents, const Params& params, Oracle& oracle,
                 ImaginaryLedger& ledger, const std::function<std::map<int, Piece>(Level&)>& body) {
    MainResult out;
    Context ctx{params, oracle, ledger, out.stats, std::vector<Piece>(oracle.agents()), cake};
    if (params.max_queries) oracle.counter().set_budget(params.max_queries);
    try {
        Level level(ctx, cake, agents, 0);
        auto shares = body(level);
        out.shares.assign(oracle.agents(), Piece());
        std::vector<Piece> given;
        for (const auto& [a, p] : shares) {
            out.shares[a] = p;
            given.push_back(p);
        }
        out.residue = piece_subtract(cake, piece_union_all(given));
        out.complete = out.residue.empty();
    } catch (const BudgetExhausted& e) {
        out.shares = ctx.good_shares;
        out.residue = ctx.good_residue;
        out.complete = false;
        out.stopped = e.what();
    }
    return out;
}

}  // namespace

MainResult run_main(const Piece& cake, const std::vector<int>& agents, const Params& params, Oracle& oracle,
                    ImaginaryLedger& ledger) {
    return drive(cake, agents, params, oracle, ledger, [](Level& l) { return l.run(); });
}

MainResult run_main_from_discrepancy(const Piece& cake, const Piece& piece, int trimmer, const Rat& trimmer_bonus,
                                     const std::vector<int>& agents, const Params& params, Oracle& oracle,
                                     ImaginaryLedger& ledger) {
    if (!is_subset(piece, cake)) throw InvariantViolation("discrepant piece lies outside the cake");
    return drive(cake, agents, params, oracle, ledger,
                 [&](Level& l) { return l.run_from_discrepancy(piece, trimmer, trimmer_bonus); });
}

MainResult run_main_from_goleft(const Piece& cake, const LevelState& state, const std::vector<int>& agents,
                                const Params& params, Oracle& oracle, ImaginaryLedger& ledger) {
    return drive(cake, agents, params, oracle, ledger, [&](Level& l) { return l.run_from_goleft(state); });
}

}  // namespace cake
