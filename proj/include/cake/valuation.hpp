#pragma once

#include "cake/piece.hpp"
#include "cake/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace cake {

struct Segment {
    Rat left;
    Rat right;
    Rat density;

    bool operator==(const Segment&) const = default;
};

// Piecewise-constant density on [0,1]. Pure; no query accounting.
class Valuation {
public:
    Valuation() = default;
    // Throws InvalidValuation unless the segments tile [0,1] with
    // non-negative densities and a positive total.
    explicit Valuation(std::vector<Segment> segments);

    const std::vector<Segment>& segments() const { return segs_; }
    Rat total() const { return total_; }
    Rat value(const Piece& p) const;
    Rat value(const Rat& left, const Rat& right) const;

    // Smallest y >= start with value(start, y) == target.
    Rat cut(const Rat& start, const Rat& target) const;
    // Smallest x with value(leftmost_prefix(p, x)) == target.
    Rat cut_in_piece(const Piece& p, const Rat& target) const;
    // Largest x with value(rightmost_suffix(p, x)) == target.
    Rat trim_point(const Piece& p, const Rat& target) const;

private:
    std::vector<Segment> segs_;
    Rat total_;
};

using Profile = std::vector<Valuation>;

class QueryCounter {
public:
    explicit QueryCounter(std::size_t agents = 0) : cuts_(agents, 0), evals_(agents, 0) {}

    void resize(std::size_t agents);
    void count_cut(int agent);
    void count_eval(int agent);

    std::uint64_t cuts(int agent) const { return cuts_.at(agent); }
    std::uint64_t evals(int agent) const { return evals_.at(agent); }
    std::uint64_t total() const { return total_; }
    std::size_t agents() const { return cuts_.size(); }

    // Exceeding the budget throws BudgetExhausted from the offending query.
    void set_budget(std::optional<std::uint64_t> budget) { budget_ = budget; }
    std::optional<std::uint64_t> budget() const { return budget_; }

private:
    void tick();

    std::vector<std::uint64_t> cuts_;
    std::vector<std::uint64_t> evals_;
    std::uint64_t total_ = 0;
    std::optional<std::uint64_t> budget_;
};

// Robertson-Webb query interface over a profile, with accounting and an
// optional trace stream. Agents are 0-based; labels are used in the trace.
class Oracle {
public:
    explicit Oracle(const Profile& profile);

    std::size_t agents() const { return profile_.size(); }
    const Profile& profile() const { return profile_; }
    const Valuation& valuation(int agent) const { return profile_.at(agent); }

    Rat eval(int agent, const Piece& p);
    Rat cut(int agent, const Rat& start, const Rat& target);
    Rat cut_in_piece(int agent, const Piece& p, const Rat& target);
    Rat trim_point(int agent, const Piece& p, const Rat& target);

    QueryCounter& counter() { return counter_; }
    const QueryCounter& counter() const { return counter_; }

    void set_trace(std::ostream* out) { trace_ = out; }
    void set_labels(std::vector<std::string> labels) { labels_ = std::move(labels); }
    const std::string& label(int agent) const { return labels_.at(agent); }
    void note(const std::string& line);

    // Memoised evals while a cache scope is open; only misses are counted.
    void open_cache();
    void close_cache();

private:
    const Profile& profile_;
    QueryCounter counter_;
    std::ostream* trace_ = nullptr;
    std::vector<std::string> labels_;
    int cache_depth_ = 0;
    std::map<std::pair<int, Piece>, Rat> cache_;
};

class CacheScope {
public:
    explicit CacheScope(Oracle& o) : o_(o) { o_.open_cache(); }
    ~CacheScope() { o_.close_cache(); }
    CacheScope(const CacheScope&) = delete;
    CacheScope& operator=(const CacheScope&) = delete;

private:
    Oracle& o_;
};

// k segments per agent with breakpoints on a 1/(4k) grid and integer
// densities in [min_density, 9]; the same seed always yields the same profile.
Profile random_instance(int n, int k, std::uint64_t seed, int min_density = 0);

std::string describe(const Valuation& v);

}  // namespace cake
