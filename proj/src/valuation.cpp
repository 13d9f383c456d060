#include "cake/valuation.hpp"

#include "cake/errors.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace cake {

Valuation::Valuation(std::vector<Segment> segments) : segs_(std::move(segments)) {
    if (segs_.empty()) throw InvalidValuation("no segments");
    std::sort(segs_.begin(), segs_.end(),
              [](const Segment& a, const Segment& b) { return a.left < b.left; });
    Rat at = 0;
    total_ = 0;
    for (const auto& s : segs_) {
        if (s.left != at)
            throw InvalidValuation("segments leave a gap or overlap at " + to_string(at));
        if (s.right <= s.left) throw InvalidValuation("empty segment at " + to_string(s.left));
        if (s.density < 0) throw InvalidValuation("negative density");
        total_ += s.density * (s.right - s.left);
        at = s.right;
    }
    if (at != 1) throw InvalidValuation("segments stop at " + to_string(at));
    if (total_ <= 0) throw InvalidValuation("total value is zero");
}

namespace {

// First segment ending after x.
std::vector<Segment>::const_iterator first_after(const std::vector<Segment>& segs, const Rat& x) {
    return std::partition_point(segs.begin(), segs.end(), [&](const Segment& s) { return s.right <= x; });
}

}  // namespace

Rat Valuation::value(const Rat& left, const Rat& right) const {
    Rat v = 0;
    for (auto it = first_after(segs_, left); it != segs_.end(); ++it) {
        const Segment& s = *it;
        if (s.left >= right) break;
        const Rat& lo = s.left > left ? s.left : left;
        const Rat& hi = s.right < right ? s.right : right;
        if (s.density != 0) v += s.density * (hi - lo);
    }
    return v;
}

Rat Valuation::value(const Piece& p) const {
    Rat v = 0;
    std::size_t j = 0;
    for (const auto& iv : p.intervals()) {
        j = std::max(j, static_cast<std::size_t>(first_after(segs_, iv.left) - segs_.begin()));
        for (std::size_t k = j; k < segs_.size() && segs_[k].left < iv.right; ++k) {
            const Segment& s = segs_[k];
            if (s.density == 0) continue;
            const Rat& lo = s.left > iv.left ? s.left : iv.left;
            const Rat& hi = s.right < iv.right ? s.right : iv.right;
            v += s.density * (hi - lo);
        }
    }
    return v;
}

Rat Valuation::cut(const Rat& start, const Rat& target) const {
    if (start < 0 || start > 1) throw EndpointOutOfRange("cut start " + to_string(start));
    if (target < 0) throw TargetExceedsAvailable("negative target");
    if (target == 0) return start;
    Rat acc = 0;
    for (auto it = first_after(segs_, start); it != segs_.end(); ++it) {
        const Segment& s = *it;
        if (s.density == 0) continue;
        const Rat& lo = s.left > start ? s.left : start;
        Rat here = s.density * (s.right - lo);
        if (acc + here >= target) return lo + (target - acc) / s.density;
        acc += here;
    }
    throw TargetExceedsAvailable("target " + to_string(target) + " from " + to_string(start));
}

Rat Valuation::cut_in_piece(const Piece& p, const Rat& target) const {
    if (target < 0) throw TargetExceedsAvailable("negative target");
    if (p.empty()) {
        if (target == 0) throw EndpointOutsidePiece("cut in empty piece");
        throw TargetExceedsAvailable("cut in empty piece");
    }
    if (target == 0) return p.left_extreme();
    Rat acc = 0;
    for (const auto& iv : p.intervals()) {
        Rat here = value(iv.left, iv.right);
        if (acc + here >= target) return cut(iv.left, target - acc);
        acc += here;
    }
    throw TargetExceedsAvailable("target " + to_string(target) + " in " + p.str());
}

Rat Valuation::trim_point(const Piece& p, const Rat& target) const {
    if (target < 0) throw TargetExceedsAvailable("negative target");
    if (p.empty()) throw TargetExceedsAvailable("trim of empty piece");
    if (target == 0) return p.right_extreme();
    Rat acc = 0;
    const auto& ivs = p.intervals();
    for (auto iv = ivs.rbegin(); iv != ivs.rend(); ++iv) {
        auto end = std::partition_point(segs_.begin(), segs_.end(), [&](const Segment& s) { return s.left < iv->right; });
        for (auto s = std::make_reverse_iterator(end); s != segs_.rend(); ++s) {
            if (s->right <= iv->left) break;
            if (s->density == 0) continue;
            const Rat& lo = s->left > iv->left ? s->left : iv->left;
            const Rat& hi = s->right < iv->right ? s->right : iv->right;
            Rat here = s->density * (hi - lo);
            if (acc + here >= target) return hi - (target - acc) / s->density;
            acc += here;
        }
    }
    throw TargetExceedsAvailable("trim target " + to_string(target) + " in " + p.str());
}

void QueryCounter::resize(std::size_t agents) {
    cuts_.assign(agents, 0);
    evals_.assign(agents, 0);
    total_ = 0;
}

void QueryCounter::tick() {
    ++total_;
    if (budget_ && total_ > *budget_)
        throw BudgetExhausted("query budget of " + std::to_string(*budget_) + " exhausted");
}

void QueryCounter::count_cut(int agent) {
    ++cuts_.at(agent);
    tick();
}

void QueryCounter::count_eval(int agent) {
    ++evals_.at(agent);
    tick();
}

Oracle::Oracle(const Profile& profile) : profile_(profile), counter_(profile.size()) {
    for (std::size_t i = 0; i < profile.size(); ++i) labels_.push_back(std::to_string(i + 1));
}

void Oracle::note(const std::string& line) {
    if (trace_) *trace_ << "S " << line << '\n';
}

void Oracle::open_cache() { ++cache_depth_; }

void Oracle::close_cache() {
    if (--cache_depth_ == 0) cache_.clear();
}

Rat Oracle::eval(int agent, const Piece& p) {
    if (cache_depth_ > 0) {
        auto key = std::make_pair(agent, p);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        Rat v = valuation(agent).value(p);
        counter_.count_eval(agent);
        if (trace_) *trace_ << "Q " << label(agent) << " EVAL " << p.str() << " -> " << to_string(v) << '\n';
        cache_.emplace(std::move(key), v);
        return v;
    }
    Rat v = valuation(agent).value(p);
    counter_.count_eval(agent);
    if (trace_) *trace_ << "Q " << label(agent) << " EVAL " << p.str() << " -> " << to_string(v) << '\n';
    return v;
}

Rat Oracle::cut(int agent, const Rat& start, const Rat& target) {
    Rat y = valuation(agent).cut(start, target);
    counter_.count_cut(agent);
    if (trace_)
        *trace_ << "Q " << label(agent) << " CUT " << to_string(start) << " " << to_string(target)
                << " -> " << to_string(y) << '\n';
    return y;
}

// Skipped intervals are answered by an Eval each; the interval holding the
// cut point costs one Cut.
Rat Oracle::cut_in_piece(int agent, const Piece& p, const Rat& target) {
    const Valuation& v = valuation(agent);
    if (target < 0) throw TargetExceedsAvailable("negative target");
    if (p.empty()) throw TargetExceedsAvailable("cut in empty piece");
    if (target == 0) return p.left_extreme();
    Rat acc = 0;
    for (const auto& iv : p.intervals()) {
        Rat here = v.value(iv.left, iv.right);
        if (acc + here >= target) return cut(agent, iv.left, target - acc);
        counter_.count_eval(agent);
        if (trace_)
            *trace_ << "Q " << label(agent) << " EVAL {[" << to_string(iv.left) << "," << to_string(iv.right)
                    << "]} -> " << to_string(here) << '\n';
        acc += here;
    }
    throw TargetExceedsAvailable("target " + to_string(target) + " in " + p.str());
}

// Mirror of cut_in_piece, walking from the right extreme.
Rat Oracle::trim_point(int agent, const Piece& p, const Rat& target) {
    const Valuation& v = valuation(agent);
    if (target < 0) throw TargetExceedsAvailable("negative target");
    if (p.empty()) throw TargetExceedsAvailable("trim of empty piece");
    if (target == 0) return p.right_extreme();
    Rat acc = 0;
    const auto& ivs = p.intervals();
    for (auto iv = ivs.rbegin(); iv != ivs.rend(); ++iv) {
        Rat here = v.value(iv->left, iv->right);
        if (acc + here >= target) {
            Rat x = v.trim_point(Piece::interval(iv->left, iv->right), target - acc);
            counter_.count_cut(agent);
            if (trace_)
                *trace_ << "Q " << label(agent) << " RCUT " << to_string(iv->right) << " "
                        << to_string(target - acc) << " -> " << to_string(x) << '\n';
            return x;
        }
        counter_.count_eval(agent);
        if (trace_)
            *trace_ << "Q " << label(agent) << " EVAL {[" << to_string(iv->left) << "," << to_string(iv->right)
                    << "]} -> " << to_string(here) << '\n';
        acc += here;
    }
    throw TargetExceedsAvailable("trim target " + to_string(target) + " in " + p.str());
}

Profile random_instance(int n, int k, std::uint64_t seed, int min_density) {
    std::mt19937_64 rng(seed);
    Profile out;
    const long grid = 4L * k;
    for (int a = 0; a < n; ++a) {
        std::set<long> cuts;
        while (static_cast<int>(cuts.size()) < k - 1) cuts.insert(1 + static_cast<long>(rng() % (grid - 1)));
        std::vector<long> marks{0};
        marks.insert(marks.end(), cuts.begin(), cuts.end());
        marks.push_back(grid);
        std::vector<Segment> segs;
        bool positive = false;
        for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
            long d = min_density + static_cast<long>(rng() % (10 - min_density));
            if (k == 1 && d == 0) d = 1;
            positive = positive || d > 0;
            segs.push_back({rat(marks[i], grid), rat(marks[i + 1], grid), rat(d)});
        }
        if (!positive) segs[rng() % segs.size()].density = 1;
        out.emplace_back(std::move(segs));
    }
    return out;
}

std::string describe(const Valuation& v) {
    std::string s;
    for (const auto& seg : v.segments())
        s += "seg " + to_string(seg.left) + " " + to_string(seg.right) + " " + to_string(seg.density) + "\n";
    return s;
}

}  // namespace cake
