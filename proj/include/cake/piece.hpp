#pragma once

#include "cake/rational.hpp"

#include <string>
#include <vector>

namespace cake {

struct Interval {
    Rat left;
    Rat right;
};

bool operator==(const Interval& a, const Interval& b);

// Canonical finite union of closed subintervals of [0,1]: sorted, with
// touching intervals merged and zero-length ones dropped.
class Piece {
public:
    Piece() = default;

    static Piece normalize(std::vector<Interval> raw);
    static Piece interval(const Rat& left, const Rat& right);
    static Piece whole() { return interval(0, 1); }

    const std::vector<Interval>& intervals() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }
    Rat measure() const;
    // Only meaningful for non-empty pieces.
    const Rat& left_extreme() const { return parts_.front().left; }
    const Rat& right_extreme() const { return parts_.back().right; }

    std::string str() const;

    friend bool operator==(const Piece& a, const Piece& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const Piece& a, const Piece& b);

private:
    std::vector<Interval> parts_;
};

Piece piece_union(const Piece& a, const Piece& b);
Piece piece_subtract(const Piece& a, const Piece& b);
Piece piece_intersect(const Piece& a, const Piece& b);
Piece piece_union_all(const std::vector<Piece>& parts);

bool is_partition(const std::vector<Piece>& parts, const Piece& whole);
bool is_subset(const Piece& inner, const Piece& outer);
bool interior_disjoint(const Piece& a, const Piece& b);

// Part of p lying left of endpoint. endpoint may sit in a gap of p but not
// outside [left_extreme, right_extreme].
Piece leftmost_prefix(const Piece& p, const Rat& endpoint);
// Complement of leftmost_prefix within p.
Piece rightmost_suffix(const Piece& p, const Rat& endpoint);

// Maximal intervals of p, each as its own piece.
std::vector<Piece> components(const Piece& p);

}  // namespace cake
