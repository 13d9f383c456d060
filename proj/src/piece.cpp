#include "cake/piece.hpp"

#include "cake/errors.hpp"

#include <algorithm>

namespace cake {

bool operator==(const Interval& a, const Interval& b) {
    return a.left == b.left && a.right == b.right;
}

Piece Piece::normalize(std::vector<Interval> raw) {
    for (const auto& iv : raw) {
        if (iv.left < 0 || iv.left > 1 || iv.right < 0 || iv.right > 1)
            throw EndpointOutOfRange("interval [" + to_string(iv.left) + "," +
                                     to_string(iv.right) + "] leaves [0,1]");
        if (iv.left > iv.right)
            throw EndpointOutOfRange("interval [" + to_string(iv.left) + "," +
                                     to_string(iv.right) + "] is reversed");
    }
    raw.erase(std::remove_if(raw.begin(), raw.end(),
                             [](const Interval& iv) { return iv.left == iv.right; }),
              raw.end());
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
        return a.left < b.left || (a.left == b.left && a.right < b.right);
    });
    Piece p;
    for (auto& iv : raw) {
        if (!p.parts_.empty() && iv.left <= p.parts_.back().right) {
            if (iv.right > p.parts_.back().right) p.parts_.back().right = iv.right;
        } else {
            p.parts_.push_back(std::move(iv));
        }
    }
    return p;
}

Piece Piece::interval(const Rat& left, const Rat& right) {
    return normalize({Interval{left, right}});
}

Rat Piece::measure() const {
    Rat m = 0;
    for (const auto& iv : parts_) m += iv.right - iv.left;
    return m;
}

std::string Piece::str() const {
    if (parts_.empty()) return "{}";
    std::string s = "{";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += "[" + to_string(parts_[i].left) + "," + to_string(parts_[i].right) + "]";
    }
    return s + "}";
}

bool operator<(const Piece& a, const Piece& b) {
    return std::lexicographical_compare(
        a.parts_.begin(), a.parts_.end(), b.parts_.begin(), b.parts_.end(),
        [](const Interval& x, const Interval& y) {
            if (x.left != y.left) return x.left < y.left;
            return x.right < y.right;
        });
}

Piece piece_union(const Piece& a, const Piece& b) {
    std::vector<Interval> all(a.intervals());
    all.insert(all.end(), b.intervals().begin(), b.intervals().end());
    return Piece::normalize(std::move(all));
}

Piece piece_union_all(const std::vector<Piece>& parts) {
    std::vector<Interval> all;
    for (const auto& p : parts) all.insert(all.end(), p.intervals().begin(), p.intervals().end());
    return Piece::normalize(std::move(all));
}

Piece piece_intersect(const Piece& a, const Piece& b) {
    std::vector<Interval> out;
    const auto& x = a.intervals();
    const auto& y = b.intervals();
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        const Rat& lo = std::max(x[i].left, y[j].left);
        const Rat& hi = std::min(x[i].right, y[j].right);
        if (lo < hi) out.push_back({lo, hi});
        if (x[i].right < y[j].right) ++i; else ++j;
    }
    return Piece::normalize(std::move(out));
}

Piece piece_subtract(const Piece& a, const Piece& b) {
    std::vector<Interval> out;
    const auto& y = b.intervals();
    std::size_t j = 0;
    for (const auto& iv : a.intervals()) {
        Rat cur = iv.left;
        while (j < y.size() && y[j].right <= cur) ++j;
        std::size_t k = j;
        while (k < y.size() && y[k].left < iv.right) {
            if (y[k].left > cur) out.push_back({cur, y[k].left});
            if (y[k].right > cur) cur = y[k].right;
            if (cur >= iv.right) break;
            ++k;
        }
        if (cur < iv.right) out.push_back({cur, iv.right});
    }
    return Piece::normalize(std::move(out));
}

bool is_subset(const Piece& inner, const Piece& outer) {
    return piece_subtract(inner, outer).empty();
}

bool interior_disjoint(const Piece& a, const Piece& b) {
    return piece_intersect(a, b).empty();
}

bool is_partition(const std::vector<Piece>& parts, const Piece& whole) {
    Rat total = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        total += parts[i].measure();
        for (std::size_t j = i + 1; j < parts.size(); ++j)
            if (!interior_disjoint(parts[i], parts[j])) return false;
    }
    return piece_union_all(parts) == whole && total == whole.measure();
}

Piece leftmost_prefix(const Piece& p, const Rat& endpoint) {
    if (p.empty()) {
        throw EndpointOutsidePiece("prefix of an empty piece");
    }
    if (endpoint < p.left_extreme() || endpoint > p.right_extreme())
        throw EndpointOutsidePiece(to_string(endpoint) + " outside " + p.str());
    std::vector<Interval> out;
    for (const auto& iv : p.intervals()) {
        if (iv.left >= endpoint) break;
        out.push_back({iv.left, std::min(iv.right, endpoint)});
    }
    return Piece::normalize(std::move(out));
}

Piece rightmost_suffix(const Piece& p, const Rat& endpoint) {
    return piece_subtract(p, leftmost_prefix(p, endpoint));
}

std::vector<Piece> components(const Piece& p) {
    std::vector<Piece> out;
    for (const auto& iv : p.intervals()) out.push_back(Piece::interval(iv.left, iv.right));
    return out;
}

}  // namespace cake
