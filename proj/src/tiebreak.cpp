#include "cake/tiebreak.hpp"

#include "cake/errors.hpp"

namespace cake {

bool outranks(const EpsSymbol& a, const EpsSymbol& b) { return a.serial < b.serial; }

Infinitesimal Infinitesimal::of(const EpsSymbol& s, long coef) {
    Infinitesimal v;
    v.add(s.serial, coef);
    return v;
}

void Infinitesimal::add(std::uint64_t serial, long coef) {
    if (coef == 0) return;
    long& c = coef_[serial];
    c += coef;
    if (c == 0) coef_.erase(serial);
}

Infinitesimal Infinitesimal::plus(const Infinitesimal& other) const {
    Infinitesimal r = *this;
    for (const auto& [s, c] : other.coef_) r.add(s, c);
    return r;
}

long Infinitesimal::coefficient(std::uint64_t serial) const {
    auto it = coef_.find(serial);
    return it == coef_.end() ? 0 : it->second;
}

std::string Infinitesimal::str() const {
    if (coef_.empty()) return "0";
    std::string s;
    for (const auto& [serial, c] : coef_) {
        if (!s.empty()) s += c < 0 ? "-" : "+";
        else if (c < 0) s += "-";
        long a = c < 0 ? -c : c;
        if (a != 1) s += std::to_string(a) + "*";
        s += "e" + std::to_string(serial);
    }
    return s;
}

std::strong_ordering operator<=>(const Infinitesimal& a, const Infinitesimal& b) {
    auto i = a.coef_.begin();
    auto j = b.coef_.begin();
    while (i != a.coef_.end() || j != b.coef_.end()) {
        std::uint64_t s;
        if (j == b.coef_.end() || (i != a.coef_.end() && i->first < j->first)) s = i->first;
        else s = j->first;
        long ca = (i != a.coef_.end() && i->first == s) ? i->second : 0;
        long cb = (j != b.coef_.end() && j->first == s) ? j->second : 0;
        if (ca != cb) return ca <=> cb;
        if (i != a.coef_.end() && i->first == s) ++i;
        if (j != b.coef_.end() && j->first == s) ++j;
    }
    return std::strong_ordering::equal;
}

std::strong_ordering compare(const AugmentedValue& a, const AugmentedValue& b) {
    int c = cmp(a.phys, b.phys);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.inf <=> b.inf;
}

EpsSymbol ImaginaryLedger::issue_epsilon(int agent) {
    EpsSymbol s;
    s.serial = next_serial_++;
    s.owner = agent;
    s.owner_index = per_agent_[agent]++;
    return s;
}

int ImaginaryLedger::register_piece(const Infinitesimal& tag) {
    int id = next_piece_++;
    tags_[id] = tag;
    return id;
}

void ImaginaryLedger::set_tag(int piece_id, const Infinitesimal& tag) {
    auto it = tags_.find(piece_id);
    if (it == tags_.end()) throw UnknownPiece("piece " + std::to_string(piece_id));
    it->second = tag;
}

const Infinitesimal& ImaginaryLedger::piece_imaginary_value(int piece_id) const {
    auto it = tags_.find(piece_id);
    if (it == tags_.end()) throw UnknownPiece("piece " + std::to_string(piece_id));
    return it->second;
}

std::vector<EpsSymbol> ImaginaryLedger::tag_equalized_pieces(int agent, const std::vector<int>& trimmed,
                                                             const Infinitesimal& benchmark) {
    if (trimmed.empty()) throw EmptyTrimSet("agent " + std::to_string(agent));
    for (int id : trimmed)
        if (!known(id)) throw UnknownPiece("piece " + std::to_string(id));
    std::vector<EpsSymbol> fresh;
    for (std::size_t i = 0; i < trimmed.size(); ++i) fresh.push_back(issue_epsilon(agent));
    // fresh[0] is the largest; it goes to the most preferred (last) piece.
    std::vector<EpsSymbol> assigned(trimmed.size());
    for (std::size_t t = 0; t < trimmed.size(); ++t) {
        assigned[t] = fresh[trimmed.size() - 1 - t];
        tags_[trimmed[t]] = benchmark.plus(Infinitesimal::of(assigned[t]));
    }
    for (std::size_t t = 0; t + 1 < trimmed.size(); ++t)
        record_order_check(tags_[trimmed[t]] < tags_[trimmed[t + 1]]);
    return assigned;
}

std::vector<EpsSymbol> ImaginaryLedger::tag_equalized_pieces(int agent, const std::vector<int>& trimmed,
                                                             int benchmark_piece) {
    Infinitesimal bench = piece_imaginary_value(benchmark_piece);
    for (int id : trimmed)
        if (id == benchmark_piece) throw UnknownPiece("benchmark piece listed as trimmed");
    return tag_equalized_pieces(agent, trimmed, bench);
}

std::strong_ordering ImaginaryLedger::compare_distinct(const AugmentedValue& a, const AugmentedValue& b) {
    ++comparisons_;
    auto c = compare(a, b);
    if (c == 0) ++ties_;
    return c;
}

void ImaginaryLedger::record_order_check(bool held) {
    ++order_checks_;
    if (!held) ++order_violations_;
}

}  // namespace cake
