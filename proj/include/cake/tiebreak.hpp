#pragma once

#include "cake/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cake {

// Symbols are ranked by issue serial: a smaller serial is a larger
// infinitesimal, so every fresh symbol is below all earlier ones.
struct EpsSymbol {
    std::uint64_t serial = 0;
    int owner = -1;
    std::uint64_t owner_index = 0;
};

bool outranks(const EpsSymbol& a, const EpsSymbol& b);

class Infinitesimal {
public:
    Infinitesimal() = default;
    static Infinitesimal of(const EpsSymbol& s, long coef = 1);

    void add(std::uint64_t serial, long coef);
    Infinitesimal plus(const Infinitesimal& other) const;
    bool zero() const { return coef_.empty(); }
    long coefficient(std::uint64_t serial) const;
    const std::map<std::uint64_t, long>& terms() const { return coef_; }
    std::string str() const;

    friend std::strong_ordering operator<=>(const Infinitesimal& a, const Infinitesimal& b);
    friend bool operator==(const Infinitesimal& a, const Infinitesimal& b) { return a.coef_ == b.coef_; }

private:
    std::map<std::uint64_t, long> coef_;  // ascending serial = descending rank
};

struct AugmentedValue {
    Rat phys;
    Infinitesimal inf;
};

std::strong_ordering compare(const AugmentedValue& a, const AugmentedValue& b);
inline bool operator<(const AugmentedValue& a, const AugmentedValue& b) { return compare(a, b) < 0; }
inline bool operator==(const AugmentedValue& a, const AugmentedValue& b) { return compare(a, b) == 0; }

class ImaginaryLedger {
public:
    EpsSymbol issue_epsilon(int agent);

    int register_piece(const Infinitesimal& tag = {});
    void set_tag(int piece_id, const Infinitesimal& tag);
    const Infinitesimal& piece_imaginary_value(int piece_id) const;
    bool known(int piece_id) const { return tags_.count(piece_id) != 0; }

    // trimmed: ids ordered least preferred first (pre-trim). Each piece gets
    // benchmark tag plus one fresh symbol; more preferred pieces get the
    // larger symbols. Returns the symbols in the order of `trimmed`.
    std::vector<EpsSymbol> tag_equalized_pieces(int agent, const std::vector<int>& trimmed,
                                                const Infinitesimal& benchmark);
    std::vector<EpsSymbol> tag_equalized_pieces(int agent, const std::vector<int>& trimmed,
                                                int benchmark_piece);

    // Comparison between two distinct protocol pieces; equality is recorded.
    std::strong_ordering compare_distinct(const AugmentedValue& a, const AugmentedValue& b);
    void record_order_check(bool held);

    std::uint64_t issued() const { return next_serial_; }
    std::uint64_t comparisons() const { return comparisons_; }
    std::uint64_t tie_events() const { return ties_; }
    std::uint64_t order_checks() const { return order_checks_; }
    std::uint64_t order_violations() const { return order_violations_; }

private:
    std::uint64_t next_serial_ = 0;
    std::map<int, std::uint64_t> per_agent_;
    std::map<int, Infinitesimal> tags_;
    int next_piece_ = 0;
    std::uint64_t comparisons_ = 0, ties_ = 0, order_checks_ = 0, order_violations_ = 0;
};

}  // namespace cake
