#pragma once

#include "cake/piece.hpp"
#include "cake/valuation.hpp"
#include "cake/verify.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cake {

// Valuation files: '#' starts a comment, "agent <id>" opens a block, and
// "seg <left> <right> <density>" adds a segment with exact fractions. Ids
// must be 0..n-1, each once. Throws ParseError with the offending line.
Profile read_valuations(std::istream& in);
Profile read_valuation_file(const std::string& path);
void write_valuations(std::ostream& out, const Profile& vals);

// Allocation files: "share <agent> <left> <right>" lines, several per agent
// allowed. The residue is whatever the shares leave of [0,1].
Allocation read_allocation(std::istream& in, std::size_t agents);
Allocation read_allocation_file(const std::string& path, std::size_t agents);
void write_allocation(std::ostream& out, const Allocation& a);

struct Verdicts {
    EnvyCheck envy;
    bool proportional = false;
    bool conservation = false;
    bool complete = false;
    std::optional<bool> connected;  // only when asked for
    // Every share worth at least V_i(origin)/(3n) to its owner; only when asked for.
    std::optional<bool> third_share;
};

// Recomputed from the allocation alone.
Verdicts verify_allocation(const Allocation& a, const Profile& vals, bool connected_checks);

// Shares, self and cross values, verdicts, the residue when nonempty, and
// query counts when a counter is given.
void write_report(std::ostream& out, const Allocation& a, const Profile& vals, const Verdicts& v,
                  const QueryCounter* counter = nullptr);

}  // namespace cake
