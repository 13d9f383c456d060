#pragma once

#include "cake/rational.hpp"

#include <string>
#include <vector>

namespace cake {

// One exact integer fact used in a chain of inequalities about the strict
// constants.
struct BoundFact {
    std::string statement;
    bool holds = false;
};

struct BoundReport {
    int n = 0;
    std::vector<BoundFact> facts;
    unsigned long c_bits = 0;  // size of the materialized n^(n^n)
    bool all_hold() const;
};

// Verifies, for 5 <= n <= 8 (larger n is allowed if memory permits), that
//   C' >= (n+1)^(n^2-n) * C, and
//   C' * n^2 * ((n-2)/n)^B < 1/n
// with C = n^(n^n), C' = n^C and B = n^C'. C is materialized exactly; C' and
// B enter only as exponents, and each step reduces to integer comparisons
// recorded in the report.
BoundReport verify_strict_bounds(int n);

// n * n^3 * (n^2)^n, the query ceiling for n Core rounds.
BigInt partial_query_bound(int n);

}  // namespace cake
