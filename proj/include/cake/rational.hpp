#pragma once

#include <gmpxx.h>

#include <string>

namespace cake {

using Rat = mpq_class;
using BigInt = mpz_class;

// Accepts "p/q" or "k"; result is canonical. Throws std::invalid_argument.
Rat parse_rat(const std::string& text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& r);

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_pow(const Rat& base, unsigned long exp);

}  // namespace cake
