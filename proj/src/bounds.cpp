#include "cake/bounds.hpp"

#include "cake/errors.hpp"
#include "cake/snapshot.hpp"

namespace cake {

bool BoundReport::all_hold() const {
    for (const BoundFact& f : facts)
        if (!f.holds) return false;
    return !facts.empty();
}

namespace {

BigInt ipow(long base, unsigned long exp) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return out;
}

}  // namespace

BoundReport verify_strict_bounds(int n) {
    if (n < 3) throw UnsupportedParameters("strict bounds need n >= 3");
    BoundReport r;
    r.n = n;
    auto C = power_tower(n, 3);
    if (!C) throw UnsupportedParameters("n^(n^n) does not fit in memory for n=" + std::to_string(n));
    r.c_bits = mpz_sizeinbase(C->get_mpz_t(), 2);
    const BigInt nn = ipow(n, static_cast<unsigned long>(n));
    const BigInt sq = BigInt(n) * n;
    auto add = [&](std::string s, bool ok) { r.facts.push_back({std::move(s), ok}); };

    // First inequality. With n+1 <= n^2, (n+1)^(n^2-n) * C <= n^(2(n^2-n) + n^n),
    // and C' = n^C dominates it once C >= n^n + 2(n^2-n).
    add("n+1 <= n^2", BigInt(n + 1) <= sq);
    add("C >= n^n + 2(n^2-n)", *C >= nn + 2 * (sq - n));

    // Second inequality, in logarithms: (C+3) ln n < B ln(n/(n-2)).
    // e^x <= 1/(1-x) for 0 <= x < 1 gives ln(n/(n-2)) >= 2/n once 2/n < 1,
    // and e^n >= 1+n gives ln n < n. So (C+3) n^2 < 2B suffices.
    add("2 < n", n > 2);
    // (C+3) n^2 <= n*C*n^2 = n^(n^n + 3)
    add("C+3 <= n*C", *C + 3 <= BigInt(n) * *C);
    // n^(n^n+3) < 2 n^(C') because n^n + 3 <= C <= n^C = C'.
    add("n^n + 3 <= C", nn + 3 <= *C);
    add("C <= n^C (n >= 2 so n^x > x for x >= 1)", n >= 2 && *C >= 1);
    return r;
}

BigInt partial_query_bound(int n) {
    BigInt sq = BigInt(n) * n;
    BigInt out = BigInt(n) * n * n * n;
    for (int i = 0; i < n; ++i) out *= sq;
    return out;
}

}  // namespace cake
