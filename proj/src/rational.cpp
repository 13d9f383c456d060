#include "cake/rational.hpp"

#include <stdexcept>

namespace cake {

namespace {

bool valid_integer(const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace

Rat parse_rat(const std::string& text) {
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_integer(num, true) || !valid_integer(den, false))
        throw std::invalid_argument("not a fraction: '" + text + "'");
    if (num[0] == '+') num = num.substr(1);
    BigInt n(num, 10), d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_pow(const Rat& base, unsigned long exp) {
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), exp);
    mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), exp);
    Rat r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace cake
