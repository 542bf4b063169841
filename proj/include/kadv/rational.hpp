#pragma once

#include <gmpxx.h>

#include <string>

#include "kadv/errors.hpp"

namespace kadv {

// Exact rational arithmetic. GMP keeps values canonical (den > 0, gcd = 1)
// as long as they enter through the helpers below.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw PreconditionViolation("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// 2^k for k of either sign.
inline Rat rat_pow2(long k) {
    Rat r(1);
    if (k >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(k));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-k));
    }
    return r;
}

inline Rat rat_pow(long base, long exp) {
    mpz_class b(base), p;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp));
    return Rat(p);
}

inline Rat rat_parse(const std::string& num, const std::string& den) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
        throw ParseError("bad rational: " + num + "/" + den);
    if (sgn(Rat(r.get_den())) <= 0) throw ParseError("nonpositive denominator: " + den);
    r.canonicalize();
    return r;
}

inline std::string num_str(const Rat& r) { return r.get_num().get_str(); }
inline std::string den_str(const Rat& r) { return r.get_den().get_str(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace kadv
