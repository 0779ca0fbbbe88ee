#ifndef QMOCK_RATIONAL_HPP
#define QMOCK_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace qmock {

// Exact rational arithmetic. mpq_class keeps values canonical (lowest terms,
// positive denominator), which is all the series layer relies on.
using Rational = mpq_class;
using Int = mpz_class;

inline Rational rat(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// "p" or "p/q", the exact form mpq prints.
inline std::string to_string(const Rational& r) { return r.get_str(); }

Rational rational_from_string(const std::string& s);

// Largest integer <= r and smallest integer >= r.
inline Int floor_int(const Rational& r)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}
inline Int ceil_int(const Rational& r)
{
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

} // namespace qmock

#endif
