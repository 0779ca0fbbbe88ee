#ifndef QMOCK_APPELL_LERCH_HPP
#define QMOCK_APPELL_LERCH_HPP

#include <string>
#include <vector>

#include "qmock/theta.hpp"

namespace qmock {

// sign * q^exp with sign in {-1,+1}. All Appell-Lerch arguments in this
// calculus are of this shape, which keeps genericity decidable by integer
// congruences.
struct SignedMonomial {
    int sign = 1;
    long exp = 0;

    SignedMonomial() = default;
    SignedMonomial(int s, long e) : sign(s), exp(e)
    {
        if (s != 1 && s != -1) throw Error("SignedMonomial: sign must be +1 or -1");
    }

    SignedMonomial mul(const SignedMonomial& o) const { return {sign * o.sign, exp + o.exp}; }
    SignedMonomial inverse() const { return {sign, -exp}; }
    SignedMonomial pow(long k) const
    {
        int s = (((k % 2) + 2) % 2 == 0) ? 1 : sign;
        return {s, exp * k};
    }
    bool operator==(const SignedMonomial& o) const { return sign == o.sign && exp == o.exp; }
    std::string str() const;
};

/* Parameters of m(x, q^period, z). Construction enforces genericity:
 * neither z nor xz may be an integral power of the base (those make the
 * theta prefactor vanish or put a pole into the bilateral sum). */
struct ALParams {
    SignedMonomial x;
    long period = 1; // the base is q^period
    SignedMonomial z;

    ALParams() = default;
    ALParams(SignedMonomial x_, long period_, SignedMonomial z_);

    bool operator==(const ALParams& o) const
    {
        return x == o.x && period == o.period && z == o.z;
    }
};

// A linear combination of Appell-Lerch terms, theta-quotient terms and a
// rational constant; the value is the sum of the member expansions.
struct Expression {
    struct ALTerm {
        Rational coeff = 1;
        long qpow = 0;
        ALParams params;
    };
    std::vector<ALTerm> al_terms;
    std::vector<ProductForm> theta_terms;
    Rational constant = 0;

    static Expression single(const ALParams& p)
    {
        Expression e;
        e.al_terms.push_back({1, 0, p});
        return e;
    }
    // collect AL terms with identical parameters and q-powers
    void merge_al_terms();
};

/* Exact expansion of
 *   m(x,q,z) = 1/Theta(z;q) * sum_r (-1)^r q^{C(r,2)} z^r / (1 - q^{r-1} x z)
 * at base q^period, to prec = order. Denominators with negative q-exponent
 * are first rewritten as 1/(1 - s q^{-K}) = -s q^K / (1 - s q^K). The
 * bilateral range is widened until three consecutive terms on each tail start
 * beyond order; tail valuations are checked to be increasing. */
QSeries al_series(const ALParams& p, long order);

enum class ALRule { shift_z, inversion, qx_relation, q_inverse_relation, alternative_form };

// The five elementary transformations, returned as Expressions equal to
// m(params) at series level.
Expression al_rewrite(const ALParams& p, ALRule rule);

// m(x,q,z1) - m(x,q,z0) as a single theta quotient,
//   z0 T^3 Theta(z1/z0) Theta(x z0 z1) / [Theta(z0) Theta(z1) Theta(x z0) Theta(x z1)]
// with every theta at base q^period. ZeroTheta signals a vanishing numerator
// (z1 = z0: the difference is zero) or a degenerate denominator.
ProductForm difference_term(const SignedMonomial& x, long period, const SignedMonomial& z1,
                            const SignedMonomial& z0);

// The n-dissection decomposition of m(x,q,z): n Appell-Lerch terms at period
// n^2 with argument z', plus n theta-quotient corrections. Odd and even n use
// their respective variants. Correction terms whose numerator theta vanishes
// are dropped as exact zeros; a vanishing denominator theta propagates.
Expression cor36_expand(const ALParams& p, long n, const SignedMonomial& z_prime);

QSeries expression_series(const Expression& e, long order);

// "AL(x, q^D, z)" in DSL syntax.
std::string render_al(const ALParams& p);

} // namespace qmock

#endif
