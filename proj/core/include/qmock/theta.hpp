#ifndef QMOCK_THETA_HPP
#define QMOCK_THETA_HPP

#include <map>
#include <string>
#include <utility>

#include "qmock/qseries.hpp"

namespace qmock {

/* Normal form for theta symbols and eta quotients: a scalar, a power of q and
 * a finite multiset of Pochhammer blocks,
 *
 *     coefficient * q^qpow * prod (q^g; q^delta)_inf ^ e,
 *
 * keyed by (delta, g) with 0 <= g < delta. g = 0 denotes the full factor
 * (q^delta; q^delta)_inf. Every block has constant term 1, so the expansion of
 * a ProductForm has valuation exactly qpow (when the coefficient is nonzero).
 *
 * Construction keeps the factor map canonical: zero exponents are dropped and
 * two block rewrites are applied to fixpoint so that equal quotients compare
 * equal fieldwise and so that every modulus actually divides the levels the
 * prover works at:
 *
 *   (q^{M/3};q^M)(q^{2M/3};q^M) = (q^{M/3};q^{M/3}) / (q^M;q^M)
 *   (q^{M/4};q^M)(q^{3M/4};q^M) = (q^{M/4};q^{M/2})
 *
 * Both follow from rearranging the residues that the paired blocks cover.
 */
struct ProductForm {
    Rational coefficient = 1;
    long qpow = 0;
    std::map<std::pair<long, long>, long> factors; // (delta, g) -> exponent

    static ProductForm unit() { return ProductForm{}; }
    static ProductForm scalar(const Rational& c, long k = 0)
    {
        ProductForm p;
        p.coefficient = c;
        p.qpow = k;
        return p;
    }

    void push_factor(long delta, long g, long exponent); // merges, no canonicalization
    void canonicalize();

    bool operator==(const ProductForm& o) const
    {
        return coefficient == o.coefficient && qpow == o.qpow && factors == o.factors;
    }
};

// Theta(q^a; q^m) for unbarred, Theta(-q^a; q^m) for barred. Arguments are
// first reduced into 0 <= a < m by quasi-periodicity, which contributes
// -q^{-a} per step in the unbarred case and q^{-a} (no sign) in the barred
// case. Theta(q^a; q^m) with m | a is identically zero: ZeroTheta.
ProductForm theta(long a, long m, bool barred);

// Theta(sign_x q^a ; sign_base q^m). A negative base is rewritten through
// Theta(x;-Q) = Theta(x;Q^2) Theta(-Qx;Q^2) (-Q;Q^2) / (Q^2;Q^2).
ProductForm theta_general(int sign_x, long a, int sign_base, long m);

// Exact expansion of the product to prec = order (requires order > qpow).
QSeries expand(const ProductForm& p, long order);

// The bilateral theta series sum_n (-1)^n q^{m C(n,2)} (sign q^a)^n, the
// independent route used to cross-check the product expansions.
QSeries triple_product_series(long a, long m, int sign, long order);

constexpr long kPochhammerInfinity = -1;

// (sign q^a; q^m)_n truncated at order; n = kPochhammerInfinity for the
// infinite product, which requires a >= 1 or (a = 0 with sign -1) and raises
// DivergentProduct otherwise.
QSeries pochhammer(int sign, long a, long m, long n, long order);

ProductForm pf_mul(const ProductForm& a, const ProductForm& b);
ProductForm pf_div(const ProductForm& a, const ProductForm& b);
ProductForm pf_pow(const ProductForm& a, long k);

// "c * q^k * (delta:g)^e * ..." with factors sorted; parseable by the DSL.
std::string render(const ProductForm& p);

} // namespace qmock

#endif
