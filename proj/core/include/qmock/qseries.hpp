#ifndef QMOCK_QSERIES_HPP
#define QMOCK_QSERIES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qmock/errors.hpp"
#include "qmock/rational.hpp"

namespace qmock {

/* A truncated Laurent series in q with exact rational coefficients.
 *
 * The series stores a dense coefficient block for the exponents
 * [valuation, prec). Everything below the valuation is exactly zero and
 * everything at prec or above is unknown. Arithmetic propagates prec
 * pessimistically, so a coefficient is never reported unless it is provably
 * correct at the requested order. Values are immutable in practice: every
 * operation returns a fresh series and never mutates its inputs.
 */
class QSeries {
public:
    // The zero series, known exactly below prec.
    explicit QSeries(long prec = 1);

    static QSeries zero(long prec);
    static QSeries constant(const Rational& c, long prec);
    // c * q^k
    static QSeries monomial(const Rational& c, long k, long prec);
    static QSeries from_coeffs(long valuation, std::vector<Rational> coeffs);

    long valuation() const { return val_; }
    long prec() const { return prec_; }

    // Index of the first nonzero tracked coefficient, or prec() if the whole
    // tracked range vanishes.
    long order_of_vanishing() const;
    bool is_zero_to_prec() const { return order_of_vanishing() == prec_; }

    // Coefficient of q^n. Zero below the valuation; PrecisionExceeded at or
    // beyond prec.
    const Rational& coeff_at(long n) const;

    QSeries add(const QSeries& b) const;
    QSeries sub(const QSeries& b) const;
    QSeries mul(const QSeries& b) const;
    QSeries scalar_mul(const Rational& c) const;
    QSeries negate() const;

    /* Multiplicative inverse. Scans forward past leading zeros for the true
     * leading term; if every tracked coefficient vanishes there is nothing to
     * invert and ZeroLeadingCoefficient is raised. With true valuation v the
     * result is exact on [-v, prec - 2v). */
    QSeries invert() const;
    QSeries div(const QSeries& b) const { return mul(b.invert()); }
    QSeries pow(long k) const;

    // q -> q^k, k >= 1. Coefficient of q^{kn} is coeff(n); prec becomes k*prec.
    QSeries substitute_power(long k) const;

    // q -> -q: the coefficient of q^n picks up (-1)^n.
    QSeries negate_q() const;

    // Extracts the progression m*n + r: result coeff(n) = coeff(m*n + r).
    QSeries dissect(long m, long r) const;

    // Multiply by q^k.
    QSeries q_shift(long k) const;

    // Forget all coefficients at exponent n and above.
    QSeries truncate(long n) const;

    // In-place fused primitives used by the product expansions; these are the
    // only mutating entry points and are kept out of the public value API.
    void mul_binomial_inplace(int sign, long k);                    // *= 1 + sign q^k
    void mul_binomial_inplace(const Rational& c, int sign, long k); // *= 1 + c sign q^k
    void div_binomial_inplace(int sign, long k);                    // /= 1 + sign q^k

    // Compares coefficientwise on [min valuation, n]; n must be below both
    // precisions, else PrecisionExceeded.
    static bool equal_to_order(const QSeries& a, const QSeries& b, long n);

    std::string str(long max_terms = 12) const;

    // {"valuation": v, "prec": p, "coeffs": ["p/q", ...]}, the golden-file shape
    std::string to_json() const;
    static QSeries from_json(const std::string& text);

private:
    long val_;
    long prec_;
    std::vector<Rational> c_; // c_[i] is the coefficient of q^{val_ + i}

    friend class QSeriesBuilder;
};

bool operator==(const QSeries& a, const QSeries& b); // fieldwise

} // namespace qmock

#endif
