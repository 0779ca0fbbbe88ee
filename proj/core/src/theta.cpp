#include "qmock/theta.hpp"

#include <sstream>

namespace qmock {

void ProductForm::push_factor(long delta, long g, long exponent)
{
    if (exponent == 0) return;
    if (delta < 1 || g < 0 || g >= delta) throw Error("ProductForm: factor residue out of range");
    auto key = std::make_pair(delta, g);
    auto it = factors.find(key);
    if (it == factors.end()) {
        factors.emplace(key, exponent);
    } else {
        it->second += exponent;
        if (it->second == 0) factors.erase(it);
    }
}

void ProductForm::canonicalize()
{
    if (is_zero(coefficient)) {
        factors.clear();
        qpow = 0;
        return;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = factors.begin(); it != factors.end(); ++it) {
            long delta = it->first.first, g = it->first.second, e = it->second;
            if (g == 0 || e == 0) continue;
            if (3 * g == delta) {
                auto partner = factors.find({delta, 2 * g});
                if (partner != factors.end()) {
                    long common = (e > 0) == (partner->second > 0)
                                      ? (std::abs(e) < std::abs(partner->second) ? e : partner->second)
                                      : 0;
                    if (common != 0) {
                        it->second -= common;
                        partner->second -= common;
                        push_factor(g, 0, common);
                        push_factor(delta, 0, -common);
                        changed = true;
                        break;
                    }
                }
            }
            if (4 * g == delta) {
                auto partner = factors.find({delta, 3 * g});
                if (partner != factors.end()) {
                    long common = (e > 0) == (partner->second > 0)
                                      ? (std::abs(e) < std::abs(partner->second) ? e : partner->second)
                                      : 0;
                    if (common != 0) {
                        it->second -= common;
                        partner->second -= common;
                        push_factor(delta / 2, g, common);
                        changed = true;
                        break;
                    }
                }
            }
        }
        if (changed) continue;
        for (auto it = factors.begin(); it != factors.end();) {
            if (it->second == 0)
                it = factors.erase(it);
            else
                ++it;
        }
    }
    for (auto it = factors.begin(); it != factors.end();) {
        if (it->second == 0)
            it = factors.erase(it);
        else
            ++it;
    }
}

namespace {

// Reduce Theta(eps q^A; q^m) to 0 <= A < m, accumulating the quasi-periodicity
// prefactor into (sign, qpow).
void reduce_argument(long& a, long m, bool barred, int& coeff_sign, long& qpow)
{
    while (a >= m) {
        a -= m;
        // Theta(q^{a+m};q^m) = -q^{-a} Theta(q^a;q^m); barred drops the sign.
        if (!barred) coeff_sign = -coeff_sign;
        qpow -= a;
    }
    while (a < 0) {
        // Theta(q^a;q^m) = -q^{a} Theta(q^{a+m};q^m)
        if (!barred) coeff_sign = -coeff_sign;
        qpow += a;
        a += m;
    }
}

} // namespace

ProductForm theta(long a, long m, bool barred)
{
    if (m < 1) throw Error("theta: modulus must be positive");
    ProductForm p;
    int sign = 1;
    reduce_argument(a, m, barred, sign, p.qpow);
    p.coefficient = sign;
    if (!barred) {
        if (a == 0) throw ZeroTheta("Theta(q^a;q^m) with m | a vanishes identically");
        p.push_factor(m, a, 1);
        p.push_factor(m, m - a, 1);
        p.push_factor(m, 0, 1);
    } else if (a == 0) {
        // (-1;Q) = 2(-Q;Q) gives Theta(-1;q^m) = 2 (q^{2m};q^{2m})^2 / (q^m;q^m).
        p.coefficient *= 2;
        p.push_factor(2 * m, 0, 2);
        p.push_factor(m, 0, -1);
    } else {
        // (-q^g;q^m) = (q^{2g};q^{2m}) / (q^g;q^m) applied to both halves.
        p.push_factor(2 * m, 2 * a, 1);
        p.push_factor(2 * m, 2 * m - 2 * a, 1);
        p.push_factor(m, a, -1);
        p.push_factor(m, m - a, -1);
        p.push_factor(m, 0, 1);
    }
    p.canonicalize();
    return p;
}

ProductForm theta_general(int sign_x, long a, int sign_base, long m)
{
    if (m < 1) throw Error("theta_general: modulus must be positive");
    if (sign_base > 0) return theta(a, m, sign_x < 0);
    // Theta(x;-Q) = Theta(x;Q^2) Theta(-Qx;Q^2) (-Q;Q^2) / (Q^2;Q^2), Q = q^m.
    ProductForm p = pf_mul(theta_general(sign_x, a, +1, 2 * m),
                           theta_general(-sign_x, a + m, +1, 2 * m));
    ProductForm tail; // (-q^m;q^{2m}) / (q^{2m};q^{2m})
    tail.push_factor(4 * m, 2 * m, 1);
    tail.push_factor(2 * m, m, -1);
    tail.push_factor(2 * m, 0, -1);
    tail.canonicalize();
    return pf_mul(p, tail);
}

QSeries expand(const ProductForm& p, long order)
{
    if (order <= p.qpow) throw Error("expand: order must exceed the q-power of the product");
    if (is_zero(p.coefficient)) return QSeries::zero(order);
    // Expand the unit part on [0, order - qpow) with binomial passes, one per
    // Pochhammer factor below the cutoff, then shift and scale.
    long len = order - p.qpow;
    QSeries u = QSeries::constant(p.coefficient, len);
    for (const auto& [key, e] : p.factors) {
        auto [delta, g] = key;
        long start = (g == 0) ? delta : g;
        long reps = (e > 0) ? e : -e;
        for (long k = start; k < len; k += delta) {
            for (long t = 0; t < reps; ++t) {
                if (e > 0)
                    u.mul_binomial_inplace(-1, k); // (1 - q^k)
                else
                    u.div_binomial_inplace(-1, k);
            }
        }
    }
    return u.q_shift(p.qpow);
}

QSeries triple_product_series(long a, long m, int sign, long order)
{
    if (m < 1) throw Error("triple_product_series: modulus must be positive");
    // n-th term: (-1)^n (sign q^a)^n q^{m C(n,2)} = (-sign)^n q^{m C(n,2) + a n}
    auto exponent = [&](long n) { return m * (n * (n - 1) / 2) + a * n; };
    long lo = 0, hi = 0;
    // widen until three consecutive terms on each tail start beyond order
    auto tail_done = [&](long from, long step) {
        for (long i = 1; i <= 3; ++i)
            if (exponent(from + i * step) < order) return false;
        return true;
    };
    while (!tail_done(hi, +1)) ++hi;
    while (!tail_done(lo, -1)) --lo;
    long val = 0;
    for (long n = lo; n <= hi; ++n)
        if (exponent(n) < order) val = std::min(val, exponent(n));
    std::vector<Rational> c(static_cast<size_t>(order - val));
    for (long n = lo; n <= hi; ++n) {
        long e = exponent(n);
        if (e >= order) continue;
        bool odd = ((n % 2) + 2) % 2 == 1;
        int s = odd ? (sign < 0 ? 1 : -1) : 1;
        c[static_cast<size_t>(e - val)] += s;
    }
    return QSeries::from_coeffs(val, std::move(c));
}

QSeries pochhammer(int sign, long a, long m, long n, long order)
{
    if (m < 1) throw Error("pochhammer: modulus must be positive");
    if (n == 0) return QSeries::constant(1, order);
    if (n == kPochhammerInfinity) {
        if (a < 0 || (a == 0 && sign > 0))
            throw DivergentProduct("(q^a;q^m)_inf needs a >= 1, or a = 0 with a negative prefix");
        QSeries u = QSeries::constant(1, order);
        if (a == 0) { // (-1;q^m) = 2(-q^m;q^m)
            u = u.scalar_mul(2);
            a = m;
        }
        for (long k = a; k < order; k += m) u.mul_binomial_inplace(sign > 0 ? -1 : 1, k);
        return u;
    }
    if (n < 0) throw Error("pochhammer: subscript must be nonnegative or infinity");
    // finite product; exponents a + m*i can be nonpositive, handled generically
    QSeries u = QSeries::constant(1, order);
    for (long i = 0; i < n; ++i) {
        long k = a + m * i;
        // u *= (1 - sign q^k)
        QSeries f = QSeries::monomial(sign > 0 ? -1 : 1, k, std::max(order, k + 1))
                        .add(QSeries::constant(1, std::max(order, k + 1)));
        u = u.mul(f).truncate(order);
    }
    return u;
}

ProductForm pf_mul(const ProductForm& a, const ProductForm& b)
{
    ProductForm r;
    r.coefficient = a.coefficient * b.coefficient;
    r.qpow = a.qpow + b.qpow;
    r.factors = a.factors;
    for (const auto& [key, e] : b.factors) {
        auto it = r.factors.find(key);
        if (it == r.factors.end())
            r.factors.emplace(key, e);
        else {
            it->second += e;
            if (it->second == 0) r.factors.erase(it);
        }
    }
    r.canonicalize();
    return r;
}

ProductForm pf_pow(const ProductForm& a, long k)
{
    ProductForm r;
    if (is_zero(a.coefficient)) {
        if (k <= 0) throw Error("pf_pow: zero product raised to a nonpositive power");
        r.coefficient = 0;
        return r;
    }
    if (k >= 0) {
        Rational c = 1;
        for (long i = 0; i < k; ++i) c *= a.coefficient;
        r.coefficient = c;
    } else {
        Rational c = 1;
        for (long i = 0; i < -k; ++i) c *= a.coefficient;
        r.coefficient = 1 / c;
    }
    r.qpow = a.qpow * k;
    for (const auto& [key, e] : a.factors) r.factors.emplace(key, e * k);
    r.canonicalize();
    return r;
}

ProductForm pf_div(const ProductForm& a, const ProductForm& b) { return pf_mul(a, pf_pow(b, -1)); }

std::string render(const ProductForm& p)
{
    std::ostringstream os;
    os << to_string(p.coefficient);
    if (p.qpow != 0) {
        os << " * q";
        if (p.qpow != 1) os << "^" << p.qpow;
    }
    for (const auto& [key, e] : p.factors) {
        os << " * (" << key.first << ":" << key.second << ")";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

} // namespace qmock
