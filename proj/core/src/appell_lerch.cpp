#include "qmock/appell_lerch.hpp"

#include <algorithm>
#include <sstream>

namespace qmock {

std::string SignedMonomial::str() const
{
    std::ostringstream os;
    if (sign < 0) os << "-";
    if (exp == 0) {
        os << "1";
    } else {
        os << "q";
        if (exp != 1) os << "^" << exp;
    }
    return os.str();
}

ALParams::ALParams(SignedMonomial x_, long period_, SignedMonomial z_)
    : x(x_), period(period_), z(z_)
{
    if (period < 1) throw Error("ALParams: period must be positive");
    auto is_power_of_base = [&](const SignedMonomial& m) {
        return m.sign == 1 && m.exp % period == 0;
    };
    if (is_power_of_base(z))
        throw NonGenericParameters("z = " + z.str() + " is an integral power of the base");
    if (is_power_of_base(x.mul(z)))
        throw NonGenericParameters("xz = " + x.mul(z).str() + " is an integral power of the base");
}

void Expression::merge_al_terms()
{
    std::vector<ALTerm> merged;
    for (const auto& t : al_terms) {
        bool found = false;
        for (auto& m : merged) {
            if (m.qpow == t.qpow && m.params == t.params) {
                m.coeff += t.coeff;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const ALTerm& t) { return is_zero(t.coeff); }),
                 merged.end());
    al_terms = std::move(merged);
}

namespace {

QSeries al_series_attempt(const ALParams& p, long order, long extra)
{
    const long D = p.period;
    ProductForm tz = theta_general(p.z.sign, p.z.exp, +1, D);
    long slack = 2 * std::abs(tz.qpow) + 4 + extra;
    long work = order + slack;

    // exponent of the r-th term before denominator expansion
    auto numer_exp = [&](long r) { return D * (r * (r - 1) / 2) + r * p.z.exp; };
    auto denom_exp = [&](long r) { return D * (r - 1) + p.x.exp + p.z.exp; };
    auto term_val = [&](long r) {
        long k = denom_exp(r);
        return numer_exp(r) + (k < 0 ? -k : 0);
    };
    auto tail_done = [&](long from, long step) {
        for (long i = 1; i <= 3; ++i)
            if (term_val(from + i * step) < work) return false;
        return true;
    };
    long hi = 0, lo = 0;
    while (!tail_done(hi, +1)) ++hi;
    while (!tail_done(lo, -1)) --lo;
    // guard: past the examined window the valuations must keep growing
    for (long r = hi + 3; r <= hi + 6; ++r)
        if (term_val(r) < term_val(r - 1) && term_val(r) < work)
            throw Error("al_series: tail valuation not increasing");
    for (long r = lo - 3; r >= lo - 6; --r)
        if (term_val(r) < term_val(r + 1) && term_val(r) < work)
            throw Error("al_series: tail valuation not increasing");

    long val = 0;
    for (long r = lo; r <= hi; ++r) val = std::min(val, term_val(r));
    std::vector<Rational> acc(static_cast<size_t>(work - val));
    const int ex = p.x.sign, ez = p.z.sign;
    for (long r = lo; r <= hi; ++r) {
        if (term_val(r) >= work) continue;
        long e = numer_exp(r);
        // (-1)^r z^r
        bool rodd = ((r % 2) + 2) % 2 == 1;
        int s = rodd ? -1 : 1;
        if (ez < 0 && rodd) s = -s;
        long k = denom_exp(r);
        int eps = ex * ez; // the sign carried by q^{D(r-1)} x z
        if (k == 0) {
            if (eps == 1)
                throw NonGenericParameters("al_series: zero denominator in the bilateral sum");
            // 1/(1 - (-1)) = 1/2
            acc[static_cast<size_t>(e - val)] += Rational(s, 2);
            continue;
        }
        if (k < 0) {
            // 1/(1 - eps q^k) = -eps q^{-k} / (1 - eps q^{-k})
            e += -k;
            s *= -eps;
            k = -k;
        }
        // s q^e * sum_j eps^j q^{jk}
        int sj = s;
        for (long j = 0; e + j * k < work; ++j) {
            acc[static_cast<size_t>(e + j * k - val)] += sj;
            sj *= eps;
        }
    }
    QSeries sum = QSeries::from_coeffs(val, std::move(acc));
    QSeries pref = expand(tz, work).invert();
    return pref.mul(sum);
}

} // namespace

QSeries al_series(const ALParams& p, long order)
{
    // the working order covers the prefactor's valuation; if quasi-periodic
    // reductions still eat precision the computation retries wider
    for (long extra : {0L, 16L, 64L, 256L}) {
        QSeries out = al_series_attempt(p, order, extra);
        if (out.prec() >= order) return out.truncate(order);
    }
    throw PrecisionExceeded("al_series: could not reach the requested order");
}

Expression al_rewrite(const ALParams& p, ALRule rule)
{
    Expression e;
    switch (rule) {
    case ALRule::shift_z: {
        e.al_terms.push_back({1, 0, ALParams(p.x, p.period, SignedMonomial(p.z.sign, p.z.exp + p.period))});
        return e;
    }
    case ALRule::inversion: {
        // m(x,q,z) = x^{-1} m(x^{-1}, q, z^{-1})
        e.al_terms.push_back({p.x.sign, -p.x.exp, ALParams(p.x.inverse(), p.period, p.z.inverse())});
        return e;
    }
    case ALRule::qx_relation: {
        // m(q xt, q, z) = 1 - xt m(xt, q, z), so x must carry at least one
        // full power of the base
        if (p.x.exp < p.period)
            throw RuleNotApplicable("qx_relation needs x.exp >= period");
        SignedMonomial xt(p.x.sign, p.x.exp - p.period);
        e.constant = 1;
        e.al_terms.push_back({-xt.sign, xt.exp, ALParams(xt, p.period, p.z)});
        return e;
    }
    case ALRule::q_inverse_relation: {
        // m(x,q,z) = 1 - q^{-1} x m(q^{-1} x, q, z)
        SignedMonomial xd(p.x.sign, p.x.exp - p.period);
        e.constant = 1;
        e.al_terms.push_back({-xd.sign, xd.exp, ALParams(xd, p.period, p.z)});
        return e;
    }
    case ALRule::alternative_form: {
        // m(x,q,z) = x^{-1} - x^{-1} m(q x, q, z)
        SignedMonomial xinv = p.x.inverse();
        e.theta_terms.push_back(ProductForm::scalar(xinv.sign, xinv.exp));
        SignedMonomial xu(p.x.sign, p.x.exp + p.period);
        e.al_terms.push_back({-xinv.sign, xinv.exp, ALParams(xu, p.period, p.z)});
        return e;
    }
    }
    throw Error("al_rewrite: unknown rule");
}

namespace {

ProductForm theta_of(const SignedMonomial& m, long period)
{
    return theta_general(m.sign, m.exp, +1, period);
}

} // namespace

ProductForm difference_term(const SignedMonomial& x, long period, const SignedMonomial& z1,
                            const SignedMonomial& z0)
{
    ProductForm num = ProductForm::scalar(z0.sign, z0.exp);
    ProductForm etas;
    etas.push_factor(period, 0, 3);
    num = pf_mul(num, etas);
    num = pf_mul(num, theta_of(z1.mul(z0.inverse()), period)); // zero when z1 == z0
    num = pf_mul(num, theta_of(x.mul(z0).mul(z1), period));
    ProductForm den = theta_of(z0, period);
    den = pf_mul(den, theta_of(z1, period));
    den = pf_mul(den, theta_of(x.mul(z0), period));
    den = pf_mul(den, theta_of(x.mul(z1), period));
    return pf_div(num, den);
}

Expression cor36_expand(const ALParams& p, long n, const SignedMonomial& z_prime)
{
    if (n < 1) throw Error("cor36_expand: n must be positive");
    const long D = p.period;
    const bool odd = (n % 2 != 0);
    Expression e;

    // the n Appell-Lerch pieces at period D n^2
    for (long r = 0; r < n; ++r) {
        // prefactor q^{-D C(r+1,2)} (-x)^r
        SignedMonomial xr = p.x.pow(r);
        Rational coeff = (r % 2 == 0) ? Rational(xr.sign) : Rational(-xr.sign);
        long qpow = -D * (r * (r + 1) / 2) + xr.exp;
        SignedMonomial xn = p.x.pow(n);
        long big_exp = D * (n * (n - 1) / 2 - n * r) + xn.exp;
        SignedMonomial x_new(odd ? xn.sign : -xn.sign, big_exp);
        e.al_terms.push_back({coeff, qpow, ALParams(x_new, D * n * n, z_prime)});
    }

    // shared correction prefactor  z' T_{Dn}^3 / (Theta(xz;q^D) Theta(z';q^{Dn^2}))
    ProductForm pre = ProductForm::scalar(z_prime.sign, z_prime.exp);
    ProductForm etas;
    etas.push_factor(D * n, 0, 3);
    pre = pf_mul(pre, etas);
    pre = pf_div(pre, theta_of(p.x.mul(p.z), D));        // denominator: ZeroTheta propagates
    pre = pf_div(pre, theta_of(z_prime, D * n * n));

    SignedMonomial xn = p.x.pow(n);
    SignedMonomial zn = p.z.pow(n);
    for (long r = 0; r < n; ++r) {
        SignedMonomial xr = p.x.pow(r);
        Rational coeff = (r % 2 == 0) ? Rational(xr.sign) : Rational(-xr.sign);
        long qpow = xr.exp;
        long zpow;
        if (odd) {
            qpow += D * (r * (r - n) / 2);
            zpow = r - (n - 1) / 2;
        } else {
            qpow += D * (r * (r - n + 1) / 2);
            zpow = r + 1 - n / 2;
        }
        SignedMonomial zr = p.z.pow(zpow);
        coeff *= zr.sign;
        qpow += zr.exp;

        try {
            ProductForm term = pf_mul(pre, ProductForm::scalar(coeff, qpow));
            // numerator thetas; ZeroTheta here means the r-th correction is 0
            SignedMonomial a1 = odd ? SignedMonomial(1, D * r).mul(xn).mul(p.z).mul(z_prime)
                                    : SignedMonomial(-1, D * (r + n / 2)).mul(xn).mul(p.z).mul(z_prime);
            SignedMonomial a2 = SignedMonomial(1, D * n * r).mul(zn).mul(z_prime.inverse());
            ProductForm num;
            num = pf_mul(theta_of(a1, D * n), theta_of(a2, D * n * n));
            term = pf_mul(term, num);
            // denominator thetas; ZeroTheta here is a genuine degeneracy
            SignedMonomial b1 = odd ? xn.mul(z_prime) : SignedMonomial(-1, D * (n / 2)).mul(xn).mul(z_prime);
            SignedMonomial b2 = SignedMonomial(1, D * r).mul(p.z);
            ProductForm den;
            try {
                den = pf_mul(theta_of(b1, D * n), theta_of(b2, D * n));
            } catch (const ZeroTheta&) {
                throw NonGenericParameters("cor36_expand: vanishing denominator theta");
            }
            e.theta_terms.push_back(pf_div(term, den));
        } catch (const ZeroTheta&) {
            continue; // zero numerator: this correction term is exactly 0
        }
    }
    return e;
}

QSeries expression_series(const Expression& e, long order)
{
    QSeries acc = QSeries::constant(e.constant, order);
    for (const auto& t : e.al_terms) {
        QSeries s = al_series(t.params, order - t.qpow).q_shift(t.qpow).scalar_mul(t.coeff);
        acc = acc.add(s);
    }
    for (const auto& p : e.theta_terms) {
        if (is_zero(p.coefficient)) continue;
        if (order <= p.qpow) continue; // contributes nothing below order
        acc = acc.add(expand(p, order));
    }
    return acc;
}

std::string render_al(const ALParams& p)
{
    std::ostringstream os;
    os << "AL(" << p.x.str() << ", q";
    if (p.period != 1) os << "^" << p.period;
    os << ", " << p.z.str() << ")";
    return os.str();
}

} // namespace qmock
