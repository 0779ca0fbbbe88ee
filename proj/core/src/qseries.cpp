#include "qmock/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace qmock {

namespace {
const Rational kZero = 0;
}

QSeries::QSeries(long prec) : val_(0), prec_(prec), c_(static_cast<size_t>(prec - val_))
{
    if (prec_ <= val_) throw Error("QSeries: prec must exceed valuation");
}

QSeries QSeries::zero(long prec) { return QSeries(prec); }

QSeries QSeries::constant(const Rational& c, long prec)
{
    QSeries s(prec);
    if (prec > 0) s.c_[0] = c;
    // A constant with prec <= 0 has no tracked slot for q^0; that caller bug
    // surfaces immediately.
    if (prec <= 0) throw Error("QSeries::constant: prec must be positive");
    return s;
}

QSeries QSeries::monomial(const Rational& c, long k, long prec)
{
    if (prec <= k) throw Error("QSeries::monomial: prec must exceed the exponent");
    QSeries s(2);
    s.val_ = k;
    s.prec_ = prec;
    s.c_.assign(static_cast<size_t>(prec - k), kZero);
    s.c_[0] = c;
    return s;
}

QSeries QSeries::from_coeffs(long valuation, std::vector<Rational> coeffs)
{
    if (coeffs.empty()) throw Error("QSeries::from_coeffs: empty coefficient block");
    QSeries s(valuation + static_cast<long>(coeffs.size()));
    s.val_ = valuation;
    s.prec_ = valuation + static_cast<long>(coeffs.size());
    s.c_ = std::move(coeffs);
    return s;
}

long QSeries::order_of_vanishing() const
{
    for (size_t i = 0; i < c_.size(); ++i)
        if (!is_zero(c_[i])) return val_ + static_cast<long>(i);
    return prec_;
}

const Rational& QSeries::coeff_at(long n) const
{
    if (n >= prec_)
        throw PrecisionExceeded("coefficient of q^" + std::to_string(n) +
                                " requested but series is only exact below q^" +
                                std::to_string(prec_));
    if (n < val_) return kZero;
    return c_[static_cast<size_t>(n - val_)];
}

QSeries QSeries::add(const QSeries& b) const
{
    long prec = std::min(prec_, b.prec_);
    long val = std::min(val_, b.val_);
    if (prec <= val) val = prec - 1;
    QSeries r(2);
    r.val_ = val;
    r.prec_ = prec;
    r.c_.assign(static_cast<size_t>(prec - val), kZero);
    for (long n = val; n < prec; ++n) {
        Rational v = 0;
        if (n >= val_ && n < prec_) v += c_[static_cast<size_t>(n - val_)];
        if (n >= b.val_ && n < b.prec_) v += b.c_[static_cast<size_t>(n - b.val_)];
        r.c_[static_cast<size_t>(n - val)] = v;
    }
    return r;
}

QSeries QSeries::sub(const QSeries& b) const { return add(b.negate()); }

QSeries QSeries::negate() const
{
    QSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QSeries QSeries::scalar_mul(const Rational& c) const
{
    QSeries r = *this;
    for (auto& x : r.c_) x *= c;
    return r;
}

QSeries QSeries::mul(const QSeries& b) const
{
    long val = val_ + b.val_;
    long prec = std::min(prec_ + b.val_, b.prec_ + val_);
    QSeries r(2);
    r.val_ = val;
    r.prec_ = prec;
    if (prec <= val) { // no provable coefficients left; keep an empty window
        r.val_ = prec - 1;
    }
    r.c_.assign(static_cast<size_t>(r.prec_ - r.val_), kZero);
    Rational tmp;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (is_zero(c_[i])) continue;
        long ei = val_ + static_cast<long>(i);
        size_t jmax = std::min(b.c_.size(), static_cast<size_t>(std::max(0L, prec - ei - b.val_)));
        for (size_t j = 0; j < jmax; ++j) {
            if (is_zero(b.c_[j])) continue;
            tmp = c_[i] * b.c_[j];
            r.c_[static_cast<size_t>(ei + b.val_ + static_cast<long>(j) - r.val_)] += tmp;
        }
    }
    return r;
}

QSeries QSeries::invert() const
{
    long v = order_of_vanishing();
    if (v == prec_)
        throw ZeroLeadingCoefficient("cannot invert a series that vanishes to its precision");
    // Write the series as q^v u with u(0) != 0; then 1/u satisfies
    // w_0 = 1/u_0 and w_k = -(1/u_0) sum_{j=1..k} u_j w_{k-j}.
    long len = prec_ - v;
    std::vector<Rational> u(static_cast<size_t>(len));
    for (long k = 0; k < len; ++k) u[static_cast<size_t>(k)] = coeff_at(v + k);
    std::vector<Rational> w(static_cast<size_t>(len));
    Rational inv0 = 1 / u[0];
    w[0] = inv0;
    for (long k = 1; k < len; ++k) {
        Rational acc = 0;
        for (long j = 1; j <= k; ++j) {
            if (is_zero(u[static_cast<size_t>(j)])) continue;
            acc += u[static_cast<size_t>(j)] * w[static_cast<size_t>(k - j)];
        }
        w[static_cast<size_t>(k)] = -inv0 * acc;
    }
    // Result is q^{-v} (1/u), exact on [-v, prec - 2v).
    QSeries r(2);
    r.val_ = -v;
    r.prec_ = prec_ - 2 * v;
    r.c_.assign(w.begin(), w.end());
    return r;
}

QSeries QSeries::pow(long k) const
{
    if (k < 0) return invert().pow(-k);
    if (k == 0) return QSeries::constant(1, std::max(prec_, 1L));
    QSeries acc = *this;
    k -= 1;
    QSeries base = *this;
    while (k > 0) {
        if (k & 1) acc = acc.mul(base);
        k >>= 1;
        if (k > 0) base = base.mul(base);
    }
    return acc;
}

QSeries QSeries::substitute_power(long k) const
{
    if (k < 1) throw Error("substitute_power: k must be >= 1");
    if (k == 1) return *this;
    QSeries r(2);
    r.val_ = val_ * k;
    r.prec_ = prec_ * k;
    r.c_.assign(static_cast<size_t>(r.prec_ - r.val_), kZero);
    for (size_t i = 0; i < c_.size(); ++i)
        r.c_[i * static_cast<size_t>(k)] = c_[i];
    return r;
}

QSeries QSeries::negate_q() const
{
    QSeries r = *this;
    for (size_t i = 0; i < r.c_.size(); ++i) {
        long n = val_ + static_cast<long>(i);
        if (n % 2 != 0) r.c_[i] = -r.c_[i];
    }
    return r;
}

namespace {
// Smallest n with m*n + r >= x.
long ceil_progression(long x, long r, long m)
{
    long t = x - r;
    long n = t / m;
    if (n * m < t) ++n; // works for negatives too: adjust toward +inf
    while (m * n + r < x) ++n;
    while (m * (n - 1) + r >= x) --n;
    return n;
}
} // namespace

QSeries QSeries::dissect(long m, long r) const
{
    if (m < 1 || r < 0 || r >= m) throw Error("dissect: need m >= 1 and 0 <= r < m");
    long nlo = ceil_progression(val_, r, m);
    long nhi = ceil_progression(prec_, r, m); // exclusive
    if (nhi <= nlo) nlo = nhi - 1;
    QSeries out(2);
    out.val_ = nlo;
    out.prec_ = nhi;
    out.c_.assign(static_cast<size_t>(nhi - nlo), kZero);
    for (long n = nlo; n < nhi; ++n) {
        long e = m * n + r;
        if (e >= val_ && e < prec_) out.c_[static_cast<size_t>(n - nlo)] = c_[static_cast<size_t>(e - val_)];
    }
    return out;
}

QSeries QSeries::q_shift(long k) const
{
    QSeries r = *this;
    r.val_ += k;
    r.prec_ += k;
    return r;
}

QSeries QSeries::truncate(long n) const
{
    if (n >= prec_) return *this;
    if (n <= val_) {
        QSeries r(2);
        r.val_ = n - 1;
        r.prec_ = n;
        r.c_.assign(1, kZero);
        return r;
    }
    QSeries r = *this;
    r.prec_ = n;
    r.c_.resize(static_cast<size_t>(n - val_));
    return r;
}

void QSeries::mul_binomial_inplace(int sign, long k)
{
    mul_binomial_inplace(Rational(1), sign, k);
}

void QSeries::mul_binomial_inplace(const Rational& c, int sign, long k)
{
    if (k <= 0) throw Error("mul_binomial_inplace: exponent must be positive");
    // (1 + s c q^k): top-down so each source coefficient is still the old one.
    for (long n = prec_ - 1; n >= val_ + k; --n) {
        const Rational& src = c_[static_cast<size_t>(n - k - val_)];
        if (is_zero(src)) continue;
        if (sign > 0)
            c_[static_cast<size_t>(n - val_)] += c * src;
        else
            c_[static_cast<size_t>(n - val_)] -= c * src;
    }
}

void QSeries::div_binomial_inplace(int sign, long k)
{
    if (k <= 0) throw Error("div_binomial_inplace: exponent must be positive");
    // b = a / (1 + s q^k)  <=>  b_n = a_n - s b_{n-k}, ascending.
    for (long n = val_ + k; n < prec_; ++n) {
        const Rational& prev = c_[static_cast<size_t>(n - k - val_)];
        if (is_zero(prev)) continue;
        if (sign > 0)
            c_[static_cast<size_t>(n - val_)] -= prev;
        else
            c_[static_cast<size_t>(n - val_)] += prev;
    }
}

bool QSeries::equal_to_order(const QSeries& a, const QSeries& b, long n)
{
    if (n >= a.prec_ || n >= b.prec_)
        throw PrecisionExceeded("equal_to_order(" + std::to_string(n) +
                                ") exceeds a tracked precision");
    for (long e = std::min(a.val_, b.val_); e <= n; ++e)
        if (a.coeff_at(e) != b.coeff_at(e)) return false;
    return true;
}

bool operator==(const QSeries& a, const QSeries& b)
{
    if (a.valuation() != b.valuation() || a.prec() != b.prec()) return false;
    for (long n = a.valuation(); n < a.prec(); ++n)
        if (a.coeff_at(n) != b.coeff_at(n)) return false;
    return true;
}

std::string QSeries::str(long max_terms) const
{
    std::ostringstream os;
    long shown = 0;
    bool first = true;
    for (long n = val_; n < prec_ && shown < max_terms; ++n) {
        const Rational& c = coeff_at(n);
        if (is_zero(c)) continue;
        if (!first) os << (sgn(c) > 0 ? " + " : " - ");
        else if (sgn(c) < 0)
            os << "-";
        Rational a = abs(c);
        if (a != 1 || n == 0) os << to_string(a);
        if (n != 0) {
            if (a != 1) os << "*";
            os << "q";
            if (n != 1) os << "^" << n;
        }
        first = false;
        ++shown;
    }
    if (first) os << "0";
    os << " + O(q^" << prec_ << ")";
    return os.str();
}

std::string QSeries::to_json() const
{
    std::ostringstream os;
    os << "{\"valuation\": " << val_ << ", \"prec\": " << prec_ << ", \"coeffs\": [";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << '"' << to_string(c_[i]) << '"';
    }
    os << "]}";
    return os.str();
}

QSeries QSeries::from_json(const std::string& text)
{
    // narrow parser for the shape emitted above
    auto grab_long = [&](const char* key) {
        size_t k = text.find(key);
        if (k == std::string::npos) throw Error("QSeries::from_json: missing key");
        k = text.find(':', k);
        return std::stol(text.substr(k + 1));
    };
    long val = grab_long("\"valuation\"");
    long prec = grab_long("\"prec\"");
    std::vector<Rational> coeffs;
    size_t pos = text.find('[');
    size_t end = text.find(']', pos);
    while (true) {
        size_t a = text.find('"', pos);
        if (a == std::string::npos || a > end) break;
        size_t b = text.find('"', a + 1);
        coeffs.push_back(rational_from_string(text.substr(a + 1, b - a - 1)));
        pos = b + 1;
    }
    if (static_cast<long>(coeffs.size()) != prec - val)
        throw Error("QSeries::from_json: coefficient count does not match the window");
    return QSeries::from_coeffs(val, std::move(coeffs));
}

Rational rational_from_string(const std::string& s)
{
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw Error("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

} // namespace qmock
