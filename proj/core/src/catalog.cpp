#include "qmock/catalog.hpp"

#include <array>
#include <functional>
#include <map>

namespace qmock {

const char* to_string(MockName n)
{
    switch (n) {
    case MockName::A2: return "A2";
    case MockName::B2: return "B2";
    case MockName::mu2: return "mu2";
    case MockName::phi6: return "phi6";
    case MockName::psi6: return "psi6";
    case MockName::rho6: return "rho6";
    case MockName::sigma6: return "sigma6";
    case MockName::lambda6: return "lambda6";
    case MockName::mu6: return "mu6";
    case MockName::psiminus6: return "psim6";
    case MockName::S08: return "S08";
    case MockName::S18: return "S18";
    case MockName::U08: return "U08";
    case MockName::U18: return "U18";
    case MockName::V08: return "V08";
    case MockName::V18: return "V18";
    }
    return "?";
}

std::optional<MockName> mock_name_from_string(const std::string& s)
{
    for (MockName n : kAllMockNames)
        if (s == to_string(n)) return n;
    if (s == "psiminus6") return MockName::psiminus6;
    return std::nullopt;
}

int order_class(MockName n)
{
    switch (n) {
    case MockName::A2:
    case MockName::B2:
    case MockName::mu2: return 2;
    case MockName::phi6:
    case MockName::psi6:
    case MockName::rho6:
    case MockName::sigma6:
    case MockName::lambda6:
    case MockName::mu6:
    case MockName::psiminus6: return 6;
    default: return 8;
    }
}

namespace {

// Shared shape of all sixteen sums: terms linked by first-order recurrences
// t -> t * c * q^shift * prod(1 + s q^a) / prod(1 + s' q^b). Each helper
// mutates the running term in place at fixed prec.
struct Term {
    QSeries s;
    explicit Term(long prec) : s(QSeries::constant(1, prec)) {}
    Term& shift(long k)
    {
        s = s.q_shift(k);
        return *this;
    }
    Term& negate()
    {
        s = s.negate();
        return *this;
    }
    Term& mul1p(long k) // * (1 + q^k)
    {
        s.mul_binomial_inplace(+1, k);
        return *this;
    }
    Term& mul1m(long k) // * (1 - q^k)
    {
        s.mul_binomial_inplace(-1, k);
        return *this;
    }
    Term& div1p(long k)
    {
        s.div_binomial_inplace(+1, k);
        return *this;
    }
    Term& div1m(long k)
    {
        s.div_binomial_inplace(-1, k);
        return *this;
    }
};

QSeries sum_terms(long order, Term t, const std::function<void(Term&, long)>& advance,
                  long first_index = 0)
{
    QSeries acc = QSeries::zero(order);
    long n = first_index;
    while (t.s.valuation() < order) {
        acc = acc.add(t.s.truncate(order));
        advance(t, n);
        ++n;
    }
    return acc;
}

} // namespace

QSeries eulerian_series(MockName name, long order)
{
    if (order < 1) throw Error("eulerian_series: order must be >= 1");
    const long N = order;
    switch (name) {
    case MockName::A2: {
        Term t(N + 1);
        t.shift(1).div1m(1); // q/(1-q)
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.shift(1).mul1p(2 * n + 2).div1m(2 * n + 3);
        });
    }
    case MockName::B2: {
        Term t(N);
        t.div1m(1);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.shift(1).mul1p(2 * n + 1).div1m(2 * n + 3);
        });
    }
    case MockName::mu2: {
        Term t(N);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.negate().shift(2 * n + 1).mul1m(2 * n + 1).div1p(2 * n + 2).div1p(2 * n + 2);
        });
    }
    case MockName::phi6: {
        Term t(N);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.negate().shift(2 * n + 1).mul1m(2 * n + 1).div1p(2 * n + 1).div1p(2 * n + 2);
        });
    }
    case MockName::psi6: {
        Term t(N + 1);
        t.shift(1).div1p(1);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.negate().shift(2 * n + 3).mul1m(2 * n + 1).div1p(2 * n + 2).div1p(2 * n + 3);
        });
    }
    case MockName::rho6: {
        Term t(N);
        t.div1m(1);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.shift(n + 1).mul1p(n + 1).div1m(2 * n + 3);
        });
    }
    case MockName::sigma6: {
        Term t(N + 1);
        t.shift(1).div1m(1);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.shift(n + 2).mul1p(n + 1).div1m(2 * n + 3);
        });
    }
    case MockName::lambda6: {
        Term t(N);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.negate().shift(1).mul1m(2 * n + 1).div1p(n + 1);
        });
    }
    case MockName::mu6: {
        // 1/2 + 1/2 sum (1 + q^n) s_n with s_n = (-1)^n q^{n+1} (q;q^2)_n / (-q;q)_{n+1}
        QSeries acc = QSeries::constant(rat(1, 2), N);
        Term t(N + 1);
        t.shift(1).div1p(1);
        long n = 0;
        while (t.s.valuation() < N) {
            QSeries term = t.s.truncate(N);
            if (n == 0)
                term = term.scalar_mul(2); // (1 + q^0)
            else
                term = term.add(t.s.q_shift(n).truncate(N));
            acc = acc.add(term.scalar_mul(rat(1, 2)));
            t.negate().shift(1).mul1m(2 * n + 1).div1p(n + 2);
            ++n;
        }
        return acc;
    }
    case MockName::psiminus6: {
        // the (q;q^2) in the definition is read as (q;q^2)_n; the stated
        // Appell-Lerch form is the arbiter (see verify_entry)
        Term t(N + 1);
        t.shift(1).div1m(1);
        return sum_terms(N, std::move(t),
                         [](Term& t, long n) {
                             t.shift(1).mul1p(2 * n - 1).mul1p(2 * n).div1m(2 * n + 1);
                         },
                         1);
    }
    case MockName::S08: {
        Term t(N);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.shift(2 * n + 1).mul1p(2 * n + 1).div1p(2 * n + 2);
        });
    }
    case MockName::S18: {
        Term t(N);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.shift(2 * n + 3).mul1p(2 * n + 1).div1p(2 * n + 2);
        });
    }
    case MockName::U08: {
        Term t(N);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.shift(2 * n + 1).mul1p(2 * n + 1).div1p(4 * n + 4);
        });
    }
    case MockName::U18: {
        Term t(N + 1);
        t.shift(1).div1p(2);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.shift(2 * n + 3).mul1p(2 * n + 1).div1p(4 * n + 6);
        });
    }
    case MockName::V08: {
        Term t(N);
        QSeries sum = sum_terms(N, std::move(t), [](Term& t, long n) {
            t.shift(2 * n + 1).mul1p(2 * n + 1).div1m(2 * n + 1);
        });
        return sum.scalar_mul(2).add(QSeries::constant(-1, N));
    }
    case MockName::V18: {
        Term t(N + 1);
        t.shift(1).div1m(1);
        return sum_terms(N, std::move(t), [](Term& t, long n) {
            t.shift(2 * n + 3).mul1p(2 * n + 1).div1m(2 * n + 3);
        });
    }
    }
    throw Error("eulerian_series: unknown name");
}

namespace {

ProductForm quotient(std::initializer_list<std::pair<long, long>> etas_num_den, Rational c = 1,
                     long qpow = 0)
{
    // each pair is (delta, exponent) of an eta factor (q^delta;q^delta)^e
    ProductForm p = ProductForm::scalar(c, qpow);
    for (const auto& [delta, e] : etas_num_den) p.push_factor(delta, 0, e);
    p.canonicalize();
    return p;
}

Expression make_al_rep(MockName name)
{
    using SM = SignedMonomial;
    Expression e;
    auto al = [&](Rational c, long qpow, SM x, long D, SM z) {
        e.al_terms.push_back({c, qpow, ALParams(x, D, z)});
    };
    switch (name) {
    case MockName::A2: al(-1, 0, SM(1, 1), 4, SM(1, 2)); break;
    case MockName::B2: al(-1, -1, SM(1, 0), 4, SM(1, 3)); break;
    case MockName::mu2:
        al(4, 0, SM(-1, 1), 4, SM(-1, 0));
        e.theta_terms.push_back(quotient({{2, 8}, {1, -3}, {4, -4}}, -1));
        break;
    case MockName::phi6: al(2, 0, SM(1, 1), 3, SM(-1, 0)); break;
    case MockName::psi6: al(1, 0, SM(1, 0), 3, SM(-1, 1)); break;
    case MockName::rho6: al(-1, -1, SM(1, 0), 6, SM(1, 1)); break;
    case MockName::sigma6: al(-1, 0, SM(1, 2), 6, SM(1, 1)); break;
    case MockName::lambda6:
        // the quotient T1^3 T6^2 / (T2^3 T3); the T1 T3 T12/(T4 T6) sometimes
        // quoted for this entry does not close the representation
        al(2, -1, SM(1, 0), 6, SM(-1, 2));
        e.theta_terms.push_back(quotient({{1, 3}, {6, 2}, {2, -3}, {3, -1}}));
        break;
    case MockName::mu6:
        al(2, 0, SM(1, 2), 6, SM(-1, 0));
        e.theta_terms.push_back(quotient({{1, 2}, {3, 2}, {2, -2}, {6, -1}}, rat(-1, 2)));
        break;
    case MockName::psiminus6:
        al(rat(-1, 2), 0, SM(1, 0), 3, SM(1, 1));
        e.theta_terms.push_back(quotient({{6, 3}, {1, -1}, {2, -1}}, rat(1, 2), 1));
        break;
    case MockName::S08:
        al(2, 0, SM(-1, 3), 8, SM(-1, 0));
        e.theta_terms.push_back(pf_mul(
            ProductForm::scalar(1, 1),
            pf_div(pf_mul(theta(1, 8, true), pf_pow(theta(2, 8, false), 2)), pf_pow(theta(3, 8, false), 2))));
        break;
    case MockName::S18:
        al(-2, -1, SM(-1, 1), 8, SM(-1, 0));
        e.theta_terms.push_back(pf_mul(
            ProductForm::scalar(1, -1),
            pf_div(pf_mul(theta(3, 8, true), pf_pow(theta(2, 8, false), 2)), pf_pow(theta(1, 8, false), 2))));
        break;
    case MockName::U08: al(2, 0, SM(-1, 1), 4, SM(-1, 0)); break;
    case MockName::U18: al(-1, 0, SM(-1, 1), 4, SM(-1, 2)); break;
    case MockName::V08:
        al(-2, -1, SM(1, 0), 8, SM(1, 1));
        e.theta_terms.push_back(quotient({{2, 3}, {4, 1}, {1, -2}, {8, -1}}, -1));
        break;
    case MockName::V18: al(-1, 0, SM(1, 2), 8, SM(1, 1)); break;
    }
    return e;
}

} // namespace

const Expression& al_rep(MockName name)
{
    static const std::map<MockName, Expression> reps = [] {
        std::map<MockName, Expression> m;
        for (MockName n : kAllMockNames) m.emplace(n, make_al_rep(n));
        return m;
    }();
    return reps.at(name);
}

QSeries al_rep_series(MockName name, long order) { return expression_series(al_rep(name), order); }

std::vector<Rational> coeffs(MockName name, long count)
{
    std::vector<Rational> out;
    if (count <= 0) return out;
    QSeries s = eulerian_series(name, count);
    out.reserve(static_cast<size_t>(count));
    for (long n = 0; n < count; ++n) out.push_back(s.coeff_at(n));
    return out;
}

bool verify_entry(MockName name, long order)
{
    QSeries a = eulerian_series(name, order);
    QSeries b = al_rep_series(name, order);
    return QSeries::equal_to_order(a, b, order - 1);
}

QSeries transformed_series(MockName name, long k, bool negate, long order)
{
    if (k < 1) throw Error("transformed_series: k must be >= 1");
    long internal = (order + k - 1) / k + 2;
    QSeries s = eulerian_series(name, internal);
    if (negate) s = s.negate_q(); // f(-q^k): twist the parity before dilating
    s = s.substitute_power(k);
    return s.truncate(order);
}

} // namespace qmock
