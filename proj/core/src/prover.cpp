#include "qmock/prover.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qmock {

const char* to_string(ProofStatus s)
{
    switch (s) {
    case ProofStatus::proved: return "proved";
    case ProofStatus::expansion_failed: return "expansion_failed";
    case ProofStatus::data_mismatch: return "data_mismatch";
    }
    return "?";
}

long euler_phi(long n)
{
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

long cusp_count_formula(long N)
{
    long sum = 0;
    for (long d = 1; d <= N; ++d)
        if (N % d == 0) sum += euler_phi(d) * euler_phi(N / d);
    return sum / 2;
}

namespace {

long mod_pos(long a, long n) { return ((a % n) + n) % n; }

// canonical key of the class of (a, c) mod N under (a,c) ~ +-(a + j c, c)
std::pair<long, long> orbit_key(long a, long c, long N)
{
    std::pair<long, long> best{N, N};
    for (int s = 0; s < 2; ++s) {
        long aa = s ? mod_pos(-a, N) : mod_pos(a, N);
        long cc = s ? mod_pos(-c, N) : mod_pos(c, N);
        for (long j = 0; j < N; ++j) {
            long av = mod_pos(aa + j * cc, N);
            best = std::min(best, {cc, av});
        }
    }
    return best;
}

} // namespace

std::vector<CuspDatum> cusps_gamma1(long N)
{
    if (N <= 4) throw UnsupportedLevel("cusps_gamma1 requires N > 4");
    std::set<std::pair<long, long>> classes;
    for (long c = 0; c < N; ++c) {
        for (long a = 0; a < N; ++a) {
            if (std::gcd(std::gcd(a, c), N) != 1) continue;
            classes.insert(orbit_key(a, c, N));
        }
    }
    std::vector<CuspDatum> out;
    for (const auto& [c, a] : classes) {
        // lift (a, c) mod N to a coprime integer pair; c = 0 lifts to N for
        // the finite representative unless the class is infinity itself
        Cusp cusp;
        if (c == 0 && (a == 1 || a == N - 1)) {
            cusp = Cusp{1, 0};
        } else {
            long cc = (c == 0) ? N : c;
            long aa = a;
            while (std::gcd(aa, cc) != 1) aa += N;
            cusp = Cusp{aa, cc};
        }
        long width = (cusp.c == 0) ? 1 : N / std::gcd(N, cusp.c);
        out.push_back({cusp, width});
    }
    std::sort(out.begin(), out.end(), [](const CuspDatum& x, const CuspDatum& y) {
        if (x.cusp.c != y.cusp.c) return x.cusp.c < y.cusp.c;
        return x.cusp.a < y.cusp.a;
    });
    if (out.empty() || !out.front().cusp.is_infinity())
        throw Error("cusps_gamma1: infinity not found");
    if (static_cast<long>(out.size()) != cusp_count_formula(N))
        throw Error("cusps_gamma1: orbit count disagrees with the divisor-sum formula");
    return out;
}

namespace {

// P2(t) = {t}^2 - {t} + 1/6
Rational periodic_bernoulli2(const Rational& t)
{
    Rational frac = t - Rational(floor_int(t));
    return frac * frac - frac + rat(1, 6);
}

} // namespace

Rational ord_at_cusp(const ProductForm& p, const Cusp& cusp, long N, long width)
{
    for (const auto& [key, e] : p.factors)
        if (N % key.first != 0)
            throw LevelMismatch("factor modulus " + std::to_string(key.first) +
                                " does not divide the level " + std::to_string(N));
    if (cusp.is_infinity()) return Rational(p.qpow) * width;
    Rational ord = 0;
    for (const auto& [key, E] : p.factors) {
        auto [delta, g] = key;
        long e = std::gcd(delta, cusp.c);
        if (g == 0) {
            ord += Rational(E) * Rational(e * e, 24 * delta);
        } else {
            Rational t = Rational(cusp.a * g, e);
            t.canonicalize();
            ord += Rational(E) * Rational(e * e, 4 * delta) * periodic_bernoulli2(t);
        }
    }
    ord.canonicalize();
    return ord * width;
}

Rational ord_at_cusp(const ProductForm& p, const CuspDatum& cd, long N)
{
    return ord_at_cusp(p, cd.cusp, N, cd.width);
}

Rational valence_bound(const IdentityInstance& id, const std::vector<CuspDatum>& cusps,
                       std::vector<std::vector<Rational>>* ord_table_out)
{
    if (ord_table_out) ord_table_out->clear();
    std::vector<std::vector<Rational>> table(id.terms.size());
    for (size_t j = 0; j < id.terms.size(); ++j) {
        table[j].reserve(cusps.size());
        for (const auto& cd : cusps) table[j].push_back(ord_at_cusp(id.terms[j].monomial, cd, id.level));
    }
    Rational B = 0;
    for (size_t i = 0; i < cusps.size(); ++i) {
        if (cusps[i].cusp.is_infinity()) continue;
        Rational mn = 0; // the constant term contributes ORD 0 everywhere
        for (size_t j = 0; j < id.terms.size(); ++j) mn = std::min(mn, table[j][i]);
        B += mn;
    }
    if (ord_table_out) *ord_table_out = std::move(table);
    return B;
}

Rational valence_bound(const IdentityInstance& id)
{
    auto cusps = cusps_gamma1(id.level);
    return valence_bound(id, cusps, nullptr);
}

IdentityInstance normalize_identity(const std::vector<std::pair<Rational, ProductForm>>& raw,
                                    long level, long normalizer_index)
{
    if (raw.empty()) throw Error("normalize_identity: no terms");
    long idx = normalizer_index < 0 ? static_cast<long>(raw.size()) - 1 : normalizer_index;
    if (idx >= static_cast<long>(raw.size())) throw Error("normalize_identity: bad index");
    const auto& [cn, norm] = raw[static_cast<size_t>(idx)];
    if (is_zero(cn) || is_zero(norm.coefficient))
        throw ZeroTheta("normalize_identity: degenerate normalizer");
    IdentityInstance id;
    id.level = level;
    id.constant = -1;
    for (long j = 0; j < static_cast<long>(raw.size()); ++j) {
        if (j == idx) continue;
        const auto& [cj, mj] = raw[static_cast<size_t>(j)];
        IdentityInstance::Term t;
        t.alpha = -cj / cn;
        t.monomial = pf_div(mj, norm);
        // fold the quotient's scalar into alpha so the monomial is monic
        t.alpha *= t.monomial.coefficient;
        t.monomial.coefficient = 1;
        id.terms.push_back(std::move(t));
    }
    return id;
}

ProofCertificate prove(const IdentityInstance& id, long extra_order_margin, long min_verify_order)
{
    ProofCertificate cert;
    cert.level = id.level;
    cert.cusps = cusps_gamma1(id.level);
    cert.bound_B = valence_bound(id, cert.cusps, &cert.ord_table);

    // self-check: each normalized term must have total divisor degree zero,
    // otherwise it is not a modular function at this level and the bound
    // below it would be meaningless
    for (size_t j = 0; j < cert.ord_table.size(); ++j) {
        Rational sum = 0;
        for (const auto& o : cert.ord_table[j]) sum += o;
        if (!is_zero(sum))
            throw Error("prove: term " + std::to_string(j) +
                        " fails the valence-degree check (sum ORD = " + to_string(sum) +
                        "); the normalized term is not modular at level " +
                        std::to_string(id.level));
    }

    // smallest integer strictly greater than -B
    Rational minusB = -cert.bound_B;
    Int req = floor_int(minusB) + 1;
    cert.required_order = req.get_si();

    long expand_to = std::max(cert.required_order + extra_order_margin, min_verify_order + 1);
    expand_to = std::max(expand_to, 1L);
    QSeries residue = QSeries::constant(id.constant, expand_to);
    for (const auto& t : id.terms) {
        if (expand_to <= t.monomial.qpow) continue;
        residue = residue.add(expand(t.monomial, expand_to).scalar_mul(t.alpha));
    }
    long first_nonzero = residue.order_of_vanishing();
    if (first_nonzero == residue.prec()) {
        cert.status = ProofStatus::proved;
        cert.verified_order = residue.prec() - 1;
        cert.first_failure = -1;
    } else {
        cert.status = ProofStatus::expansion_failed;
        cert.verified_order = first_nonzero - 1;
        cert.first_failure = first_nonzero;
    }
    return cert;
}

std::string ProofCertificate::to_json() const
{
    std::ostringstream os;
    os << "{";
    os << "\"label\": \"" << label << "\", ";
    os << "\"level\": " << level << ", ";
    os << "\"cusps\": [";
    for (size_t i = 0; i < cusps.size(); ++i) {
        if (i) os << ", ";
        os << "{\"a\": " << cusps[i].cusp.a << ", \"c\": " << cusps[i].cusp.c
           << ", \"width\": " << cusps[i].width << "}";
    }
    os << "], ";
    os << "\"ord_table\": [";
    for (size_t j = 0; j < ord_table.size(); ++j) {
        if (j) os << ", ";
        os << "[";
        for (size_t i = 0; i < ord_table[j].size(); ++i) {
            if (i) os << ", ";
            os << "\"" << to_string(ord_table[j][i]) << "\"";
        }
        os << "]";
    }
    os << "], ";
    os << "\"B\": \"" << to_string(bound_B) << "\", ";
    os << "\"required_order\": " << required_order << ", ";
    os << "\"verified_order\": " << verified_order << ", ";
    os << "\"status\": \"" << to_string(status) << "\"";
    if (first_failure >= 0) os << ", \"first_failure\": " << first_failure;
    os << "}";
    return os.str();
}

} // namespace qmock
