#ifndef QMOCK_PROVER_HPP
#define QMOCK_PROVER_HPP

#include <string>
#include <vector>

#include "qmock/theta.hpp"

namespace qmock {

// A cusp a/c in lowest terms; infinity is (1,0).
struct Cusp {
    long a = 1;
    long c = 0;
    bool is_infinity() const { return c == 0; }
    bool operator==(const Cusp& o) const { return a == o.a && c == o.c; }
};

struct CuspDatum {
    Cusp cusp;
    long width = 1;
};

// g = sum_j alpha_j F_j + C0, claimed to vanish identically at level N.
struct IdentityInstance {
    struct Term {
        Rational alpha;
        ProductForm monomial;
    };
    std::vector<Term> terms;
    Rational constant = 0;
    long level = 0;
};

enum class ProofStatus { proved, expansion_failed, data_mismatch };

const char* to_string(ProofStatus s);

struct ProofCertificate {
    std::string label;
    long level = 0;
    std::vector<CuspDatum> cusps;
    std::vector<std::vector<Rational>> ord_table; // rows: terms, cols: cusps
    Rational bound_B = 0;
    long required_order = 0; // smallest integer strictly greater than -B
    long verified_order = 0; // residue coefficients vanish through this exponent
    ProofStatus status = ProofStatus::expansion_failed;
    long first_failure = -1; // exponent of the first nonzero residue coefficient

    std::string to_json() const; // stable key order, golden-file friendly
};

/* A complete set of inequivalent cusps of Gamma_1(N) with widths, N > 4.
 * Representatives are found by reducing pairs (a, c) mod N under
 * (a, c) ~ +-(a + j c, c) and lifting each class to a coprime pair. The
 * width of a/c is N / gcd(N, c); infinity (c = 0) has width 1 and heads the
 * list. */
std::vector<CuspDatum> cusps_gamma1(long N);

// Number of cusps by the divisor-sum formula (1/2) sum_{d|N} phi(d) phi(N/d),
// valid for N > 4; used as a cross-check against the orbit enumeration.
long cusp_count_formula(long N);

/* Invariant order ORD(p, cusp, Gamma_1(N)) = width * ord(p at a/c).
 *
 * At infinity the order is the q-valuation, i.e. the q-power of the form
 * (every block has constant term 1). At a finite cusp a/c the q-power
 * contributes nothing and each block contributes, with e = gcd(delta, c):
 *
 *     (q^delta;q^delta)^E : E e^2 / (24 delta)
 *     (q^g;q^delta)^E     : E (e^2 / (4 delta)) P2(a g / e),  0 < g < delta
 *
 * where P2(t) = {t}^2 - {t} + 1/6. Factor maps here always carry blocks in
 * +-g pairs of equal exponent, so the paired total reproduces the classical
 * generalized-eta order e^2/(2 delta) P2(a g / e). Every factor modulus must
 * divide N (LevelMismatch otherwise). */
Rational ord_at_cusp(const ProductForm& p, const Cusp& cusp, long N, long width);

// Convenience overload: width looked up from the cusp itself.
Rational ord_at_cusp(const ProductForm& p, const CuspDatum& cd, long N);

// B = sum over finite cusps of min({ORD(F_j)} U {0}).
Rational valence_bound(const IdentityInstance& id);
Rational valence_bound(const IdentityInstance& id, const std::vector<CuspDatum>& cusps,
                       std::vector<std::vector<Rational>>* ord_table_out);

/* Normalizes a raw identity sum(c_j M_j) = 0 by dividing through by the
 * term at normalizer_index (default: the last) and flipping the overall sign
 * so that the chosen term becomes the constant -1. */
IdentityInstance normalize_identity(const std::vector<std::pair<Rational, ProductForm>>& raw,
                                    long level, long normalizer_index = -1);

// Runs the valence-formula proof: computes cusp data, the ORD table, B, the
// required order, and expands the residue to required_order + margin
// (at least through min_verify_order when that is larger). Any nonzero
// residue coefficient yields expansion_failed with its exponent reported.
ProofCertificate prove(const IdentityInstance& id, long extra_order_margin = 10,
                       long min_verify_order = -1);

long euler_phi(long n);

} // namespace qmock

#endif
