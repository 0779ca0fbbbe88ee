#ifndef QMOCK_DSL_HPP
#define QMOCK_DSL_HPP

#include <memory>
#include <string>
#include <vector>

#include "qmock/appell_lerch.hpp"
#include "qmock/catalog.hpp"

namespace qmock {

/* The expression language the manifest and the CLI speak.
 *
 *   expr     := term { ("+"|"-") term }
 *   term     := power { ("*"|"/") power }
 *   power    := "-" power | atom [ "^" sint ]
 *   atom     := rational | "q" | "T" uint | "Tg(" sint "," uint ")"
 *             | "Tb(" sint "," uint ")" | "Th(" monomial ";" monomial ")"
 *             | "AL(" monomial "," monomial "," monomial ")"
 *             | name "(" monomial ")" | "(" expr ")" | "(" uint ":" uint ")"
 *   monomial := [ "-" ] ( "1" | "q" [ "^" sint ] )
 *   rational := sint [ "/" uint ]
 *
 * "T12" is the eta-like (q^12;q^12), "Tg(5,12)" the theta of q^5 at base
 * q^12, "Tb(2,24)" its barred companion, "Th(q^3;-q^9)" the general form,
 * "(12:5)" the bare Pochhammer block (q^5;q^12), and names are catalogue
 * calls such as "B2(q)" or "A2(-q^8)". Whitespace is insignificant,
 * multiplication is always explicit, division is left-associative and unary
 * minus binds looser than "^".
 */
struct AstNode;
using AstPtr = std::shared_ptr<const AstNode>;

struct AstNode {
    enum class Kind {
        Number,   // number
        QPower,   // q^a
        Theta,    // T m
        ThetaG,   // Tg(a, m)
        ThetaB,   // Tb(a, m)
        ThetaGen, // Th(sign_x q^a ; sign_base q^m)
        Block,    // (m : a)
        AL,       // AL(x, base, z)
        Catalog,  // name(arg)
        Neg,
        Add,
        Sub,
        Mul,
        Div,
        Pow, // lhs ^ a
    };
    Kind kind{};
    Rational number = 0;
    long a = 0;
    long m = 0;
    int sign_x = 1, sign_base = 1;
    SignedMonomial arg_x, arg_base, arg_z;
    MockName catalog{};
    AstPtr lhs, rhs;
    SourceSpan span;
};

bool ast_equal(const AstNode& a, const AstNode& b);

AstPtr parse(const std::string& input);
std::string render(const AstNode& ast);

// Evaluates through the theta, Appell-Lerch and catalogue layers. The result
// may carry less precision than `order` when inversions lose ground; callers
// wanting a guaranteed order use eval_series_at.
QSeries eval_series(const AstNode& ast, long order);

// Re-evaluates at increasing internal order until the result is exact below
// `order`, then truncates to it.
QSeries eval_series_at(const AstNode& ast, long order);

// Flattens a +-combination of theta-quotient monomials into prover input;
// NotAThetaCombination identifies the first offending node.
std::vector<std::pair<Rational, ProductForm>> eval_monomials(const AstNode& ast);

} // namespace qmock

#endif
