#include "qmock/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace qmock {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof()
    {
        skip_ws();
        return pos >= s.size();
    }
    char peek()
    {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c)
    {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what)
    {
        if (!accept(c))
            throw SyntaxError(std::string("expected '") + c + "' (" + what + ")",
                              {pos, std::min(pos + 1, s.size())});
    }

    long read_uint()
    {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw SyntaxError("expected an integer", {start, start + 1});
        return std::stol(s.substr(start, pos - start));
    }
    long read_sint()
    {
        skip_ws();
        bool neg = accept('-');
        long v = read_uint();
        return neg ? -v : v;
    }

    std::string read_ident()
    {
        skip_ws();
        size_t start = pos;
        if (pos >= s.size() || !std::isalpha(static_cast<unsigned char>(s[pos])))
            throw SyntaxError("expected a name", {start, start + 1});
        while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(start, pos - start);
    }

    SignedMonomial read_monomial()
    {
        skip_ws();
        size_t start = pos;
        int sign = accept('-') ? -1 : 1;
        skip_ws();
        if (pos < s.size() && s[pos] == '1') {
            ++pos;
            return SignedMonomial(sign, 0);
        }
        if (pos < s.size() && s[pos] == 'q') {
            ++pos;
            long e = 1;
            if (accept('^')) e = read_sint();
            return SignedMonomial(sign, e);
        }
        throw SyntaxError("expected a monomial (1, q or q^k, optionally negated)",
                          {start, std::min(pos + 1, s.size())});
    }

    AstPtr node(AstNode n, size_t start)
    {
        n.span = {start, pos};
        return std::make_shared<AstNode>(std::move(n));
    }

    AstPtr parse_expr()
    {
        size_t start = pos;
        AstPtr acc = parse_term();
        while (true) {
            skip_ws();
            if (accept('+')) {
                AstNode n;
                n.kind = AstNode::Kind::Add;
                n.lhs = acc;
                n.rhs = parse_term();
                acc = node(std::move(n), start);
            } else if (accept('-')) {
                AstNode n;
                n.kind = AstNode::Kind::Sub;
                n.lhs = acc;
                n.rhs = parse_term();
                acc = node(std::move(n), start);
            } else {
                return acc;
            }
        }
    }

    AstPtr parse_term()
    {
        size_t start = pos;
        AstPtr acc = parse_power();
        while (true) {
            skip_ws();
            if (accept('*')) {
                AstNode n;
                n.kind = AstNode::Kind::Mul;
                n.lhs = acc;
                n.rhs = parse_power();
                acc = node(std::move(n), start);
            } else if (accept('/')) {
                AstNode n;
                n.kind = AstNode::Kind::Div;
                n.lhs = acc;
                n.rhs = parse_power();
                acc = node(std::move(n), start);
            } else {
                return acc;
            }
        }
    }

    AstPtr parse_power()
    {
        size_t start = pos;
        skip_ws();
        if (accept('-')) { // unary minus binds looser than ^
            AstNode n;
            n.kind = AstNode::Kind::Neg;
            n.lhs = parse_power();
            return node(std::move(n), start);
        }
        AstPtr base = parse_atom();
        skip_ws();
        if (accept('^')) {
            AstNode n;
            n.kind = AstNode::Kind::Pow;
            n.a = read_sint();
            n.lhs = base;
            return node(std::move(n), start);
        }
        return base;
    }

    AstPtr parse_atom()
    {
        skip_ws();
        size_t start = pos;
        if (pos >= s.size()) throw SyntaxError("unexpected end of input", {start, start});
        char c = s[pos];

        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = read_uint();
            // a '/' directly followed by digits is part of a rational literal
            size_t save = pos;
            skip_ws();
            if (pos < s.size() && s[pos] == '/') {
                size_t slash = pos;
                ++pos;
                skip_ws();
                if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                    long den = read_uint();
                    AstNode n;
                    n.kind = AstNode::Kind::Number;
                    n.number = rat(num, den);
                    return node(std::move(n), start);
                }
                pos = slash; // plain division, let the term level handle it
            } else {
                pos = save;
            }
            AstNode n;
            n.kind = AstNode::Kind::Number;
            n.number = num;
            return node(std::move(n), start);
        }

        if (c == '(') {
            ++pos;
            // "(delta : g)" block atom, otherwise a parenthesized expression
            size_t save = pos;
            skip_ws();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                long delta = read_uint();
                skip_ws();
                if (pos < s.size() && s[pos] == ':') {
                    ++pos;
                    long g = read_uint();
                    expect(')', "block atom");
                    if (delta < 1 || g < 0 || g >= delta)
                        throw SyntaxError("block residue out of range", {start, pos});
                    AstNode n;
                    n.kind = AstNode::Kind::Block;
                    n.m = delta;
                    n.a = g;
                    return node(std::move(n), start);
                }
            }
            pos = save;
            AstPtr inner = parse_expr();
            expect(')', "parenthesized expression");
            return inner;
        }

        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name = read_ident();
            if (name == "q") {
                AstNode n;
                n.kind = AstNode::Kind::QPower;
                n.a = 1;
                return node(std::move(n), start);
            }
            if (name.size() > 1 && name[0] == 'T' &&
                std::all_of(name.begin() + 1, name.end(),
                            [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                AstNode n;
                n.kind = AstNode::Kind::Theta;
                n.m = std::stol(name.substr(1));
                if (n.m < 1) throw SyntaxError("theta modulus must be positive", {start, pos});
                return node(std::move(n), start);
            }
            if (name == "Tg" || name == "Tb") {
                expect('(', name.c_str());
                long a = read_sint();
                expect(',', name.c_str());
                long m = read_uint();
                expect(')', name.c_str());
                AstNode n;
                n.kind = (name == "Tg") ? AstNode::Kind::ThetaG : AstNode::Kind::ThetaB;
                n.a = a;
                n.m = m;
                return node(std::move(n), start);
            }
            if (name == "Th") {
                expect('(', "Th");
                SignedMonomial x = read_monomial();
                expect(';', "Th");
                SignedMonomial base = read_monomial();
                expect(')', "Th");
                if (base.exp < 1)
                    throw SyntaxError("Th base must be +-q^m with m >= 1", {start, pos});
                AstNode n;
                n.kind = AstNode::Kind::ThetaGen;
                n.sign_x = x.sign;
                n.a = x.exp;
                n.sign_base = base.sign;
                n.m = base.exp;
                return node(std::move(n), start);
            }
            if (name == "AL") {
                expect('(', "AL");
                SignedMonomial x = read_monomial();
                expect(',', "AL");
                SignedMonomial base = read_monomial();
                expect(',', "AL");
                SignedMonomial z = read_monomial();
                expect(')', "AL");
                if (base.sign != 1 || base.exp < 1)
                    throw SyntaxError("AL base must be q^D with D >= 1", {start, pos});
                AstNode n;
                n.kind = AstNode::Kind::AL;
                n.arg_x = x;
                n.arg_base = base;
                n.arg_z = z;
                return node(std::move(n), start);
            }
            auto mock = mock_name_from_string(name);
            if (!mock) throw UnknownName("unknown name: " + name, {start, pos});
            expect('(', "catalogue call");
            SignedMonomial arg = read_monomial();
            expect(')', "catalogue call");
            if (arg.exp < 1)
                throw SyntaxError("catalogue argument must be +-q^k with k >= 1", {start, pos});
            AstNode n;
            n.kind = AstNode::Kind::Catalog;
            n.catalog = *mock;
            n.arg_x = arg;
            return node(std::move(n), start);
        }

        throw SyntaxError("unexpected character", {start, start + 1});
    }
};

} // namespace

AstPtr parse(const std::string& input)
{
    Parser p(input);
    AstPtr ast = p.parse_expr();
    if (!p.eof()) throw SyntaxError("trailing input", {p.pos, input.size()});
    return ast;
}

bool ast_equal(const AstNode& a, const AstNode& b)
{
    if (a.kind != b.kind) return false;
    using K = AstNode::Kind;
    switch (a.kind) {
    case K::Number: return a.number == b.number;
    case K::QPower: return a.a == b.a;
    case K::Theta: return a.m == b.m;
    case K::ThetaG:
    case K::ThetaB:
    case K::Block: return a.a == b.a && a.m == b.m;
    case K::ThetaGen:
        return a.sign_x == b.sign_x && a.a == b.a && a.sign_base == b.sign_base && a.m == b.m;
    case K::AL:
        return a.arg_x == b.arg_x && a.arg_base == b.arg_base && a.arg_z == b.arg_z;
    case K::Catalog: return a.catalog == b.catalog && a.arg_x == b.arg_x;
    case K::Neg: return ast_equal(*a.lhs, *b.lhs);
    case K::Pow: return a.a == b.a && ast_equal(*a.lhs, *b.lhs);
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div: return ast_equal(*a.lhs, *b.lhs) && ast_equal(*a.rhs, *b.rhs);
    }
    return false;
}

namespace {

int precedence(AstNode::Kind k)
{
    using K = AstNode::Kind;
    switch (k) {
    case K::Add:
    case K::Sub: return 1;
    case K::Mul:
    case K::Div: return 2;
    case K::Neg: return 3;
    case K::Pow: return 4;
    default: return 5;
    }
}

void render_into(const AstNode& n, std::ostream& os, int parent_prec)
{
    using K = AstNode::Kind;
    int prec = precedence(n.kind);
    bool parens = prec < parent_prec;
    if (parens) os << "(";
    switch (n.kind) {
    case K::Number: os << to_string(n.number); break;
    case K::QPower:
        os << "q";
        if (n.a != 1) os << "^" << n.a;
        break;
    case K::Theta: os << "T" << n.m; break;
    case K::ThetaG: os << "Tg(" << n.a << "," << n.m << ")"; break;
    case K::ThetaB: os << "Tb(" << n.a << "," << n.m << ")"; break;
    case K::ThetaGen: {
        SignedMonomial x(n.sign_x, n.a), base(n.sign_base, n.m);
        os << "Th(" << x.str() << ";" << base.str() << ")";
        break;
    }
    case K::Block: os << "(" << n.m << ":" << n.a << ")"; break;
    case K::AL:
        os << "AL(" << n.arg_x.str() << "," << n.arg_base.str() << "," << n.arg_z.str() << ")";
        break;
    case K::Catalog: os << to_string(n.catalog) << "(" << n.arg_x.str() << ")"; break;
    case K::Neg:
        os << "-";
        render_into(*n.lhs, os, precedence(K::Neg) + 1);
        break;
    case K::Pow:
        render_into(*n.lhs, os, precedence(K::Pow) + 1);
        os << "^" << n.a;
        break;
    case K::Add:
    case K::Sub:
        render_into(*n.lhs, os, prec);
        os << (n.kind == K::Add ? " + " : " - ");
        render_into(*n.rhs, os, prec + 1);
        break;
    case K::Mul:
    case K::Div:
        render_into(*n.lhs, os, prec);
        os << (n.kind == K::Mul ? "*" : "/");
        render_into(*n.rhs, os, prec + 1);
        break;
    }
    if (parens) os << ")";
}

QSeries mono_series(const Rational& c, long k, long order)
{
    if (order <= k) return QSeries::zero(order); // nothing tracked below order
    return QSeries::monomial(c, k, order);
}

QSeries expand_guarded(const ProductForm& p, long order)
{
    if (order <= p.qpow || is_zero(p.coefficient)) return QSeries::zero(order);
    return expand(p, order);
}

} // namespace

std::string render(const AstNode& ast)
{
    std::ostringstream os;
    render_into(ast, os, 0);
    return os.str();
}

QSeries eval_series(const AstNode& n, long order)
{
    using K = AstNode::Kind;
    try {
        switch (n.kind) {
        case K::Number: return QSeries::constant(n.number, order);
        case K::QPower: return mono_series(1, n.a, order);
        case K::Theta: {
            ProductForm p;
            p.push_factor(n.m, 0, 1);
            return expand_guarded(p, order);
        }
        // Theta(q^a;q^m) with m | a is the zero function; as a factor it just
        // kills the monomial it sits in, so evaluation returns 0 and leaves
        // raising the degenerate-denominator error to the division.
        case K::ThetaG:
            try {
                return expand_guarded(theta(n.a, n.m, false), order);
            } catch (const ZeroTheta&) {
                return QSeries::zero(order);
            }
        case K::ThetaB: return expand_guarded(theta(n.a, n.m, true), order);
        case K::ThetaGen:
            try {
                return expand_guarded(theta_general(n.sign_x, n.a, n.sign_base, n.m), order);
            } catch (const ZeroTheta&) {
                return QSeries::zero(order);
            }
        case K::Block: {
            ProductForm p;
            p.push_factor(n.m, n.a, 1);
            return expand_guarded(p, order);
        }
        case K::AL: return al_series(ALParams(n.arg_x, n.arg_base.exp, n.arg_z), order);
        case K::Catalog: return transformed_series(n.catalog, n.arg_x.exp, n.arg_x.sign < 0, order);
        case K::Neg: return eval_series(*n.lhs, order).negate();
        case K::Add: return eval_series(*n.lhs, order).add(eval_series(*n.rhs, order));
        case K::Sub: return eval_series(*n.lhs, order).sub(eval_series(*n.rhs, order));
        case K::Mul: return eval_series(*n.lhs, order).mul(eval_series(*n.rhs, order));
        case K::Div: return eval_series(*n.lhs, order).div(eval_series(*n.rhs, order));
        case K::Pow: return eval_series(*n.lhs, order).pow(n.a);
        }
    } catch (const SyntaxError&) {
        throw;
    } catch (const Error& e) {
        throw Error(std::string(e.what()) + " [at input bytes " + std::to_string(n.span.start) +
                    ".." + std::to_string(n.span.end) + "]");
    }
    throw Error("eval_series: unknown node");
}

QSeries eval_series_at(const AstNode& ast, long order)
{
    for (long slack : {0L, 16L, 64L, 256L, 1024L}) {
        QSeries s = eval_series(ast, order + slack);
        if (s.prec() >= order) return s.truncate(order);
    }
    throw PrecisionExceeded("eval_series_at: could not reach the requested order");
}

namespace {

using MonoList = std::vector<std::pair<Rational, ProductForm>>;

MonoList eval_monomials_rec(const AstNode& n)
{
    using K = AstNode::Kind;
    switch (n.kind) {
    case K::Number: return {{n.number, ProductForm::unit()}};
    case K::QPower: return {{1, ProductForm::scalar(1, n.a)}};
    case K::Theta: {
        ProductForm p;
        p.push_factor(n.m, 0, 1);
        return {{1, p}};
    }
    case K::ThetaG:
        try {
            return {{1, theta(n.a, n.m, false)}};
        } catch (const ZeroTheta&) {
            return {{1, ProductForm::scalar(0)}};
        }
    case K::ThetaB: return {{1, theta(n.a, n.m, true)}};
    case K::ThetaGen:
        try {
            return {{1, theta_general(n.sign_x, n.a, n.sign_base, n.m)}};
        } catch (const ZeroTheta&) {
            return {{1, ProductForm::scalar(0)}};
        }
    case K::Block: {
        ProductForm p;
        p.push_factor(n.m, n.a, 1);
        return {{1, p}};
    }
    case K::Neg: {
        MonoList l = eval_monomials_rec(*n.lhs);
        for (auto& [c, p] : l) c = -c;
        return l;
    }
    case K::Add:
    case K::Sub: {
        MonoList l = eval_monomials_rec(*n.lhs);
        MonoList r = eval_monomials_rec(*n.rhs);
        for (auto& [c, p] : r) {
            if (n.kind == K::Sub) c = -c;
            l.push_back({c, p});
        }
        return l;
    }
    case K::Mul: {
        MonoList l = eval_monomials_rec(*n.lhs);
        MonoList r = eval_monomials_rec(*n.rhs);
        MonoList out;
        for (const auto& [cl, pl] : l)
            for (const auto& [cr, pr] : r) out.push_back({cl * cr, pf_mul(pl, pr)});
        return out;
    }
    case K::Div: {
        MonoList l = eval_monomials_rec(*n.lhs);
        MonoList r = eval_monomials_rec(*n.rhs);
        if (r.size() != 1)
            throw NotAThetaCombination("division by a sum is not a theta monomial", n.span);
        for (auto& [c, p] : l) {
            c /= r[0].first;
            p = pf_div(p, r[0].second);
        }
        return l;
    }
    case K::Pow: {
        MonoList l = eval_monomials_rec(*n.lhs);
        if (l.size() != 1)
            throw NotAThetaCombination("power of a sum is not a theta monomial", n.span);
        Rational c = 1;
        for (long i = 0; i < std::abs(n.a); ++i) c *= l[0].first;
        if (n.a < 0) c = 1 / c;
        return {{c, pf_pow(l[0].second, n.a)}};
    }
    case K::AL:
    case K::Catalog:
        throw NotAThetaCombination("Appell-Lerch and catalogue terms are not theta monomials",
                                   n.span);
    }
    throw Error("eval_monomials: unknown node");
}

} // namespace

std::vector<std::pair<Rational, ProductForm>> eval_monomials(const AstNode& ast)
{
    MonoList l = eval_monomials_rec(ast);
    // fold each monomial's scalar into the coefficient slot
    for (auto& [c, p] : l) {
        c *= p.coefficient;
        p.coefficient = 1;
    }
    return l;
}

} // namespace qmock
