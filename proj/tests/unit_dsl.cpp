#include <doctest.h>

#include <random>

#include "qmock/dsl.hpp"
#include "qmock/manifest.hpp"

using namespace qmock;

namespace {
bool eq(const QSeries& a, const QSeries& b, long n) { return QSeries::equal_to_order(a, b, n); }
} // namespace

TEST_CASE("parse shapes")
{
    auto a = parse("T2^5 / T1^4");
    CHECK(a->kind == AstNode::Kind::Div);
    CHECK(a->lhs->kind == AstNode::Kind::Pow);
    CHECK(a->lhs->lhs->kind == AstNode::Kind::Theta);
    CHECK(a->lhs->lhs->m == 2);
    CHECK(a->lhs->a == 5);
    CHECK(a->rhs->kind == AstNode::Kind::Pow);
    CHECK(a->rhs->lhs->m == 1);

    auto q = parse("q");
    CHECK(q->kind == AstNode::Kind::QPower);
    CHECK(q->a == 1);

    auto al = parse("AL(q, q^4, q^2)");
    CHECK(al->kind == AstNode::Kind::AL);
    CHECK(al->arg_x == SignedMonomial(1, 1));
    CHECK(al->arg_base == SignedMonomial(1, 4));
    CHECK(al->arg_z == SignedMonomial(1, 2));

    auto tg = parse("Tg(5,12)");
    CHECK(tg->kind == AstNode::Kind::ThetaG);
    CHECK(tg->a == 5);
    CHECK(tg->m == 12);
    auto tb = parse("Tb(2,24)");
    CHECK(tb->kind == AstNode::Kind::ThetaB);
    auto th = parse("Th(q^3;-q^9)");
    CHECK(th->kind == AstNode::Kind::ThetaGen);
    CHECK(th->sign_x == 1);
    CHECK(th->a == 3);
    CHECK(th->sign_base == -1);
    CHECK(th->m == 9);

    auto cat = parse("B2(q)");
    CHECK(cat->kind == AstNode::Kind::Catalog);
    CHECK(cat->catalog == MockName::B2);
    auto cat2 = parse("A2(-q^8)");
    CHECK(cat2->arg_x == SignedMonomial(-1, 8));

    auto blk = parse("(12:5)");
    CHECK(blk->kind == AstNode::Kind::Block);
    CHECK(blk->m == 12);
    CHECK(blk->a == 5);
}

TEST_CASE("precedence")
{
    CHECK(ast_equal(*parse("1 - 2 * 3"), *parse("1 - (2*3)")));
    CHECK(ast_equal(*parse("T1 / T2 / T3"), *parse("(T1/T2)/T3")));
    CHECK(!ast_equal(*parse("T1 / T2 / T3"), *parse("T1/(T2/T3)")));
    CHECK(ast_equal(*parse("-T1^2"), *parse("-(T1^2)")));
    CHECK(!ast_equal(*parse("-T1^2"), *parse("(-T1)^2")));
    CHECK(ast_equal(*parse("q^3/4"), *parse("(q^3)/4")));
    CHECK(ast_equal(*parse("1/2*T1"), *parse("(1/2)*T1")));
}

TEST_CASE("errors carry spans")
{
    CHECK_THROWS_AS(parse("T2 +"), SyntaxError);
    CHECK_THROWS_AS(parse("W9(q)"), UnknownName);
    CHECK_THROWS_AS(parse("T2 T3"), SyntaxError); // no implicit multiplication
    try {
        parse("T2^5 / &");
    } catch (const SyntaxError& e) {
        CHECK(e.span.start == 7);
    }
    CHECK_THROWS_AS(parse("AL(q, -q^4, q)"), SyntaxError); // base must be +q^D
    CHECK_THROWS_AS(parse("B2(1)"), SyntaxError);
}

TEST_CASE("eval basics")
{
    CHECK(eval_series_at(*parse("T1*T2/T1/T2"), 20).coeff_at(0) == 1);
    for (long n = 1; n < 20; ++n)
        CHECK(is_zero(eval_series_at(*parse("T1*T2/T1/T2"), 20).coeff_at(n)));

    auto g = eval_series_at(*parse("Tb(1,2)"), 10);
    Rational want[10] = {1, 2, 0, 0, 2, 0, 0, 0, 0, 2};
    for (long n = 0; n < 10; ++n) CHECK(g.coeff_at(n) == want[n]);

    // generating function of the even part of B2
    auto lhs = eval_series_at(*parse("B2(q)"), 25).dissect(2, 0);
    auto rhs = eval_series_at(*parse("T2^5/T1^4"), 12);
    long bound = std::min(lhs.prec(), rhs.prec()) - 1;
    CHECK(eq(lhs, rhs, bound));
}

TEST_CASE("eval_monomials")
{
    auto l = eval_monomials(*parse("T2^5/T1^4 - T2^5/T1^4"));
    REQUIRE(l.size() == 2);
    CHECK(l[0].first == -l[1].first);
    CHECK(l[0].second == l[1].second);

    auto three = eval_monomials(*parse(
        "T8^3*Tg(1,8)*Tb(6,16)/(q*Tg(1,4)*Tb(0,16)*Tg(4,8)*Tg(3,8))"
        " + T8^3*Tg(3,8)*Tb(2,16)/(q*Tg(1,4)*Tb(0,16)*Tg(4,8)*Tg(1,8)) - T4^5/T2^4"));
    CHECK(three.size() == 3);
    for (auto& [c, p] : three) CHECK(p.coefficient == 1);

    CHECK_THROWS_AS(eval_monomials(*parse("AL(q,q^4,q^2)")), NotAThetaCombination);
    CHECK_THROWS_AS(eval_monomials(*parse("B2(q) + T1")), NotAThetaCombination);

    // scalars distribute over parenthesized sums
    auto dist = eval_monomials(*parse("1/4*(T1 - T2)/q^5"));
    REQUIRE(dist.size() == 2);
    CHECK(dist[0].first == rat(1, 4));
    CHECK(dist[1].first == rat(-1, 4));
    CHECK(dist[0].second.qpow == -5);
}

TEST_CASE("render round-trips")
{
    for (const char* text : {
             "T2^5/T1^4",
             "-U08(q^4)/q + T8^6*T16/(q*T2^2*T4^2*T32^2) + T4^5/T2^4",
             "AL(-q, q^8, -1)",
             "Th(q^3;-q^9)",
             "1/2 + q*(12:5)^2 - Tb(0,36)/T2",
             "q^2/2*S18(q^4) - S08(q^4)/2 + T8^9/(2*T2*T4^3*T16^4) + q*T8^3/(T2*T4)",
         }) {
        AstPtr a = parse(text);
        AstPtr b = parse(render(*a));
        CHECK_MESSAGE(ast_equal(*a, *b), text, " -> ", render(*a));
    }
}

TEST_CASE("render round-trips on every manifest expression")
{
    auto records = load_manifest(QMOCK_MANIFEST_PATH);
    CHECK(records.size() > 100);
    for (const auto& rec : records) {
        for (const std::string& text : {rec.lhs, rec.rhs}) {
            AstPtr a = parse(text);
            AstPtr b = parse(render(*a));
            CHECK_MESSAGE(ast_equal(*a, *b), rec.label, ": ", text);
        }
    }
}

TEST_CASE("random product forms survive render/parse/eval")
{
    std::mt19937_64 rng(77);
    for (int i = 0; i < 50; ++i) {
        ProductForm p = ProductForm::scalar(rat(static_cast<long>(rng() % 7) + 1,
                                                static_cast<long>(rng() % 3) + 1),
                                            static_cast<long>(rng() % 9) - 4);
        for (int f = 0; f < 3; ++f) {
            long m = 2 + static_cast<long>(rng() % 10);
            long a = 1 + static_cast<long>(rng() % static_cast<unsigned long>(m - 1));
            p = pf_mul(p, pf_pow(theta(a, m, rng() % 2 == 0), (rng() % 2 == 0) ? 1 : -1));
        }
        AstPtr ast = parse(render(p));
        auto direct = expand(p, 40);
        auto reparsed = eval_series_at(*ast, 40);
        CHECK(eq(direct.truncate(reparsed.prec()), reparsed, reparsed.prec() - 1));
    }
}
