#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace wildforms;

namespace {

Variables xy() { return makeVariables({"x0", "x1"}); }

DiffOp dual(const Variables& v, std::vector<int> e) { return DiffOp::monomial(v, ExponentVector(std::move(e))); }

} // namespace

TEST(Apply, SingleDifferentiation) {
    auto v = makeVariables({"x0"});
    const Form f = parseForm("x0^3", v);
    EXPECT_EQ(apply(dual(v, {1}), f), parseForm("3*x0^2", v));
}

TEST(Apply, MixedDerivativeOfPowerMatchesFactorialScalar) {
    auto v = xy();
    const LinearForm l{{1, 2}};
    const Form out = apply(dual(v, {1, 1}), power(l, 3, v));
    // d!/(d-k)! * a_0 a_1 * l^{d-k} = 6 * 2 * l
    EXPECT_EQ(out, parseForm("12*x0 + 24*x1", v));
    EXPECT_EQ(out, Rational(12) * power(l, 1, v));
}

TEST(Apply, DisjointSupportVanishes) {
    auto v = xy();
    EXPECT_TRUE(apply(dual(v, {2, 0}), parseForm("x1^2", v)).isZero());
}

TEST(Apply, OperatorOfHigherDegreeGivesZero) {
    auto v = xy();
    EXPECT_TRUE(apply(dual(v, {3, 0}), parseForm("x0^2", v)).isZero());
}

TEST(Apply, AmbientMismatchThrows) {
    auto v2 = xy();
    auto v3 = makeVariables({"a", "b", "c"});
    EXPECT_THROW(apply(dual(v3, {1, 0, 0}), parseForm("x0^2", v2)), DomainError);
}

TEST(Power, Examples) {
    auto v = xy();
    EXPECT_EQ(power(LinearForm{{1, 1}}, 2, v), parseForm("x0^2 + 2*x0*x1 + x1^2", v));
    EXPECT_EQ(power(LinearForm{{1, 0}}, 5, v), parseForm("x0^5", v));
    EXPECT_EQ(power(LinearForm{{1, -1}}, 3, v), parseForm("x0^3 - 3*x0^2*x1 + 3*x0*x1^2 - x1^3", v));
    EXPECT_THROW(power(LinearForm{{1, 1}}, 0, v), DomainError);
}

TEST(Bigrade, IkedaBihomogeneousPart) {
    auto v = makeVariables({"x", "y", "u", "v"});
    const auto p = parsePartition("X=x,y;U=u,v", *v);
    EXPECT_EQ(bigrade(parseForm("x*u^3*v + y*u*v^3", v), p), (BiDegree{1, 4}));
}

TEST(Bigrade, EmptyUBlock) {
    auto v = makeVariables({"x", "y"});
    const auto p = parsePartition("X=x,y;U=", *v);
    EXPECT_EQ(bigrade(parseForm("x^2*y^3", v), p), (BiDegree{5, 0}));
}

TEST(Bigrade, MixedBidegreesNameTwoTerms) {
    auto v = makeVariables({"x", "y", "u", "v"});
    const auto p = parsePartition("X=x,y;U=u,v", *v);
    try {
        bigrade(parseForm("x*u^3*v + x^2*y^3", v), p);
        FAIL() << "expected an error";
    } catch (const DomainError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("not bi-homogeneous"), std::string::npos);
        EXPECT_NE(msg.find("x^2*y^3"), std::string::npos);
        EXPECT_NE(msg.find("x*u^3*v"), std::string::npos);
    }
}

TEST(Partition, RejectsIncompleteOrDuplicateBlocks) {
    auto v = makeVariables({"x", "y", "u"});
    EXPECT_THROW(parsePartition("X=x;U=u", *v), DomainError);
    EXPECT_THROW(parsePartition("X=x,y;U=u,x", *v), DomainError);
    EXPECT_THROW(parsePartition("X=x,y;U=w", *v), DomainError);
}

TEST(Parse, MonomialAndDegree) {
    auto v = makeVariables({"x", "y"});
    const Form f = parseForm("x^2*y^3", v);
    EXPECT_EQ(f.degree(), 5);
    EXPECT_EQ(f.termCount(), 1u);
}

TEST(Parse, IkedaQuintic) {
    auto v = makeVariables({"x", "y", "u", "v"});
    const Form f = parseForm("x*u^3*v + y*u*v^3 + x^2*y^3", v);
    EXPECT_EQ(f.degree(), 5);
    EXPECT_EQ(f.termCount(), 3u);
    EXPECT_EQ(f.coefficient(ExponentVector(std::vector<int>{2, 3, 0, 0})), 1);
}

TEST(Parse, InhomogeneousReportsDegrees) {
    auto v = makeVariables({"x", "y"});
    try {
        parseForm("x + y^2", v);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("inhomogeneous polynomial (degrees 1, 2)"), std::string::npos);
    }
}

TEST(Parse, SyntaxErrorsCarryPositions) {
    auto v = makeVariables({"x", "y"});
    try {
        parseForm("x^2 + * y^2", v);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), 6u);
    }
    EXPECT_THROW(parseForm("x^2 + z^2", v), ParseError);
    EXPECT_THROW(parseForm("x^", v), ParseError);
    EXPECT_THROW(parseForm("", v), ParseError);
    EXPECT_THROW(parseForm("x^2 - x^2", v), ParseError);
    EXPECT_THROW(parseForm("3/0*x", v), ParseError);
}

TEST(Parse, RationalCoefficientsAndWhitespace) {
    auto v = makeVariables({"x", "y"});
    const Form f = parseForm("  3/2 * x ^ 2 - 7*x*y+ y^2 ", v);
    EXPECT_EQ(f.coefficient(ExponentVector(std::vector<int>{2, 0})), Rational(3, 2));
    EXPECT_EQ(f.coefficient(ExponentVector(std::vector<int>{1, 1})), -7);
    EXPECT_EQ(render(f), "3/2*x^2 - 7*x*y + y^2");
}

TEST(Parse, RepeatedFactorsAccumulate) {
    auto v = makeVariables({"x", "y"});
    EXPECT_EQ(parseForm("x*x*y", v), parseForm("x^2*y", v));
    EXPECT_EQ(parseForm("x*y + x*y", v), parseForm("2*x*y", v));
}

TEST(Render, DualVariablesAreCapitalized) {
    auto v = makeVariables({"x", "u"});
    EXPECT_EQ(render(DiffOp::monomial(v, ExponentVector(std::vector<int>{2, 1}))), "X^2*U");
}

TEST(Polynomial, TermOrderIsGradedLexDescending) {
    auto v = makeVariables({"x", "y", "z"});
    const Form f = parseForm("z^2 + y*z + x*z + y^2 + x*y + x^2", v);
    EXPECT_EQ(render(f), "x^2 + x*y + x*z + y^2 + y*z + z^2");
}

TEST(Polynomial, ExactDivisionAndEvaluation) {
    auto v = xy();
    const Form a = parseForm("x0 + x1", v), b = parseForm("x0 - 2*x1", v);
    EXPECT_EQ(exactDivide(a * b, b), a);
    const std::vector<Rational> pt{Rational(1, 2), 3};
    EXPECT_EQ((a * b).evaluate(pt), Rational(7, 2) * Rational(-11, 2));
}

TEST(Property, DifferentiationComposes) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 3;
        auto v = indexedVariables(n);
        const int d = 2 + trial % 5;
        const Form f = oracle::randomForm(rng, v, d, 0.5);
        std::uniform_int_distribution<int> deg(0, d);
        const int a = deg(rng), b = deg(rng);
        auto opFor = [&](int k) {
            DiffOp op(v);
            const auto mons = monomialsOfDegree(n, k);
            std::uniform_int_distribution<int> c(-2, 2);
            for (const auto& m : mons) op.addTerm(m, c(rng));
            return op;
        };
        const DiffOp alpha = opFor(a), beta = opFor(b);
        EXPECT_EQ(apply(alpha, apply(beta, f)), apply(alpha * beta, f));
        EXPECT_EQ(apply(alpha + beta, f), apply(alpha, f) + apply(beta, f));
    }
}

TEST(Property, PowerDerivativeIdentity) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + trial % 3;
        auto v = indexedVariables(n);
        const int d = 1 + trial % 7;
        const LinearForm l = oracle::randomLinear(rng, n);
        std::uniform_int_distribution<int> deg(0, d);
        const int k = deg(rng);
        for (const auto& alpha : monomialsOfDegree(n, k)) {
            Rational scale(factorial(d) / factorial(d - k));
            for (std::size_t t = 0; t < n; ++t)
                for (int p = 0; p < alpha[t]; ++p) scale *= l.coefficients[t];
            const Form expected = k == d ? Form::constant(v, scale) : scale * power(l, d - k, v);
            EXPECT_EQ(apply(DiffOp::monomial(v, alpha), power(l, d, v)), expected);
        }
    }
}

TEST(Property, RenderParseRoundTrip) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto v = indexedVariables(1 + trial % 4);
        Form f = oracle::randomForm(rng, v, 1 + trial % 6, 0.6, 9);
        Rational scale(1 + trial % 5, 3);
        scale.canonicalize();
        f *= scale;
        EXPECT_EQ(parseForm(render(f), v), f);
    }
}

TEST(Monomials, CountAndOrder) {
    const auto m = monomialsOfDegree(3, 4);
    EXPECT_EQ(m.size(), 15u);
    EXPECT_EQ(m.front(), ExponentVector(std::vector<int>{4, 0, 0}));
    EXPECT_EQ(m.back(), ExponentVector(std::vector<int>{0, 0, 4}));
    for (std::size_t i = 1; i < m.size(); ++i) EXPECT_TRUE(m[i - 1] > m[i]);
}
