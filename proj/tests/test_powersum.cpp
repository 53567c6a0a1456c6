#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"

using namespace wildforms;

namespace {

PowerSumDecomposition makeDecomposition(const Variables& vars, int d, std::vector<LinearForm> forms,
                                        std::vector<Rational> scalars = {}) {
    PowerSumDecomposition dec;
    dec.forms = std::move(forms);
    dec.scalars = std::move(scalars);
    dec.degree = d;
    dec.target = Form(vars);
    dec.target = dec.expand();
    return dec;
}

/// x u^2 + y (u+v)^2 + z v^2 as nine signed cubes, using
/// a b^2 = ((a+b)^3 + (a-b)^3 - 2 a^3) / 6 on each term.
PowerSumDecomposition perazzoCubes() {
    auto v = makeVariables({"x", "y", "z", "u", "w"});
    const std::vector<std::pair<LinearForm, LinearForm>> pairs = {
        {LinearForm{{1, 0, 0, 0, 0}}, LinearForm{{0, 0, 0, 1, 0}}},
        {LinearForm{{0, 1, 0, 0, 0}}, LinearForm{{0, 0, 0, 1, 1}}},
        {LinearForm{{0, 0, 1, 0, 0}}, LinearForm{{0, 0, 0, 0, 1}}},
    };
    std::vector<LinearForm> forms;
    std::vector<Rational> scalars;
    for (const auto& [a, b] : pairs) {
        LinearForm plus = a, minus = a;
        for (std::size_t i = 0; i < 5; ++i) {
            plus.coefficients[i] += b.coefficients[i];
            minus.coefficients[i] -= b.coefficients[i];
        }
        forms.insert(forms.end(), {plus, minus, a});
        scalars.insert(scalars.end(), {Rational(1, 6), Rational(1, 6), Rational(-1, 3)});
    }
    return makeDecomposition(v, 3, forms, scalars);
}

PowerSumDecomposition randomDecomposition(std::mt19937_64& rng, std::size_t n, int d, std::size_t s) {
    std::vector<LinearForm> forms;
    while (forms.size() < s) {
        auto l = oracle::randomLinear(rng, n, 3);
        bool fresh = true;
        for (const auto& m : forms) fresh = fresh && !proportional(l, m);
        if (fresh) forms.push_back(std::move(l));
    }
    return makeDecomposition(indexedVariables(n), d, forms);
}

} // namespace

TEST(Decomposition, VerifiesSumOfCubes) {
    auto v = makeVariables({"x0", "x1"});
    PowerSumDecomposition dec{{LinearForm{{1, 0}}, LinearForm{{0, 1}}}, {}, 3, parseForm("x0^3 + x1^3", v)};
    EXPECT_TRUE(verifyDecomposition(dec));
    dec.target = parseForm("x0^3 + 2*x1^3", v);
    EXPECT_FALSE(verifyDecomposition(dec));
}

TEST(Decomposition, SignedSquaresOfProduct) {
    auto v = makeVariables({"x0", "x1"});
    PowerSumDecomposition dec{{LinearForm{{1, 1}}, LinearForm{{1, -1}}}, {1, -1}, 2, parseForm("4*x0*x1", v)};
    EXPECT_TRUE(verifyDecomposition(dec));
    EXPECT_FALSE(dec.pure());
    EXPECT_TRUE(dec.reduced());
}

TEST(Decomposition, PerazzoAsNineCubes) {
    const auto dec = perazzoCubes();
    EXPECT_EQ(dec.size(), 9u);
    EXPECT_EQ(dec.target, parseForm("x*u^2 + y*u^2 + 2*y*u*w + y*w^2 + z*w^2", dec.target.variables()));
    EXPECT_TRUE(verifyDecomposition(dec));
}

TEST(WMatrix, MonomialValuesAtFormCoefficients) {
    auto v = makeVariables({"x0", "x1"});
    const auto dec = makeDecomposition(v, 3, {LinearForm{{1, 2}}, LinearForm{{3, -1}}});
    const auto w = buildW(dec, 1);
    ASSERT_EQ(w.matrix.rows(), 2u);
    EXPECT_EQ(w.matrix(0, 0), 1);
    EXPECT_EQ(w.matrix(1, 0), 2);
    EXPECT_EQ(w.matrix(0, 1), 3);
    EXPECT_EQ(w.matrix(1, 1), -1);
    const auto w2 = buildW(dec, 2);
    // A_2 of a binary cubic with two summands has the basis X0^2, X0*X1.
    EXPECT_EQ(w2.matrix(0, 1), 9);
    EXPECT_EQ(w2.matrix(1, 1), -3);
}

TEST(Factorization, SumOfCubes) {
    auto v = makeVariables({"x0", "x1"});
    const auto dec = makeDecomposition(v, 3, {LinearForm{{1, 0}}, LinearForm{{0, 1}}});
    const auto res = factorizationCheck(dec, 1, 2);
    EXPECT_TRUE(res.holds);
    EXPECT_EQ(res.scale, 6);
}

TEST(Factorization, PerazzoNineCubesEveryOrder) {
    const auto dec = perazzoCubes();
    for (int k = 0; k <= 3; ++k)
        for (int l = k; k + l <= 3; ++l) EXPECT_TRUE(factorizationCheck(dec, k, l).holds) << k << "," << l;
}

TEST(Factorization, PerturbedWMatrixFails) {
    auto v = makeVariables({"x0", "x1"});
    const auto dec = makeDecomposition(v, 4, {LinearForm{{1, 1}}, LinearForm{{1, -2}}, LinearForm{{2, 1}}});
    auto wRow = buildW(dec, 3);
    const auto wCol = buildW(dec, 1);
    EXPECT_TRUE(factorizationCheck(dec, 1, 1, wRow, wCol).holds);
    wRow.matrix(0, 0) += 1;
    EXPECT_FALSE(factorizationCheck(dec, 1, 1, wRow, wCol).holds);
}

TEST(Factorization, BasisMismatchIsReported) {
    auto v = makeVariables({"x0", "x1"});
    const auto dec = makeDecomposition(v, 4, {LinearForm{{1, 1}}, LinearForm{{1, -2}}});
    auto wCol = buildW(dec, 1);
    wCol.basis = {wCol.basis.back()};
    try {
        factorizationCheck(dec, 1, 1, buildW(dec, 3), wCol);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("basis mismatch"), std::string::npos);
    }
    EXPECT_THROW(factorizationCheck(dec, 2, 3), DomainError);
}

TEST(CorollaryEasy, SumOfCubes) {
    auto v = makeVariables({"x0", "x1"});
    EXPECT_TRUE(corollaryEasyCheck(makeDecomposition(v, 3, {LinearForm{{1, 0}}, LinearForm{{0, 1}}}), 1));
}

TEST(CorollaryEasy, PreconditionViolation) {
    auto v = makeVariables({"x0", "x1"});
    const auto dec = makeDecomposition(v, 5, {LinearForm{{1, 0}}, LinearForm{{0, 1}}, LinearForm{{1, 1}}});
    try {
        corollaryEasyCheck(dec, 1);
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("precondition s = a_k violated"), std::string::npos);
    }
}

TEST(CorollaryEasy, GenericBinarySeptic) {
    std::mt19937_64 rng(41);
    const auto dec = randomDecomposition(rng, 2, 7, 4);
    ASSERT_EQ(catalecticantRank(dec.target, 3), 4u);
    EXPECT_TRUE(corollaryEasyCheck(dec, 3));
}

TEST(BinaryRank, Examples) {
    auto v = makeVariables({"x0", "x1"});
    EXPECT_EQ(binaryWaringRank(parseForm("x0^3 + x1^3", v)), 2u);
    EXPECT_EQ(binaryWaringRank(parseForm("x0*x1^2", v)), 3u);
    for (int d = 1; d <= 7; ++d) {
        EXPECT_EQ(binaryWaringRank(power(LinearForm{{1, 0}}, d, v)), 1u);
        if (d >= 2) EXPECT_EQ(binaryWaringRank(Form::monomial(v, ExponentVector(std::vector<int>{1, d - 1}))),
                              static_cast<std::size_t>(d));
    }
    EXPECT_EQ(binaryWaringRank(parseForm("x0^2*x1^2", v)), 3u);
    EXPECT_THROW(binaryWaringRank(parseForm("x^2", makeVariables({"x", "y", "z"}))), DomainError);
}

TEST(BinaryRank, GenericFormsHaveClassicalRank) {
    std::mt19937_64 rng(42);
    auto v = makeVariables({"x0", "x1"});
    for (int d = 2; d <= 9; ++d)
        for (int t = 0; t < 3; ++t) {
            const Form f = oracle::randomForm(rng, v, d, 1.0, 1000);
            EXPECT_EQ(binaryWaringRank(f), static_cast<std::size_t>(d / 2 + 1)) << render(f);
        }
}

TEST(BinaryRank, AgreesWithOracleOnSmallForms) {
    std::mt19937_64 rng(43);
    auto v = makeVariables({"x0", "x1"});
    for (int t = 0; t < 150; ++t) {
        const Form f = oracle::randomForm(rng, v, 2 + t % 5, 0.5, 2);
        EXPECT_EQ(binaryWaringRank(f), oracle::binaryRank(f)) << render(f);
    }
}

TEST(BinaryRank, RandomDecompositionsBoundTheRank) {
    std::mt19937_64 rng(44);
    for (int t = 0; t < 40; ++t) {
        const int d = 3 + t % 5;
        const std::size_t s = 1 + static_cast<std::size_t>(t % 4);
        const auto dec = randomDecomposition(rng, 2, d, s);
        if (dec.target.isZero()) continue;
        EXPECT_LE(binaryWaringRank(dec.target), s);
    }
}

TEST(Property, FactorizationOnRandomDecompositions) {
    std::mt19937_64 rng(45);
    for (int t = 0; t < 25; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
        const int d = 2 + t % 4;
        const auto dec = randomDecomposition(rng, n, d, 1 + static_cast<std::size_t>(t % 6));
        if (dec.target.isZero()) continue;
        for (int k = 0; k <= d; ++k)
            for (int l = k; k + l <= d; ++l) EXPECT_TRUE(factorizationCheck(dec, k, l).holds);
    }
}

TEST(Property, PowerSumCatalecticantRankAtMostLength) {
    std::mt19937_64 rng(46);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
        const std::size_t s = 1 + static_cast<std::size_t>(t % 5);
        const auto dec = randomDecomposition(rng, n, 4, s);
        if (dec.target.isZero()) continue;
        for (int k = 0; k <= 4; ++k) EXPECT_LE(catalecticantRank(dec.target, k), s);
    }
}

TEST(Serialization, DecompositionRoundTrip) {
    const auto dec = perazzoCubes();
    const auto back = decompositionFromJson(toJson(dec), dec.target.variables());
    EXPECT_EQ(back.forms, dec.forms);
    EXPECT_EQ(back.scalars, dec.scalars);
    EXPECT_EQ(back.target, dec.target);
    EXPECT_TRUE(verifyDecomposition(back));
}
