#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace wildforms;

namespace {

Variables xyuv() { return makeVariables({"x", "y", "u", "v"}); }

Partition xyVsUv(const Variables& v) { return parsePartition("X=x,y;U=u,v", *v); }

FamilyInstance family(const std::string& name, std::map<std::string, long> params = {}) {
    return build({name, std::move(params), 0});
}

} // namespace

TEST(Bihomogeneous, IkedaPart) {
    auto v = xyuv();
    const auto b = borderBoundBihom(parseForm("x*u^3*v + y*u*v^3", v), xyVsUv(v));
    EXPECT_EQ(b.value, 7u);
    EXPECT_EQ(b.provenance, BorderProvenance::Bihomogeneous);
}

TEST(Bihomogeneous, SepticCore) {
    auto v = makeVariables({"x", "y", "z", "u", "v"});
    const auto p = parsePartition("X=x,y,z;U=u,v", *v);
    EXPECT_EQ(borderBoundBihom(parseForm("x*u^5*v + y*u^3*v^3 + z*u*v^5", v), p).value, 9u);
}

TEST(Bihomogeneous, MonomialSpread) {
    const auto inst = family("monomial-spread");
    EXPECT_EQ(borderBoundBihom(*inst.form, *inst.partition).value, 80u);
}

TEST(Bihomogeneous, Preconditions) {
    auto v = makeVariables({"x", "u", "v", "w"});
    EXPECT_THROW(borderBoundBihom(parseForm("x*u*v", v), parsePartition("X=x;U=u,v,w", *v)), DomainError);
    auto v4 = xyuv();
    EXPECT_THROW(borderBoundBihom(parseForm("x*u^3*v + x^2*y^3", v4), xyVsUv(v4)), DomainError);
    // k > d - k
    EXPECT_THROW(borderBoundBihom(parseForm("x^2*y*u", v4), xyVsUv(v4)), DomainError);
}

TEST(Monomial, Examples) {
    EXPECT_EQ(borderBoundMonomial(ExponentVector(std::vector<int>{2, 3})).value, 3u);
    EXPECT_EQ(borderBoundMonomial(ExponentVector(std::vector<int>{5, 0, 0})).value, 1u);
    EXPECT_EQ(borderBoundMonomial(ExponentVector(std::vector<int>{1, 1, 1})).value, 4u);
    EXPECT_EQ(borderBoundMonomial(ExponentVector(std::vector<int>{1, 2, 3, 4})).value, 24u);
    EXPECT_THROW(borderBoundMonomial(parseForm("x*u + y*v", xyuv())), DomainError);
}

TEST(Additive, IkedaSevenPlusThree) {
    auto v = xyuv();
    const Form f = parseForm("x*u^3*v + y*u*v^3 + x^2*y^3", v);
    const Form bihom = parseForm("x*u^3*v + y*u*v^3", v), mono = parseForm("x^2*y^3", v);
    const auto b = borderBoundAdditive(f, {{bihom, borderBoundBihom(bihom, xyVsUv(v))}, {mono, borderBoundMonomial(mono)}});
    EXPECT_EQ(b.value, 10u);
    EXPECT_EQ(b.provenance, BorderProvenance::SummandAdditivity);
    EXPECT_EQ(b.details.size(), 2u);
}

TEST(Additive, SinglePartAndMismatch) {
    auto v = xyuv();
    const Form mono = parseForm("x^2*y^3", v);
    EXPECT_EQ(borderBoundAdditive(mono, {{mono, borderBoundMonomial(mono)}}).value, 3u);
    try {
        borderBoundAdditive(parseForm("x^5", v), {{mono, borderBoundMonomial(mono)}});
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("parts do not sum to the target form"), std::string::npos);
    }
}

TEST(GenericRank, ExamplesAndExceptions) {
    EXPECT_EQ(ahGenericRank(1, 3), 2u);
    EXPECT_EQ(ahGenericRank(1, 4), 3u);
    EXPECT_EQ(ahGenericRank(2, 2), 3u);
    EXPECT_EQ(ahGenericRank(2, 3), 4u);
    EXPECT_EQ(ahGenericRank(2, 4), 6u);
    EXPECT_EQ(ahGenericRank(3, 4), 10u);
    EXPECT_EQ(ahGenericRank(4, 3), 8u);
    EXPECT_EQ(ahGenericRank(4, 4), 15u);
    EXPECT_EQ(ahGenericRank(2, 5), 7u);
    EXPECT_EQ(ahGenericRank(3, 3), 5u);
    EXPECT_THROW(ahGenericRank(0, 3), DomainError);
}

TEST(GenericRank, CeilingFormulaAwayFromExceptions) {
    for (int n = 1; n <= 6; ++n)
        for (int d = 3; d <= 8; ++d) {
            if ((n == 2 && d == 4) || (n == 3 && d == 4) || (n == 4 && d == 3) || (n == 4 && d == 4)) continue;
            const std::size_t total = binom(n + d, d);
            EXPECT_EQ(ahGenericRank(n, d), (total + static_cast<std::size_t>(n)) / static_cast<std::size_t>(n + 1));
        }
}

TEST(Gnp, BbCubicCertificate) {
    const auto inst = family("bb-cubic");
    const auto g = gnpVanishing(*inst.form, *inst.partition, 1);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->sliceRank, 3u);
    EXPECT_EQ(g->threshold, 2u);
}

TEST(Gnp, MonomialSpreadCertificate) {
    const auto inst = family("monomial-spread");
    const auto g = gnpVanishing(*inst.form, *inst.partition, 4);
    ASSERT_TRUE(g.has_value());
    EXPECT_EQ(g->sliceRank, 15u);
    EXPECT_EQ(g->threshold, 5u);
}

TEST(Gnp, NoCertificateOrRejection) {
    auto v = xyuv();
    const auto p = xyVsUv(v);
    // separable length 2 does not exceed binom(2,1)
    EXPECT_FALSE(gnpVanishing(parseForm("x*u^2 + y*v^2", v), p, 1).has_value());
    EXPECT_THROW(gnpVanishing(parseForm("x*u^3*v + x^2*y^3", v), p, 1), DomainError);
    EXPECT_THROW(gnpVanishing(parseForm("x*u^3*v + y*u*v^3", v), p, 2), DomainError);
}

TEST(Gnp, ConsistentWithHessianDeterminant) {
    std::mt19937_64 rng(51);
    auto v = makeVariables({"x", "y", "z", "u", "v"});
    const auto p = parsePartition("X=x,y,z;U=u,v", *v);
    int certified = 0;
    for (int t = 0; t < 40; ++t) {
        const int e = 2 + t % 3;
        Form f(v);
        std::uniform_int_distribution<int> c(-3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (int j = 0; j <= e; ++j) {
                const int coef = c(rng);
                if (coef == 0) continue;
                std::vector<int> ex(5, 0);
                ex[i] = 1;
                ex[3] = e - j;
                ex[4] = j;
                f.addTerm(ExponentVector(ex), coef);
            }
        if (f.isZero()) continue;
        if (auto g = gnpVanishing(f, p, 1)) {
            ++certified;
            EXPECT_TRUE(hessDet(f, 1).isZero()) << render(f);
        }
    }
    EXPECT_GT(certified, 0);
}

TEST(CactusA, BbCubic) {
    const auto inst = family("bb-cubic");
    const auto b = cactusLowerA(*inst.form, 1);
    EXPECT_TRUE(b.valid());
    EXPECT_EQ(b.value, 5u);
}

TEST(CactusA, PurePowerIsNotAValidBound) {
    const auto b = cactusLowerA(parseForm("x^3", makeVariables({"x", "y"})), 1);
    EXPECT_FALSE(b.valid());
}

TEST(CactusA, DegreeRestriction) {
    const auto inst = family("bb-cubic");
    EXPECT_THROW(cactusLowerA(*inst.form, 2), DomainError);
    EXPECT_THROW(cactusLowerA(*inst.form, 0), DomainError);
}

TEST(CactusA, SuppliedWitness) {
    const auto inst = family("bb-cubic");
    const auto rep = genericRank(mixedHessian(*inst.form, 1, 1), {});
    ASSERT_TRUE(rep.kernelWitness.has_value());
    EXPECT_TRUE(cactusLowerA(*inst.form, 1, *rep.kernelWitness).valid());
    KernelWitness bogus = *rep.kernelWitness;
    bogus.vectors.front().front() += Form::constant(inst.form->variables(), 1) * Form::variable(inst.form->variables(), 0);
    EXPECT_FALSE(cactusLowerA(*inst.form, 1, bogus).valid());
}

TEST(CactusC, Ikeda) {
    const auto inst = family("ikeda");
    const auto b = cactusLowerC(*inst.form, 2, 2, 2);
    EXPECT_TRUE(b.valid());
    EXPECT_EQ(b.value, 10u);
    EXPECT_THROW(cactusLowerC(*inst.form, 2, 3, 2), DomainError);
}

TEST(CactusC, MonomialSpreadThroughGnp) {
    const auto inst = family("monomial-spread");
    const auto b = cactusLowerC(*inst.form, 4, 4, 4, {}, inst.partition);
    EXPECT_TRUE(b.valid());
    EXPECT_EQ(b.value, 70u);
    EXPECT_EQ(b.checks.back().certainty, Certainty::CertifiedStructural);
}

TEST(Certificate, IkedaIsWild) {
    const auto inst = family("ikeda");
    const auto c = wildCertificate(*inst.form, inst.strategy());
    EXPECT_EQ(c.borderUpper.value, 10u);
    ASSERT_TRUE(c.cactusLower.has_value());
    EXPECT_EQ(c.cactusLower->value, 10u);
    EXPECT_TRUE(c.wild);
}

TEST(Certificate, BbCubicIsWild) {
    const auto inst = family("bb-cubic");
    const auto c = wildCertificate(*inst.form, inst.strategy());
    EXPECT_EQ(c.borderUpper.value, 5u);
    ASSERT_TRUE(c.cactusLower.has_value());
    EXPECT_EQ(c.cactusLower->route, CactusRoute::TheoremA);
    EXPECT_TRUE(c.wild);
}

TEST(Certificate, SumOfCubesIsNotEstablished) {
    const auto c = wildCertificate(parseForm("x^3 + y^3", makeVariables({"x", "y"})));
    EXPECT_FALSE(c.wild);
    EXPECT_FALSE(c.cactusLower.has_value());
    EXPECT_EQ(c.borderUpper.value, 2u);
}

TEST(Certificate, ExplicitDecompositionLowersBorder) {
    auto v = makeVariables({"x", "y", "z"});
    const Form cube = power(LinearForm{{1, 1, 1}}, 3, v);
    WildStrategy s;
    EXPECT_EQ(bestBorderBound(cube, s).value, 4u);
    s.decomposition = PowerSumDecomposition{{LinearForm{{1, 1, 1}}}, {}, 3, cube};
    const auto b = bestBorderBound(cube, s);
    EXPECT_EQ(b.value, 1u);
    EXPECT_EQ(b.provenance, BorderProvenance::ExplicitDecomposition);
}

TEST(Certificate, MonomialSpreadFlagsReferenceValue) {
    const auto inst = family("monomial-spread");
    const auto c = wildCertificate(*inst.form, inst.strategy());
    EXPECT_EQ(c.borderUpper.value, 80u);
    ASSERT_TRUE(c.cactusLower.has_value());
    EXPECT_EQ(c.cactusLower->value, 70u);
    EXPECT_FALSE(c.wild);
    ASSERT_FALSE(c.notes.empty());
    EXPECT_NE(c.notes.front().find("140"), std::string::npos);
}

TEST(Certificate, WildCertificatesReplay) {
    for (const auto& name : {"ikeda", "bb-cubic"}) {
        const auto inst = family(name);
        const auto c = wildCertificate(*inst.form, inst.strategy());
        ASSERT_TRUE(c.wild);
        const auto& b = *c.cactusLower;
        RankPolicy other;
        other.seed = 977;
        const auto again = b.route == CactusRoute::TheoremA ? cactusLowerA(*inst.form, b.k, other)
                                                            : cactusLowerC(*inst.form, b.k, b.l, b.s, other);
        EXPECT_TRUE(again.valid()) << name;
        EXPECT_EQ(again.value, b.value);
        EXPECT_EQ(bestBorderBound(*inst.form, inst.strategy()).value, c.borderUpper.value);
    }
}

TEST(Formula, GnQuarticDefaults) {
    const auto inst = family("gn-quartic-formula");
    ASSERT_EQ(inst.formulas.size(), 1u);
    EXPECT_EQ(inst.formulas[0].cactusLower, 496u);
    EXPECT_EQ(inst.formulas[0].borderUpper, 488u);
    EXPECT_TRUE(inst.formulas[0].wild);
    const auto printed = family("gn-quartic-formula", {{"s", 28}, {"e", 30}});
    EXPECT_EQ(printed.formulas[0].borderUpper, 520u);
    EXPECT_FALSE(printed.formulas[0].wild);
}
