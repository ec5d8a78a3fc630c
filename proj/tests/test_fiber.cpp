#include <gtest/gtest.h>

#include "cliffver/fiber.hpp"

using namespace cliffver;

namespace {

using Q = Rational;

FiberInstance<Q> standardFiber(const QuadraticSpace& space, size_t k) {
    FiberInstance<Q> f;
    f.space = space;
    f.k = k;
    auto W = standardLagrangian(space);
    f.frame.assign(W.begin(), W.begin() + static_cast<long>(k));
    return f;
}

SparseVector<Q> sparse(const std::vector<Q>& v) {
    SparseVector<Q> s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!isZero(v[i])) s.push_back({static_cast<uint32_t>(i), v[i]});
    return s;
}

// dim N - dim span{u_j c x : c odd blade, x in N}: the tensor product
// F (x)_{Cl_even} N with F = Cl_even / U Cl_odd.
size_t spinorOracle(const FiberInstance<Q>& f, Parity np) {
    CliffordPtr alg = makeClifford(f.space);
    SpinorIdeal<Q> I = spinorIdeal<Q>(alg, standardLagrangian(f.space));
    const SparseMatrix<Q>& N = np == Parity::Even ? I.basisEven : I.basisOdd;
    Parity other = np == Parity::Even ? Parity::Odd : Parity::Even;
    SparseMatrix<Q> span(N.rows(), 0);
    for (const auto& u : f.frame) {
        auto uMat = leftVectorMatrix(*alg, u, other, np);
        for (Blade c : alg->blades(Parity::Odd)) {
            auto cMat = leftMultMatrix(CliffordElement<Q>::blade(alg, c), np, other);
            auto prod = multiply(uMat, cMat);
            for (size_t j = 0; j < N.cols(); ++j) span.appendColumn(matVec(prod, N.col(j)));
        }
    }
    return N.cols() - rank(span, FieldMode::Rational);
}

}  // namespace

TEST(Frames, PositiveDefiniteRationalFormHasNoIsotropicLine) {
    EXPECT_THROW(isotropicFrameSample<Q>(QuadraticSpace::diag({1, 1, 1, 1}), 1, 7), FrameSampleError);
}

TEST(Frames, DegenerateFormFrameIsIsotropic) {
    QuadraticSpace space = QuadraticSpace::diag({1, 1, 1, 0, 0});
    for (uint64_t seed = 0; seed < 5; ++seed) {
        auto f = isotropicFrameSample<Q>(space, 2, seed);
        ASSERT_EQ(f.frame.size(), 2u);
        for (const auto& a : f.frame)
            for (const auto& b : f.frame) {
                Q acc(0);
                for (size_t i = 0; i < 5; ++i) acc += a[i] * b[i] * Q(static_cast<long>(space.gram(i, i)));
                EXPECT_TRUE(isZero(acc));
            }
        SparseMatrix<Q> m(5, 0);
        for (const auto& a : f.frame) m.appendColumn(sparse(a));
        EXPECT_EQ(rank(m, FieldMode::Rational), 2u);
    }
}

TEST(Frames, SameSeedSameFrame) {
    auto a = isotropicFrameSample<Q>(QuadraticSpace::split(3), 2, 11);
    auto b = isotropicFrameSample<Q>(QuadraticSpace::split(3), 2, 11);
    EXPECT_EQ(a.frame, b.frame);
}

TEST(Frames, RankHypothesisEnforced) {
    auto f = standardFiber(QuadraticSpace::split(2), 2);
    f.space = QuadraticSpace::diag({1, 0, 0, 0});
    EXPECT_THROW(validateFiber(f), std::invalid_argument);
}

TEST(LES, SplitTwoTermDims) {
    auto cx = buildClLES(standardFiber(QuadraticSpace::split(2), 2), 4);
    const size_t mid = lesMiddleIndex(4);
    ASSERT_EQ(cx.length(), 10u);
    EXPECT_EQ(cx.labels()[mid].dim, 16u);
    EXPECT_EQ(cx.labels()[mid - 1].dim, 16u);
    EXPECT_EQ(cx.labels()[mid - 2].dim, 32u);
    EXPECT_EQ(cx.labels()[mid - 3].dim, 48u);
    EXPECT_EQ(cx.labels()[mid + 1].dim, 32u);
    EXPECT_EQ(cx.labels()[mid + 2].dim, 48u);
}

TEST(LES, MiddleMapRank) {
    auto cx = buildClLES(standardFiber(QuadraticSpace::split(2), 2), 4);
    EXPECT_EQ(rank(cx.differentials()[lesMiddleIndex(4) - 1], FieldMode::Rational), 4u);
}

TEST(LES, ExactOnSplitForms) {
    auto r = verifyExactness(buildClLES(standardFiber(QuadraticSpace::split(2), 2), 4));
    EXPECT_TRUE(r.pass) << r.message;
    auto f = isotropicFrameSample<Q>(QuadraticSpace::split(3), 2, 3);
    auto r2 = verifyExactness(buildClLES(f, 4));
    EXPECT_TRUE(r2.pass) << r2.message;
}

TEST(LES, ExactOnUnitDiagonalOverPrime) {
    ScopedModulus sm(2305843009213693921ULL);
    auto f = isotropicFrameSample<Fp>(QuadraticSpace::unitDiagonal(5, 4), 2, 1);
    auto r = verifyExactness(buildClLES(f, 6));
    EXPECT_TRUE(r.pass) << r.message;
}

TEST(LES, CorruptedDifferentialIsCaught) {
    auto cx = buildClLES(standardFiber(QuadraticSpace::split(2), 2), 4);
    const size_t i = 3;
    const auto& d = cx.differentials()[i];
    cx.corruptDifferential(i, SparseMatrix<Q>(d.rows(), d.cols()));
    auto r = verifyExactness(cx);
    EXPECT_FALSE(r.pass);
    auto failed = r.metrics["failedPositions"].get<std::vector<size_t>>();
    EXPECT_NE(std::find(failed.begin(), failed.end(), i), failed.end());
    EXPECT_NE(std::find(failed.begin(), failed.end(), i + 1), failed.end());
}

TEST(LES, NonzeroCompositionRejected) {
    auto cx = buildClLES(standardFiber(QuadraticSpace::split(2), 2), 2);
    auto labels = cx.labels();
    auto diffs = cx.differentials();
    EXPECT_THROW(GradedComplex<Q>(labels, {}), std::invalid_argument);
    const size_t mid = lesMiddleIndex(2);
    SparseMatrix<Q> bad(diffs[mid].rows(), 0);
    for (uint32_t j = 0; j < diffs[mid].cols(); ++j) bad.appendColumn({{j, Q(1)}});
    diffs[mid] = bad;
    EXPECT_THROW(GradedComplex<Q>(labels, diffs), ComplexError);
}

TEST(FiberModule, Dimensions) {
    EXPECT_EQ(fiberKernelModule(standardFiber(QuadraticSpace::split(2), 2)).dim, 2u);
    EXPECT_EQ(fiberKernelModule(standardFiber(QuadraticSpace::split(3), 2)).dim, 8u);
}

TEST(FiberModule, ConstantRank) {
    auto a = verifyConstantRank<Q>(QuadraticSpace::split(3), 2, 10, 1);
    EXPECT_TRUE(a.pass) << a.message;
    auto b = verifyConstantRank<Q>(QuadraticSpace::split(2), 2, 10, 1);
    EXPECT_TRUE(b.pass) << b.message;
    EXPECT_EQ(b.metrics["common"].get<size_t>(), 2u);
    ScopedModulus sm(2305843009213693921ULL);
    auto c = verifyConstantRank<Fp>(QuadraticSpace::diag({1, 1, 1, 1, 1, 0}), 2, 10, 1);
    EXPECT_TRUE(c.pass) << c.message;
}

TEST(SOQuotients, Examples) {
    auto sym = buildSOQuotients(QuadraticSpace::split(3), {SOQuotientKind::SymSO, 2});
    EXPECT_EQ(sym.space.dim(), 20u);
    auto ten = buildSOQuotients(QuadraticSpace::split(3), {SOQuotientKind::TensorSO, 1});
    EXPECT_EQ(ten.space.dim(), 35u);
    auto s21 = buildSOQuotients(QuadraticSpace::unitDiagonal(5, 5), {SOQuotientKind::S21Dots, 2});
    EXPECT_TRUE(s21.check.pass) << s21.check.message;
    EXPECT_EQ(s21.check.metrics["ambientDim"].get<size_t>(), 40u);
    EXPECT_EQ(s21.check.metrics["rotationRank"].get<size_t>(), 10u);
    EXPECT_EQ(s21.space.dim(), 35u);
}

TEST(SOQuotients, Rejections) {
    EXPECT_THROW(buildSOQuotients(QuadraticSpace::split(2), {SOQuotientKind::S21Dots, 2}), std::invalid_argument);
    EXPECT_THROW(buildSOQuotients(QuadraticSpace::split(2), {SOQuotientKind::SymSO, -1}), std::invalid_argument);
}

TEST(KeyLemma, KernelDimensions) {
    EXPECT_EQ(keyLemmaCheck(4, 2, 4).metrics["kernelDim"].get<size_t>(), 8u);
    EXPECT_EQ(keyLemmaCheck(5, 2, 5).metrics["kernelDim"].get<size_t>(), 16u);
    auto minRank = keyLemmaCheck(5, 2, 3);
    EXPECT_TRUE(minRank.pass) << minRank.message;
    EXPECT_EQ(minRank.metrics["kernelDim"].get<size_t>(), 16u);
    EXPECT_THROW(keyLemmaCheck(5, 2, 2), std::invalid_argument);
}

TEST(KeyLemma, OrbitReductionMatchesFullSweep) {
    setBlockOrbitReduction(false);
    auto full = keyLemmaCheck(5, 2, 4);
    auto cc = cliffCliffCheck(5, 1, 4);
    setBlockOrbitReduction(true);
    auto orbit = keyLemmaCheck(5, 2, 4);
    auto ccOrbit = cliffCliffCheck(5, 1, 4);
    EXPECT_EQ(full.metrics["kernelDim"], orbit.metrics["kernelDim"]);
    EXPECT_EQ(cc.metrics["ranks"], ccOrbit.metrics["ranks"]);
    EXPECT_TRUE(full.pass && cc.pass);
}

TEST(Morita, Bijective) {
    auto odd = moritaCheck(QuadraticSpace::splitPlusPoint(2), standardLagrangian(QuadraticSpace::splitPlusPoint(2)));
    EXPECT_TRUE(odd.pass) << odd.message;
    EXPECT_EQ(odd.metrics["dimClEven"].get<size_t>(), 16u);
    EXPECT_EQ(odd.metrics["dimIdealEven"].get<size_t>(), 4u);
    auto even = moritaCheck(QuadraticSpace::split(2), standardLagrangian(QuadraticSpace::split(2)));
    EXPECT_TRUE(even.pass) << even.message;
    EXPECT_EQ(even.metrics["targetDim"].get<size_t>(), 8u);
    auto one = moritaCheck(QuadraticSpace::split(1), standardLagrangian(QuadraticSpace::split(1)));
    EXPECT_TRUE(one.pass) << one.message;
    EXPECT_EQ(one.metrics["centralEigenEven"].get<int>(), 1);
    EXPECT_EQ(one.metrics["centralEigenOdd"].get<int>(), -1);
}

TEST(Spinor, MatchesIndependentOracle) {
    for (const auto& [space, k] : std::vector<std::pair<QuadraticSpace, size_t>>{
             {QuadraticSpace::split(2), 2}, {QuadraticSpace::split(3), 2}, {QuadraticSpace::splitPlusPoint(2), 2}}) {
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            auto f = isotropicFrameSample<Q>(space, k, seed);
            auto d = spinorSheafFiber(f, standardLagrangian(space));
            EXPECT_EQ(d.dimEvenTensor, spinorOracle(f, Parity::Even));
            EXPECT_EQ(d.dimOddTensor, spinorOracle(f, Parity::Odd));
        }
    }
}

TEST(Spinor, ConstantAcrossFrames) {
    auto four = spinorConstancyCheck(QuadraticSpace::split(2), 2, 5, 1);
    EXPECT_TRUE(four.pass) << four.message;
    auto six = spinorConstancyCheck(QuadraticSpace::split(3), 2, 5, 1);
    EXPECT_TRUE(six.pass) << six.message;
    auto five = spinorConstancyCheck(QuadraticSpace::splitPlusPoint(2), 2, 5, 1);
    EXPECT_TRUE(five.pass) << five.message;
    for (const auto& s : four.metrics["samples"])
        EXPECT_EQ(s["dimEven"].get<size_t>() + s["dimOdd"].get<size_t>(), 1u);
}

TEST(CliffNonCliff, Injective) {
    for (auto [n, s] : std::vector<std::pair<size_t, int>>{{6, 0}, {6, 2}, {7, 1}, {5, 3}}) {
        auto r = cliffNonCliffCheck(n, s);
        EXPECT_TRUE(r.pass) << n << " " << s << " " << r.message;
    }
    EXPECT_EQ(cliffNonCliffCheck(6, 2).metrics["quotientDim"].get<size_t>(), 114u);
    EXPECT_TRUE(cliffNonCliffCheck(6, 1, 3).pass);
    EXPECT_THROW(cliffNonCliffCheck(4, 1), std::invalid_argument);
}

TEST(Pascal, Identity) {
    auto r = pascalIdentityCheck(6, 2);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.metrics["koszul"].get<long>(), 114);
    for (int n = 3; n <= 12; ++n) {
        EXPECT_EQ(pascalIdentityCheck(n, 0).metrics["koszul"].get<long>(), n);
        for (int s = 0; s <= 8; ++s) EXPECT_TRUE(pascalIdentityCheck(n, s).pass) << n << " " << s;
    }
    auto printed = pascalIdentityCheck(6, 3);
    EXPECT_EQ(printed.metrics["koszul"].get<long>(), 280);
    EXPECT_EQ(printed.metrics["printed"].get<long>(), 276);
}

TEST(Pascal, BinomialOrZero) {
    EXPECT_EQ(binomialOrZero(5, 2), 10);
    EXPECT_EQ(binomialOrZero(5, -1), 0);
    EXPECT_EQ(binomialOrZero(-1, 0), 0);
    EXPECT_EQ(binomialOrZero(3, 4), 0);
}

TEST(CliffCliff, ExactBothParities) {
    for (int p : {0, 1}) {
        auto r = cliffCliffCheck(5, p);
        EXPECT_TRUE(r.pass) << r.message;
        EXPECT_EQ(r.metrics["ranks"][0].get<size_t>(), 256u);
        EXPECT_TRUE(r.metrics["composesToZero"].get<bool>());
    }
    EXPECT_TRUE(cliffCliffCheck(6, 0, 3).pass);
}

TEST(Hodge, EigenDims) {
    auto three = hodgeStarCheck(3, 1);
    EXPECT_TRUE(three.pass) << three.message;
    EXPECT_EQ(three.metrics["eigenPlus"].get<size_t>(), 1u);
    auto four = hodgeStarCheck(4, 2);
    EXPECT_TRUE(four.pass) << four.message;
    EXPECT_EQ(four.metrics["eigenPlus"].get<size_t>(), 3u);
    EXPECT_EQ(four.metrics["eigenMinus"].get<size_t>(), 3u);
    for (uint64_t seed = 10; seed < 15; ++seed) EXPECT_TRUE(hodgeStarCheck(4, seed).pass);
}

TEST(Residual, OddValues) {
    auto r = residualAccounting(3, ResidualParity::Odd);
    EXPECT_EQ(r.hhX2, 114);
    EXPECT_EQ(r.hhF1, 48);
    EXPECT_EQ(r.hhOGr, 66);
    EXPECT_EQ(r.collectionCount, 52);
    EXPECT_EQ(r.hhResidual, 14);
    EXPECT_EQ(residualAccounting(2, ResidualParity::Odd).hhResidual, 10);
    for (int m = 2; m <= 10; ++m) EXPECT_TRUE(residualCheck(m, ResidualParity::Odd).pass);
    EXPECT_THROW(residualAccounting(1, ResidualParity::Odd), std::invalid_argument);
}

TEST(Residual, EvenIsTwo) {
    EXPECT_EQ(residualAccounting(3, ResidualParity::Even).hhResidual, 2);
    EXPECT_TRUE(residualCheck(3, ResidualParity::Even).pass);
}
