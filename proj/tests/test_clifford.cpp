#include <gtest/gtest.h>

#include <random>

#include "cliffver/clifford.hpp"

using namespace cliffver;

namespace {

using E = CliffordElement<Rational>;

std::vector<QuadraticSpace> testForms() {
    return {QuadraticSpace::diag({1, 1, 1}),        QuadraticSpace::diag({1, -2, 3, 0}),
            QuadraticSpace::split(2),               QuadraticSpace::splitPlusPoint(2),
            QuadraticSpace({{1, 2, 0}, {2, 0, -1}, {0, -1, 3}}), QuadraticSpace::witt(5, 3)};
}

E randomElement(std::mt19937_64& rng, const CliffordPtr& alg, size_t terms) {
    E x(alg);
    for (size_t i = 0; i < terms; ++i)
        x += E::blade(alg, rng() % alg->dim(), Rational(static_cast<int>(rng() % 7) - 3));
    return x;
}

// Expansion oracle: multiplies generator words by bubble-sorting with the
// defining relation, independent of the recursive tables.
std::map<std::vector<int>, Rational> expandWord(const QuadraticSpace& q, std::vector<int> word) {
    std::map<std::vector<int>, Rational> out;
    for (size_t i = 0; i + 1 < word.size(); ++i) {
        int a = word[i], b = word[i + 1];
        if (a < b) continue;
        std::vector<int> rest(word.begin(), word.begin() + i);
        rest.insert(rest.end(), word.begin() + i + 2, word.end());
        if (a == b) {
            for (auto& [w, c] : expandWord(q, rest)) out[w] += c * q.gram(a, a);
        } else {
            std::vector<int> swapped = word;
            std::swap(swapped[i], swapped[i + 1]);
            for (auto& [w, c] : expandWord(q, swapped)) out[w] -= c;
            for (auto& [w, c] : expandWord(q, rest)) out[w] += c * 2 * q.gram(a, b);
        }
        std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
        return out;
    }
    out[word] = 1;
    return out;
}

}  // namespace

TEST(BladeProduct, DiagonalExamples) {
    auto alg = makeClifford(QuadraticSpace::diag({1, 1}));
    EXPECT_EQ(alg->bladeProduct(0b01, 0b01), (BladeSum{{0, 1}}));
    EXPECT_EQ(alg->bladeProduct(0b01, 0b10), (BladeSum{{0b11, 1}}));
    EXPECT_EQ(alg->bladeProduct(0b10, 0b01), (BladeSum{{0b11, -1}}));
    E e12 = E::blade(alg, 0b11);
    EXPECT_EQ(e12 * e12, E::scalar(alg, Rational(-1)));
}

TEST(BladeProduct, SplitAnticommutator) {
    auto alg = makeClifford(QuadraticSpace::split(1));
    E e = E::blade(alg, 0b01), f = E::blade(alg, 0b10);
    EXPECT_EQ(e * f + f * e, E::scalar(alg, Rational(2)));
    E one = E::scalar(alg, Rational(1));
    E x = one - e * f;
    EXPECT_EQ(x * x, one);
}

TEST(BladeProduct, MatchesWordExpansionOracle) {
    for (const auto& q : testForms()) {
        auto alg = makeClifford(q);
        for (Blade s = 0; s < alg->dim(); ++s)
            for (Blade t = 0; t < alg->dim(); ++t) {
                std::vector<int> word;
                for (size_t i = 0; i < q.n(); ++i)
                    if (s >> i & 1) word.push_back(static_cast<int>(i));
                for (size_t i = 0; i < q.n(); ++i)
                    if (t >> i & 1) word.push_back(static_cast<int>(i));
                std::map<Blade, int64_t> expected;
                for (const auto& [w, c] : expandWord(q, word)) {
                    Blade b = 0;
                    for (int i : w) b |= Blade(1) << i;
                    expected[b] = c.get_num().get_si();
                }
                EXPECT_EQ(alg->bladeProduct(s, t), BladeSum(expected.begin(), expected.end()));
            }
    }
}

TEST(Clifford, AssociativityOnRandomTriples) {
    std::mt19937_64 rng(41);
    for (const auto& q : testForms()) {
        auto alg = makeClifford(q);
        for (int trial = 0; trial < 100; ++trial) {
            E x = randomElement(rng, alg, 3), y = randomElement(rng, alg, 3), z = randomElement(rng, alg, 3);
            ASSERT_EQ((x * y) * z, x * (y * z)) << q.label();
        }
    }
}

TEST(Clifford, DefiningRelationAndParity) {
    std::mt19937_64 rng(43);
    for (const auto& q : testForms()) {
        auto alg = makeClifford(q);
        for (size_t i = 0; i < q.n(); ++i)
            for (size_t j = 0; j < q.n(); ++j) {
                E v = E::blade(alg, Blade(1) << i), w = E::blade(alg, Blade(1) << j);
                EXPECT_EQ(v * w + w * v, E::scalar(alg, Rational(2 * q.gram(i, j))));
            }
        EXPECT_EQ(alg->pieceDim(Parity::All), size_t(1) << q.n());
        EXPECT_EQ(alg->pieceDim(Parity::Even), size_t(1) << (q.n() - 1));
        EXPECT_EQ(alg->pieceDim(Parity::Odd), size_t(1) << (q.n() - 1));
        for (int trial = 0; trial < 50; ++trial) {
            E x = E::blade(alg, rng() % alg->dim()), y = E::blade(alg, rng() % alg->dim());
            E xy = x * y;
            if (!xy.isZeroElement()) EXPECT_EQ(xy.parity(), (x.parity() + y.parity()) % 2);
        }
    }
}

TEST(MultMatrix, Examples) {
    auto alg1 = makeClifford(QuadraticSpace::diag({1}));
    auto m = leftMultMatrix(E::blade(alg1, 1), Parity::Even, Parity::Odd);
    EXPECT_EQ(m, SparseMatrix<Rational>::identity(1));
    auto alg2 = makeClifford(QuadraticSpace::diag({1, 1}));
    EXPECT_EQ(rank(leftMultMatrix(E::blade(alg2, 1), Parity::All, Parity::All)), 4u);
    auto alg3 = makeClifford(QuadraticSpace::diag({1, 1, 1}));
    EXPECT_EQ(rank(leftMultMatrix(E::blade(alg3, 1), Parity::Even, Parity::Odd)), 4u);
    EXPECT_EQ(leftMultMatrix(E::scalar(alg3, Rational(1)), Parity::Odd, Parity::Odd),
              SparseMatrix<Rational>::identity(4));
    EXPECT_THROW(leftMultMatrix(E::scalar(alg3, Rational(1)) + E::blade(alg3, 1), Parity::Even, Parity::Odd),
                 std::invalid_argument);
}

TEST(MultMatrix, LeftAndRightAgreeWithProducts) {
    std::mt19937_64 rng(47);
    for (const auto& q : testForms()) {
        auto alg = makeClifford(q);
        E x = E::blade(alg, 0b11 & (alg->dim() - 1)) + E::scalar(alg, Rational(2));
        E y = randomElement(rng, alg, 5);
        auto lm = leftMultMatrix(x, Parity::All, Parity::All);
        auto rm = rightMultMatrix(x, Parity::All, Parity::All);
        EXPECT_TRUE(matVec(lm, y.coordinates(Parity::All)) == (x * y).coordinates(Parity::All));
        EXPECT_TRUE(matVec(rm, y.coordinates(Parity::All)) == (y * x).coordinates(Parity::All));
        std::vector<Rational> v(q.n());
        for (auto& c : v) c = static_cast<int>(rng() % 5) - 2;
        EXPECT_EQ(leftVectorMatrix(*alg, v, Parity::All, Parity::All),
                  leftMultMatrix(E::vector(alg, v), Parity::All, Parity::All));
    }
}

TEST(CentralElement, SplitOne) {
    auto alg = makeClifford(QuadraticSpace::split(1));
    E d = centralElement(alg);
    E one = E::scalar(alg, Rational(1));
    E ef = E::blade(alg, 0b01) * E::blade(alg, 0b10);
    EXPECT_TRUE(d == one - ef || d == ef - one);
    EXPECT_EQ(d * d, one);
    bool someOddFails = false;
    for (Blade b : alg->blades(Parity::Odd)) {
        E o = E::blade(alg, b);
        if (!(d * o == o * d)) someOddFails = true;
    }
    EXPECT_TRUE(someOddFails);
}

TEST(CentralElement, CommutesWithEvenAndActsBySigns) {
    for (size_t m = 1; m <= 4; ++m) {
        auto alg = makeClifford(QuadraticSpace::split(m));
        E d = centralElement(alg);
        EXPECT_EQ(d.parity(), 0);
        EXPECT_EQ(d * d, E::scalar(alg, Rational(1)));
        for (Blade b : alg->blades(Parity::Even)) {
            E a = E::blade(alg, b);
            ASSERT_EQ(d * a, a * d);
        }
        auto I = spinorIdeal(alg, standardLagrangian(alg->space()));
        auto dEven = leftMultMatrix(d, Parity::Even, Parity::Even);
        auto dOdd = leftMultMatrix(d, Parity::Odd, Parity::Odd);
        EXPECT_EQ(multiply(dEven, I.basisEven), I.basisEven);
        EXPECT_EQ(multiply(dOdd, I.basisOdd), mapEntries<Rational>(I.basisOdd, [](const Rational& x) {
                      return Rational(-x);
                  }));
    }
    EXPECT_THROW(centralElement(makeClifford(QuadraticSpace::diag({1, 1}))), std::invalid_argument);
}

TEST(SpinorIdeal, Dimensions) {
    auto a1 = makeClifford(QuadraticSpace::split(1));
    auto i1 = spinorIdeal(a1, standardLagrangian(a1->space()));
    EXPECT_EQ(i1.basisAll.cols(), 2u);
    EXPECT_EQ(i1.basisEven.cols(), 1u);
    EXPECT_EQ(i1.basisOdd.cols(), 1u);
    auto a2 = makeClifford(QuadraticSpace::split(2));
    auto i2 = spinorIdeal(a2, standardLagrangian(a2->space()));
    EXPECT_EQ(i2.basisAll.cols(), 4u);
    EXPECT_EQ(i2.basisEven.cols(), 2u);
    EXPECT_EQ(i2.basisOdd.cols(), 2u);
    auto a3 = makeClifford(QuadraticSpace::splitPlusPoint(1));
    auto i3 = spinorIdeal(a3, standardLagrangian(a3->space()));
    EXPECT_EQ(i3.basisEven.cols(), 2u);
    EXPECT_EQ(i3.basisOdd.cols(), 2u);
}

TEST(SpinorIdeal, StableUnderLeftMultiplication) {
    auto alg = makeClifford(QuadraticSpace::split(2));
    auto I = spinorIdeal(alg, standardLagrangian(alg->space()));
    for (Blade b = 0; b < alg->dim(); ++b) {
        auto lm = leftMultMatrix(E::blade(alg, b), Parity::All, Parity::All);
        EXPECT_EQ(rank(hcat(I.basisAll, multiply(lm, I.basisAll))), I.basisAll.cols());
    }
}

TEST(SpinorIdeal, RejectsBadW) {
    auto alg = makeClifford(QuadraticSpace::split(1));
    EXPECT_THROW(spinorIdeal<Rational>(alg, {{Rational(1), Rational(1)}}), std::invalid_argument);
    auto alg2 = makeClifford(QuadraticSpace::split(2));
    std::vector<Rational> f1{0, 1, 0, 0};
    EXPECT_THROW(spinorIdeal<Rational>(alg2, {f1, f1}), std::invalid_argument);
}

TEST(QuadraticSpaceInput, JsonForms) {
    EXPECT_EQ(QuadraticSpace::fromJsonText(R"({"split": 2})"), QuadraticSpace::split(2));
    EXPECT_EQ(QuadraticSpace::fromJsonText(R"({"diag": [1, 0, 1]})"), QuadraticSpace::diag({1, 0, 1}));
    EXPECT_EQ(QuadraticSpace::fromJsonText(R"({"splitPlusPoint": 1})"), QuadraticSpace::splitPlusPoint(1));
    auto q = QuadraticSpace::fromJsonText(R"({"n": 2, "gram": [[0, 1], [1, 0]]})");
    EXPECT_EQ(q.rank(), 2u);
    EXPECT_THROW(QuadraticSpace::fromJsonText(R"({"n": 2, "gram": [[0, 1], [2, 0]]})"), std::invalid_argument);
    EXPECT_THROW(QuadraticSpace::fromJsonText("{"), std::invalid_argument);
    EXPECT_THROW(QuadraticSpace::fromJsonText(R"({"foo": 1})"), std::invalid_argument);
    EXPECT_EQ(QuadraticSpace::witt(6, 5).rank(), 5u);
    EXPECT_EQ(QuadraticSpace::unitDiagonal(6, 4).corank(), 2u);
}
