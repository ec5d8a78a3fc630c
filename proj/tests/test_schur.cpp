#include <gtest/gtest.h>

#include <random>

#include "cliffver/schur.hpp"

using namespace cliffver;

namespace {

using Character = std::map<Weight, long long>;

Character characterOf(const SchurSum& s, size_t k) {
    Character out;
    for (const auto& [w, m] : s.terms)
        for (const auto& [v, c] : weightsOfSchur(w, k)) out[v] += m * c;
    return out;
}

Character productCharacter(const Character& a, const Character& b) {
    Character out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) {
            Weight z = x;
            for (size_t i = 0; i < z.size(); ++i) z[i] += y[i];
            out[z] += cx * cy;
        }
    return out;
}

long binom(long long n, long long r) {
    if (r < 0 || r > n) return 0;
    long c = 1;
    for (long long i = 1; i <= r; ++i) c = c * (n - r + i) / i;
    return c;
}

// Counts semistandard tableaux of a shape by brute force over all fillings.
long countTableaux(const Weight& shape, int k) {
    std::vector<std::pair<int, int>> cells;
    for (size_t r = 0; r < shape.size(); ++r)
        for (int c = 0; c < shape[r]; ++c) cells.push_back({static_cast<int>(r), c});
    std::vector<int> fill(cells.size(), 1);
    long count = 0;
    while (true) {
        std::map<std::pair<int, int>, int> at;
        for (size_t i = 0; i < cells.size(); ++i) at[cells[i]] = fill[i];
        bool ok = true;
        for (auto& [rc, v] : at) {
            auto left = at.find({rc.first, rc.second - 1});
            auto up = at.find({rc.first - 1, rc.second});
            if (left != at.end() && left->second > v) ok = false;
            if (up != at.end() && up->second >= v) ok = false;
        }
        count += ok;
        size_t i = 0;
        while (i < fill.size() && fill[i] == k) fill[i++] = 1;
        if (i == fill.size()) break;
        ++fill[i];
    }
    return count;
}

std::vector<Weight> partitionsInBox(size_t k, int maxPart) {
    std::vector<Weight> out;
    Weight w(k, 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int cap) {
        if (i == k) {
            out.push_back(w);
            return;
        }
        for (int v = 0; v <= cap; ++v) {
            w[i] = v;
            rec(i + 1, v);
        }
    };
    rec(0, maxPart);
    return out;
}

}  // namespace

TEST(Schur, DimensionExamples) {
    EXPECT_EQ(dimensionGL({0, 0}, 2), 1);
    EXPECT_EQ(dimensionGL({1, 1, 1}, 3), 1);
    EXPECT_EQ(dimensionGL({2, 1}, 2), 2);
    EXPECT_EQ(dimensionGL({2, 1, 0, 0, 0}, 5), 40);
    EXPECT_EQ(dimensionGL({1, 1, 0, 0, 0}, 5), 10);
    EXPECT_EQ(dimensionGL({-1, -2}, 2), dimensionGL({2, 1}, 2));
}

TEST(Schur, DimensionMatchesTableauxCount) {
    for (size_t k = 1; k <= 3; ++k)
        for (const auto& w : partitionsInBox(k, 3)) {
            EXPECT_EQ(dimensionGL(w, k), countTableaux(w, static_cast<int>(k))) << weightToString(w);
            long total = 0;
            for (const auto& [v, c] : weightsOfSchur(w, k)) total += c;
            EXPECT_EQ(dimensionGL(w, k), total);
        }
}

TEST(Schur, DimensionShiftInvariant) {
    EXPECT_EQ(dimensionGL({3, 1, -2}, 3), dimensionGL({5, 3, 0}, 3));
}

TEST(Schur, DualWeight) {
    EXPECT_EQ(dualWeight({0, 0, 0}), (Weight{0, 0, 0}));
    EXPECT_EQ(dualWeight({2, 1}), (Weight{-1, -2}));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Weight w(4);
        for (auto& x : w) x = static_cast<int>(rng() % 11) - 5;
        std::sort(w.rbegin(), w.rend());
        EXPECT_EQ(dualWeight(dualWeight(w)), w);
        EXPECT_EQ(dimensionGL(dualWeight(w), 4), dimensionGL(w, 4));
    }
}

TEST(Schur, WeightsOfSmallShapes) {
    EXPECT_EQ(weightsOfSchur({1, 0}, 2), (Character{{{1, 0}, 1}, {{0, 1}, 1}}));
    EXPECT_EQ(weightsOfSchur({2, 0}, 2), (Character{{{2, 0}, 1}, {{1, 1}, 1}, {{0, 2}, 1}}));
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= a; ++b)
            for (const auto& [beta, c] : weightsOfSchur({a, b, 0, 0}, 4)) {
                EXPECT_LE(beta[0], a);
                EXPECT_LE(beta[0] + beta[1], a + b);
            }
}

TEST(Schur, TensorSymSymExamples) {
    SchurSum triv;
    triv.add({0, 0}, 1);
    EXPECT_EQ(tensorSymSym(0, 0, 2), triv);
    SchurSum s11;
    s11.add({2, 0}, 1);
    s11.add({1, 1}, 1);
    EXPECT_EQ(tensorSymSym(1, 1, 2), s11);
    SchurSum s21;
    s21.add({3, 0, 0}, 1);
    s21.add({2, 1, 0}, 1);
    EXPECT_EQ(tensorSymSym(2, 1, 3), s21);
}

TEST(Schur, TensorSymSymAgreesWithLR) {
    for (size_t k = 2; k <= 4; ++k)
        for (int p = 0; p <= 4; ++p)
            for (int q = 0; q <= 4; ++q) {
                Weight a(k, 0), b(k, 0);
                a[0] = p;
                b[0] = q;
                EXPECT_EQ(tensorSymSym(p, q, k), littlewoodRichardson(a, b, k));
            }
}

TEST(Schur, LittlewoodRichardsonExamples) {
    SchurSum id;
    id.add({2, 1, 0}, 1);
    EXPECT_EQ(littlewoodRichardson({2, 1, 0}, {0, 0, 0}, 3), id);
    SchurSum p;
    p.add({2, 0}, 1);
    p.add({1, 1}, 1);
    EXPECT_EQ(littlewoodRichardson({1, 0}, {1, 0}, 2), p);
    SchurSum sq = littlewoodRichardson({2, 1, 0}, {2, 1, 0}, 3);
    EXPECT_EQ(dimension(sq, 3), 64);
    EXPECT_EQ(sq.terms.at({3, 2, 1}), 2);
}

TEST(Schur, LittlewoodRichardsonMatchesCharacters) {
    for (size_t k = 2; k <= 3; ++k) {
        auto shapes = partitionsInBox(k, 3);
        for (const auto& l : shapes)
            for (const auto& m : shapes) {
                SchurSum s = littlewoodRichardson(l, m, k);
                EXPECT_EQ(characterOf(s, k), productCharacter(weightsOfSchur(l, k), weightsOfSchur(m, k)))
                    << weightToString(l) << " x " << weightToString(m);
                EXPECT_EQ(s, littlewoodRichardson(m, l, k));
                EXPECT_EQ(dimension(s, k), dimensionGL(l, k) * dimensionGL(m, k));
            }
    }
}

TEST(Schur, LittlewoodRichardsonNegativeWeights) {
    SchurSum s = littlewoodRichardson({1, -1}, {0, -2}, 2);
    EXPECT_EQ(characterOf(s, 2), productCharacter(weightsOfSchur({1, -1}, 2), weightsOfSchur({0, -2}, 2)));
}

TEST(Schur, WedgeSym2Examples) {
    SchurSum triv;
    triv.add({0, 0}, 1);
    EXPECT_EQ(wedgeSym2Decompose(0, 2), triv);
    SchurSum top;
    top.add({3, 3}, 1);
    EXPECT_EQ(wedgeSym2Decompose(3, 2), top);
    SchurSum two;
    two.add({3, 1}, 1);
    EXPECT_EQ(wedgeSym2Decompose(2, 2), two);
    EXPECT_THROW(wedgeSym2Decompose(4, 2), std::invalid_argument);
}

TEST(Schur, WedgeSym2Dimensions) {
    for (size_t k = 1; k <= 4; ++k) {
        int top = static_cast<int>(k * (k + 1) / 2);
        for (int i = 0; i <= top; ++i)
            EXPECT_EQ(dimension(wedgeSym2Decompose(i, k), k), binom(top, i)) << "i=" << i << " k=" << k;
        SchurSum det;
        det.add(Weight(k, static_cast<int>(k) + 1), 1);
        EXPECT_EQ(wedgeSym2Decompose(top, k), det);
    }
}

TEST(Schur, TensorBoundExamples) {
    auto r0 = lemmaTensorBoundCheck(3, 1, 0, 3);
    EXPECT_TRUE(r0.pass);
    EXPECT_EQ(r0.maxAlphaAny, 0);
    auto r = lemmaTensorBoundCheck(0, 0, 2, 2);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.constituents, 1u);
    EXPECT_EQ(r.maxAlpha1, 3);
    EXPECT_EQ(r.maxAlpha12, 4);
}

TEST(Schur, TensorBoundExhaustive) {
    for (size_t k = 2; k <= 3; ++k) {
        int top = static_cast<int>(k * (k + 1) / 2);
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; b <= a; ++b)
                for (int i = 0; i <= top; ++i) EXPECT_TRUE(lemmaTensorBoundCheck(a, b, i, k).pass);
    }
}

TEST(Schur, ParseWeight) {
    EXPECT_EQ(parseWeight("(2,1,-1)"), (Weight{2, 1, -1}));
    EXPECT_EQ(parseWeight("3,0"), (Weight{3, 0}));
    EXPECT_THROW(parseWeight("(2,x)"), std::invalid_argument);
}
