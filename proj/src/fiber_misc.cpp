#include <algorithm>
#include <bit>
#include <map>

#include "cliffver/fiber.hpp"

namespace cliffver {

long binomialOrZero(long top, long bottom) {
    if (bottom < 0 || top < 0 || bottom > top) return 0;
    Integer acc = 1;
    for (long i = 0; i < bottom; ++i) {
        acc *= top - i;
        acc /= i + 1;
    }
    if (!acc.fits_slong_p()) throw std::overflow_error("binomial coefficient exceeds long");
    return acc.get_si();
}

CheckResult pascalIdentityCheck(int n, int s) {
    if (n < 3 || s < 0) throw std::invalid_argument("pascal identity needs n >= 3, s >= 0");
    auto C = binomialOrZero;
    // Koszul resolution of (V (x) Sym^s) modulo the two relation families.
    const long koszul = n * C(n - 1 + s, s) - C(n - 2 + s, s - 1) - n * C(n - 3 + s, s - 2) + C(n - 4 + s, s - 3);
    // Three families: Sym^s in n-1 variables; Sym^(s-1) in n-2 variables; Sym^(s-2) in n-1 variables.
    const long families = n * C(n - 2 + s, s) + (n - 1) * C(n + s - 4, s - 1) + (n - 2) * C(n + s - 4, s - 2);
    // As printed, the last binomial reads C(n + s - 5, s - 2).
    const long printed = n * C(n - 2 + s, s) + (n - 1) * C(n + s - 4, s - 1) + (n - 2) * C(n + s - 5, s - 2);
    CheckResult r;
    r.metrics["n"] = n;
    r.metrics["s"] = s;
    r.metrics["koszul"] = koszul;
    r.metrics["families"] = families;
    r.metrics["printed"] = printed;
    r.metrics["printedMatches"] = printed == koszul;
    if (koszul != families) r.fail("Koszul count differs from the spanning-set count");
    return r;
}

namespace {

using Q = Rational;
using Dense = std::vector<std::vector<Q>>;

Q determinant(Dense a) {
    const size_t n = a.size();
    Q det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && isZero(a[p][c])) ++p;
        if (p == n) return Q(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (isZero(a[r][c])) continue;
            Q f = a[r][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

std::vector<std::vector<size_t>> subsetsOf(size_t d, size_t h) {
    std::vector<std::vector<size_t>> out;
    for (uint64_t mask = 0; mask < (uint64_t(1) << d); ++mask) {
        if (static_cast<size_t>(std::popcount(mask)) != h) continue;
        std::vector<size_t> s;
        for (size_t i = 0; i < d; ++i)
            if (mask >> i & 1) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

SparseVector<Q> toSparseVec(const std::vector<Q>& v) {
    SparseVector<Q> s;
    for (size_t i = 0; i < v.size(); ++i)
        if (!isZero(v[i])) s.push_back({static_cast<uint32_t>(i), v[i]});
    return s;
}

}  // namespace

CheckResult hodgeStarCheck(size_t m, uint64_t frameSeed) {
    if (m < 3) throw std::invalid_argument("Hodge star needs m >= 3");
    CheckResult res;
    QuadraticSpace space = QuadraticSpace::split(m);
    const size_t n = space.n();
    auto frame = isotropicFrameSample<Q>(space, 2, frameSeed);

    // U^perp = kernel of v -> (B(u_1, v), B(u_2, v)).
    SparseMatrix<Q> pairing(2, n);
    for (size_t j = 0; j < n; ++j) {
        std::vector<Q> e(n, Q(0));
        e[j] = 1;
        SparseVector<Q> col;
        for (size_t i = 0; i < 2; ++i) {
            Q v = space.pair(frame.frame[i], e);
            if (!isZero(v)) col.push_back({static_cast<uint32_t>(i), v});
        }
        pairing.setColumn(j, col);
    }
    SparseMatrix<Q> perp = kernelBasis(pairing);
    Echelon<Q> ech(n);
    for (const auto& u : frame.frame) ech.insert(toSparseVec(u));
    std::vector<std::vector<Q>> W;
    for (size_t c = 0; c < perp.cols(); ++c)
        if (ech.insert(perp.col(c))) {
            std::vector<Q> w(n, Q(0));
            for (const auto& [i, x] : perp.col(c)) w[i] = x;
            W.push_back(w);
        }
    const size_t d = W.size(), h = m - 2;
    if (d != 2 * m - 4) throw std::logic_error("U^perp / U has the wrong dimension");
    Dense G(d, std::vector<Q>(d));
    for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) G[a][b] = space.pair(W[a], W[b]);
    if (isZero(determinant(G))) throw std::logic_error("induced form on U^perp / U is degenerate");

    // star is defined by alpha ^ star(beta) = <alpha, beta> vol, with
    // <e_I, e_J> = det G[I, J] and the wedge sign of e_I ^ e_(complement of I).
    auto subs = subsetsOf(d, h);
    const size_t N = subs.size();
    std::map<std::vector<size_t>, size_t> pos;
    for (size_t i = 0; i < N; ++i) pos[subs[i]] = i;
    Dense star(N, std::vector<Q>(N, Q(0)));
    for (size_t I = 0; I < N; ++I) {
        std::vector<size_t> comp;
        for (size_t t = 0; t < d; ++t)
            if (std::find(subs[I].begin(), subs[I].end(), t) == subs[I].end()) comp.push_back(t);
        int inv = 0;
        for (size_t a : subs[I])
            for (size_t b : comp)
                if (b < a) ++inv;
        const Q sign(inv % 2 ? -1 : 1);
        for (size_t J = 0; J < N; ++J) {
            Dense minor(h, std::vector<Q>(h));
            for (size_t a = 0; a < h; ++a)
                for (size_t b = 0; b < h; ++b) minor[a][b] = G[subs[I][a]][subs[J][b]];
            star[pos[comp]][J] = determinant(minor) / sign;
        }
    }
    Dense sq(N, std::vector<Q>(N, Q(0)));
    for (size_t i = 0; i < N; ++i)
        for (size_t k = 0; k < N; ++k)
            if (!isZero(star[i][k]))
                for (size_t j = 0; j < N; ++j) sq[i][j] += star[i][k] * star[k][j];
    const Q c = sq[0][0];
    bool scalar = !isZero(c);
    for (size_t i = 0; i < N && scalar; ++i)
        for (size_t j = 0; j < N; ++j)
            if (sq[i][j] != (i == j ? c : Q(0))) {
                scalar = false;
                break;
            }
    res.metrics["m"] = m;
    res.metrics["seed"] = frameSeed;
    res.metrics["dim"] = N;
    res.metrics["expectedDim"] = binomialOrZero(static_cast<long>(d), static_cast<long>(h));
    res.metrics["squareScalar"] = toString(c);
    if (!scalar) {
        res.fail("star squared is not a nonzero scalar");
        return res;
    }
    // The basis of U^perp / U is not volume-normalized, so star^2 = c with c a
    // rational square; star / sqrt(c) is the normalized operator.
    Q root;
    const bool normalizable = exactSqrt(c, root);
    res.metrics["normalizedSquareIsIdentity"] = normalizable;
    if (!normalizable) {
        res.fail("star squared is not a rational square");
        return res;
    }
    // Normalized star: square = identity.
    SparseMatrix<Q> plus(N, 0), minus(N, 0);
    for (size_t j = 0; j < N; ++j) {
        std::vector<Q> colP(N), colM(N);
        for (size_t i = 0; i < N; ++i) {
            Q v = star[i][j] / root;
            colP[i] = v - (i == j ? Q(1) : Q(0));
            colM[i] = v + (i == j ? Q(1) : Q(0));
        }
        plus.appendColumn(toSparseVec(colP));
        minus.appendColumn(toSparseVec(colM));
    }
    const size_t ePlus = N - rank(plus, FieldMode::Rational), eMinus = N - rank(minus, FieldMode::Rational);
    res.metrics["eigenPlus"] = ePlus;
    res.metrics["eigenMinus"] = eMinus;
    if (ePlus != eMinus) res.fail("eigenspaces have different dimensions");
    if (ePlus + eMinus != N || static_cast<long>(N) != binomialOrZero(static_cast<long>(d), static_cast<long>(h)))
        res.fail("eigenspaces do not fill the middle exterior power");
    return res;
}

ResidualRecord residualAccounting(int m, ResidualParity parity) {
    if (m < 2) throw std::invalid_argument("residual accounting needs m >= 2");
    ResidualRecord r;
    const long M = m;
    if (parity == ResidualParity::Even) {
        // Over a point the even residual category is two exceptional objects.
        r.hhResidual = 2;
        return r;
    }
    r.hhX2 = 16 * M * M - 10 * M;
    r.hhF1 = 8 * M * M - 8 * M;
    r.hhOGr = r.hhX2 - r.hhF1;
    r.collectionCount = (2 * M + 3) * (2 * M - 2) + 2 * (2 * M - 2) * (M - 1);
    r.hhResidual = r.hhOGr - r.collectionCount;
    r.sym2CollectionLength = binomialOrZero(4 * M, 2) + 8 * M;
    r.decompositionTotal = r.sym2CollectionLength + 4 * M * (2 * M - 4);
    return r;
}

CheckResult residualCheck(int m, ResidualParity parity) {
    ResidualRecord rec = residualAccounting(m, parity);
    CheckResult r;
    r.metrics["m"] = m;
    r.metrics["parity"] = parity == ResidualParity::Odd ? "odd" : "even";
    r.metrics["hhResidual"] = rec.hhResidual;
    if (parity == ResidualParity::Even) {
        if (rec.hhResidual != 2) r.fail("even residual is not two-dimensional");
        return r;
    }
    const long M = m;
    r.metrics["hhX2"] = rec.hhX2;
    r.metrics["hhF1"] = rec.hhF1;
    r.metrics["hhOGr"] = rec.hhOGr;
    r.metrics["collectionCount"] = rec.collectionCount;
    r.metrics["sym2CollectionLength"] = rec.sym2CollectionLength;
    r.metrics["decompositionTotal"] = rec.decompositionTotal;
    if (rec.hhResidual != 2 * (2 * M + 1)) r.fail("residual Hochschild count differs from 2(2m+1)");
    if (rec.hhOGr != 8 * M * M - 2 * M) r.fail("OGr Hochschild count differs from 8m^2 - 2m");
    if (rec.collectionCount != 8 * M * M - 6 * M - 2) r.fail("collection count differs from 8m^2 - 6m - 2");
    if (rec.decompositionTotal != rec.hhX2) r.fail("collection lengths do not add up to 16m^2 - 10m");
    return r;
}

}  // namespace cliffver
