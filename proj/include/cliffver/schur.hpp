#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cliffver/scalar.hpp"

namespace cliffver {

// Weakly decreasing integer tuple (a GL_k highest weight); negative parts allowed.
using Weight = std::vector<int>;

// Irreducible constituents with positive multiplicities; all keys share one length.
struct SchurSum {
    std::map<Weight, long long> terms;

    void add(const Weight& w, long long mult);
    size_t size() const { return terms.size(); }
    friend bool operator==(const SchurSum& a, const SchurSum& b) { return a.terms == b.terms; }
};

bool isDominant(const Weight& w);
std::string weightToString(const Weight& w);
Weight parseWeight(const std::string& text);

// Weyl dimension of the GL_k irreducible with highest weight l (len(l) = k).
Integer dimensionGL(const Weight& l, size_t k);
Integer dimension(const SchurSum& s, size_t k);

// (l_1..l_k) -> (-l_k..-l_1).
Weight dualWeight(const Weight& l);

// Adds c to every part.
Weight shiftWeight(const Weight& l, int c);

// Pieri decomposition of Sym^p (x) Sym^q for GL_k.
SchurSum tensorSymSym(int p, int q, size_t k);

// Littlewood-Richardson product of two GL_k irreducibles (negative weights via
// a determinant shift). Constituents with more than k rows are dropped.
SchurSum littlewoodRichardson(const Weight& l, const Weight& m, size_t k);
SchurSum tensorProduct(const SchurSum& a, const SchurSum& b, size_t k);

// Weight multiset of the irreducible l, keyed by weight with multiplicity.
std::map<Weight, long long> weightsOfSchur(const Weight& l, size_t k);

// Lambda^i Sym^2 of the standard GL_k representation, decomposed by stripping
// dominant characters from the weight multiset.
SchurSum wedgeSym2Decompose(int i, size_t k);

struct TensorBoundReport {
    bool pass = true;
    std::optional<Weight> witness;  // first violating constituent
    size_t constituents = 0;
    int maxAlpha1 = 0;
    int maxAlpha12 = 0;
    int maxAlphaAny = 0;
};

// Checks the bounds on nu = (a + alpha_1, b + alpha_2, alpha_3, ...) for every
// constituent of S^(a,b,0..) (x) Lambda^i Sym^2: 0 <= alpha_j <= k+1,
// alpha_1 <= i+1, alpha_1 + alpha_2 <= i+3.
TensorBoundReport lemmaTensorBoundCheck(int a, int b, int i, size_t k);

}  // namespace cliffver
