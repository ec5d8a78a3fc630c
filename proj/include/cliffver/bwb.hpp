#pragma once

#include <vector>

#include "cliffver/report.hpp"
#include "cliffver/schur.hpp"

namespace cliffver {

// Cohomology of S^mu U^vee (x) S^nu Q^vee on Gr(k, n): either nothing, or one
// GL_n irreducible (weight for V^vee) in a single degree.
struct BottResult {
    bool acyclic = true;
    int degree = 0;
    Weight glnWeight;
    Integer dimension = 0;
};

BottResult bott(const Weight& mu, const Weight& nu, size_t n);

// A bundle S^weightOnU U (-twist) on Gr(k, n), written in U-convention.
struct BundleSpec {
    Weight weightOnU;
    int twist = 0;

    // (mu on U^vee): dualWeight(weightOnU) - twist.
    Weight dualConvention() const;
};

BottResult bott(const BundleSpec& bundle, size_t n);

// O(t) on Gr(1, n) against the classical projective-space answer.
CheckResult projectiveSpaceCrossCheck(size_t n, int t);

struct KoszulTerm {
    Weight weightOnDual;  // constituent as S^mu U^vee
    long long multiplicity = 1;
    BottResult cohomology;
};

// Tensors each U-convention summand of base with Lambda^j Sym^2 U, twists by
// -t, and runs bott on every constituent.
std::vector<KoszulTerm> koszulTermCohomology(const SchurSum& base, int j, int t, size_t n, size_t k);

// Same, but base is given directly in U^vee convention (twist already applied).
std::vector<KoszulTerm> koszulTermsOnDual(const SchurSum& baseDual, int j, size_t n, size_t k);

// Sum over Koszul terms of (-1)^(j + degree) dim; the Euler characteristic of
// the restriction of baseDual to the isotropic locus.
Integer koszulEulerCharacteristic(const SchurSum& baseDual, size_t n, size_t k);

// Per-term degree bookkeeping for the vanishing statements. Parameters outside
// the hypotheses throw std::invalid_argument.
CheckResult verifyVanishingA(size_t n, size_t k, int p, int q, int t);  // Sym^p U (x) Sym^q U (-t)
CheckResult verifyVanishingB(size_t n, size_t k, int p, int q, int t);  // Sym^p U^vee (x) Sym^q U^vee (-t)
CheckResult verifyVanishingC(size_t n, int p, int q, int t);            // Sym^p U (x) Sym^q U^vee (-t), k = 2
CheckResult verifyVanishingD(size_t n, int p, int q, int t);            // same bundle, total acyclicity

bool vanishingDExceptional(size_t n, int p, int q, int t);

enum class PushforwardVariant { Plain, TensorU };

// Predicted rank of the pushforward of Sym^t U^vee (x) Sym^q U^vee (-t)
// (plain) or Sym^(t+1) U^vee (x) Sym^q U^vee (-t) (tensorU), k = 2.
struct PushforwardPrediction {
    Integer predicted;        // quotient dimension from the relation count
    Integer uncorrected;      // tensorU without the relation overlap term
    Integer eulerQuotient;    // Koszul Euler characteristic of the reduced bundle
    Integer eulerOriginal;    // Koszul Euler characteristic of the original bundle
};
PushforwardPrediction predictPushforwardE(size_t n, int q, int t, PushforwardVariant variant);

// dim Sym^s C^n, zero for s < 0.
Integer dimSym(int s, size_t n);

struct GrassmannianDims {
    long dimGr = 0;
    long codimOGr = 0;
    long dimOGr = 0;
};
GrassmannianDims grassmannianDims(size_t n, size_t k);

}  // namespace cliffver
