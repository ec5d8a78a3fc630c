#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffver/clifford.hpp"
#include "cliffver/linalg.hpp"
#include "cliffver/report.hpp"

namespace cliffver {

class FrameSampleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Composition of consecutive differentials is not zero.
class ComplexError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// A point of the relative isotropic Grassmannian: a form and a basis u_1..u_k
// of an isotropic subspace. Rational frames are primitive integer vectors.
template <class S>
struct FiberInstance {
    QuadraticSpace space;
    size_t k = 0;
    std::vector<std::vector<S>> frame;
    uint64_t seed = 0;
};

// Throws std::invalid_argument when the rank hypothesis, isotropy or
// independence fails.
template <class S>
void validateFiber(const FiberInstance<S>& fiber);

// Greedy isotropic completion with seeded rejection sampling. Throws
// FrameSampleError when no frame is found within the attempt budget.
template <class S>
FiberInstance<S> isotropicFrameSample(const QuadraticSpace& space, size_t k, uint64_t seed);

struct TermLabel {
    std::string name;
    size_t dim = 0;
};

// Finite complex: differential i maps term i to term i + 1.
template <class S>
class GradedComplex {
public:
    GradedComplex() = default;
    GradedComplex(std::vector<TermLabel> labels, std::vector<SparseMatrix<S>> differentials);

    size_t length() const { return labels_.size(); }
    const std::vector<TermLabel>& labels() const { return labels_; }
    const std::vector<SparseMatrix<S>>& differentials() const { return diffs_; }

    // Replaces one differential without the composition check (negative controls).
    void corruptDifferential(size_t i, SparseMatrix<S> m);

private:
    std::vector<TermLabel> labels_;
    std::vector<SparseMatrix<S>> diffs_;
};

// Window of the long exact sequence of right Cl_even-modules:
// Sym^p U (x) Cl (p = P..0), det U^vee (x) Cl, Sym^p U^vee (x) det U^vee (x) Cl (p = 1..P).
template <class S>
GradedComplex<S> buildClLES(const FiberInstance<S>& fiber, size_t window);

// Index of the det U^vee (x) Cl term in buildClLES output.
inline size_t lesMiddleIndex(size_t window) { return window + 1; }

// Checks rank(in) + rank(out) = dim at each position (all interior ones when
// positions is empty) and that each composition vanishes.
template <class S>
CheckResult verifyExactness(const GradedComplex<S>& complex, std::vector<size_t> positions = {});

// coker(U (x) Cl_odd -> Cl_even) with its right Cl_even action on the quotient.
template <class S>
struct FiberModule {
    size_t dim = 0;
    QuotientSpace<S> quotient;                 // over Cl_even coordinates
    std::vector<Blade> generators;             // e_i e_j, i < j
    std::vector<SparseMatrix<S>> rightAction;  // one per generator, on quotient coordinates
};

template <class S>
FiberModule<S> fiberKernelModule(const FiberInstance<S>& fiber);

template <class S>
CheckResult verifyConstantRank(const QuadraticSpace& space, size_t k, size_t samples, uint64_t seed);

enum class SOQuotientKind { S21Dots, SymSO, TensorSO };

struct SOQuotientSpec {
    SOQuotientKind kind = SOQuotientKind::SymSO;
    int param = 0;  // k for S21Dots, p otherwise
};

// Quotient of a polynomial/tensor space of V^vee by the relations coming from
// the form. Keys list the ambient basis monomials (variable indices).
struct SOQuotient {
    QuotientSpace<Rational> space;
    std::vector<std::vector<int>> keys;
    CheckResult check;
};

SOQuotient buildSOQuotients(const QuadraticSpace& space, const SOQuotientSpec& spec);

// Graded checks rank one block per orbit of coordinate permutations that fix
// the diagonal form (default on); off ranks every block.
void setBlockOrbitReduction(bool on);

// image(Cl_even -> Lambda^k V^vee (x) Hom) = kernel of the two-component map,
// on diag(1^r, 0^(n-r)).
CheckResult keyLemmaCheck(size_t n, size_t k, size_t r);

// Action of Cl_even on the parity pieces of the spinor ideal of W.
CheckResult moritaCheck(const QuadraticSpace& space, const std::vector<std::vector<Rational>>& W);

struct SpinorFiberDims {
    size_t dimEvenTensor = 0;
    size_t dimOddTensor = 0;
};

// F (x)_{Cl_even} I_W^even and F (x)_{Cl_even} I_W^odd as coequalizers.
SpinorFiberDims spinorSheafFiber(const FiberInstance<Rational>& fiber, const std::vector<std::vector<Rational>>& W);

// spinorSheafFiber over several frames on a split or split-plus-point form.
// When U is maximal isotropic in an even space the dims are compared per
// connected component.
CheckResult spinorConstancyCheck(const QuadraticSpace& space, size_t k, size_t frames, uint64_t seed);

// Cl^vee (x) Sym^s_SO -> Cl^vee (x) (V^vee (x) Sym^s)_SO is injective on
// diag(0^(n-r), 1^r); also checks the three-family basis of the target.
CheckResult cliffNonCliffCheck(size_t n, int s, size_t r = 0);

// Koszul count of (V (x) Sym^s)_SO against the three-family spanning count.
CheckResult pascalIdentityCheck(int n, int s);

// Four-term complex of Hom-blocks on diag(1^r, 0^(n-r)); parityBit = t mod 2.
CheckResult cliffCliffCheck(size_t n, int parityBit, size_t r = 0);

// Hodge star on Lambda^(m-2)(U^perp / U) for a random isotropic 2-plane in split(m).
CheckResult hodgeStarCheck(size_t m, uint64_t frameSeed);

enum class ResidualParity { Odd, Even };

struct ResidualRecord {
    long hhX2 = 0;
    long hhF1 = 0;
    long hhOGr = 0;
    long collectionCount = 0;
    long hhResidual = 0;
    long sym2CollectionLength = 0;
    long decompositionTotal = 0;
};

ResidualRecord residualAccounting(int m, ResidualParity parity);
CheckResult residualCheck(int m, ResidualParity parity);

// Binomial coefficient, zero when the lower index is negative or exceeds a
// nonnegative upper index.
long binomialOrZero(long top, long bottom);

}  // namespace cliffver
