#ifndef QINDEP_PROOFKIT_HPP
#define QINDEP_PROOFKIT_HPP

#include <functional>
#include <string>
#include <vector>

#include "qindep/numberfield.hpp"

namespace qindep {

// r_j(n) = n (n-1) ... (n-j+1); r_0 = 1; zero for n < j.
mpz_class falling_factorial(unsigned j, unsigned long n);

/* Coefficients of a candidate linear relation.  lambdas[k-1][j] multiplies
 * the j-th derivative value at the k-th point; the single-progression
 * machinery uses one column (j = 0).  lambda0_tilde folds the constant terms
 * of the series into lambda0. */
struct RelationCoeffs {
    FieldElement lambda0;
    std::vector<std::vector<FieldElement>> lambdas;

    FieldElement lambda0_tilde() const;  // lambda0 + sum_k lambdas[k][0]
    unsigned derivative_bound() const;   // M (columns - 1)
    bool all_integral() const;
};

// A_k(n) = sum_j lambdas[k-1][j] r_j(n), exact; k is 1-based.
FieldElement A_poly(const RelationCoeffs& coeffs, size_t k, unsigned long n);

/* One exact truncation datum: the algebraic integer X_N, enclosures of all
 * its conjugates, its exact norm, and the predicted growth/decay envelopes
 * (evaluated with constant 1; the true bounds hold up to a constant). */
struct XNTrace {
    unsigned long N = 0;
    FieldElement xn_exact;
    std::vector<ComplexBall> conj_enclosures;
    mpq_class norm;
    RealBall bound_main;
    std::vector<RealBall> bound_conj;  // one per conjugate embedding l >= 2
};

/* X_N = lambda0_tilde prod_{t<=N} P(q^t)
 *       + sum_{n<=N} (sum_k A_k(n) alpha_k^n) prod_{n<t<=N} P(q^t),
 * exact.  Exploratory: hypotheses need not hold.  Throws DenominatorVanishes
 * when some P(q^t) = 0 for t <= N+1. */
XNTrace compute_xn_thm1(const FieldPtr& q, const ZPoly& P,
                        const std::vector<FieldElement>& alphas,
                        const RelationCoeffs& coeffs, unsigned long N,
                        Precision prec = kDefaultPrec);

/* Progressions a_1 < ... < a_k with d = lcm, d_i = d / a_i, so that
 * a_i (N d_i) = dN for every i; delta = min{a_1, a_2 - a_1} (a_1 when k=1). */
struct ProgressionSetup {
    std::vector<unsigned long> a_list;
    std::vector<unsigned long> d_list;
    unsigned long d = 1;
    unsigned long delta = 1;

    static ProgressionSetup create(const std::vector<unsigned long>& a);
    size_t k() const { return a_list.size(); }
    unsigned long N_i(size_t i, unsigned long N) const { return N * d_list[i]; }
};

/* X_N = [dN]_q! (lambda0_tilde + sum_i lambda_i sum_{n<=N_i} alpha^n/[a_i n]_q!),
 * exact; lambdas must be k rows of one column.  Internally asserts the
 * factorial-quotient identity
 * [a_i (N_i+1)]_q! = [dN]_q! (q^{dN+1}-1)...(q^{dN+a_i}-1). */
XNTrace compute_xn_thm2(const FieldPtr& q, const FieldElement& alpha,
                        const ProgressionSetup& setup, const RelationCoeffs& coeffs,
                        unsigned long N, Precision prec = kDefaultPrec);

/* One term of the factored eliminated relation: for progression j and offset
 * 0 <= l < d_j,
 *   value = alpha^{N(d_j - d_k) + l} / prod_{t=Nd+a_1+1}^{Nd+(l+1)a_j} (q^t - 1)
 * (empty product for j=1, l=0: the leading term alpha^{N(d_1-d_k)}).
 * envelope is the predicted decay (|alpha|^{d_1-d_k}/|q|^{delta d})^N with
 * constant 1; it governs every non-leading term. */
struct EliminationTerm {
    size_t j = 1;  // 1-based progression index
    unsigned long l = 0;
    bool leading = false;
    FieldElement value_exact;    // without the lambda_j multiplier
    FieldElement weighted_exact; // lambda_j * value_exact
    ComplexBall value;           // distinguished embedding of value_exact
    RealBall envelope;
};

std::vector<EliminationTerm> elimination_terms(const FieldPtr& q,
                                               const FieldElement& alpha,
                                               const ProgressionSetup& setup,
                                               const RelationCoeffs& coeffs,
                                               unsigned long N,
                                               Precision prec = kDefaultPrec);

enum class DichotomyClass { IdenticallyZeroTail, Growing, Inconclusive };
std::string dichotomy_class_name(DichotomyClass c);

struct DichotomyEntry {
    unsigned long N = 0;
    mpq_class norm;
    bool forced_zero = false;  // |norm| < 1 forces X_N = 0 (integer norms)
};

struct DichotomyReport {
    DichotomyClass classification = DichotomyClass::Inconclusive;
    std::vector<DichotomyEntry> entries;
};

/* Scans N in [n_lo, n_hi] through a trace source and classifies the exact
 * norm trajectory: all zero past some point, strictly growing in magnitude,
 * or neither. */
DichotomyReport norm_dichotomy_scan(
    const std::function<XNTrace(unsigned long)>& source, unsigned long n_lo,
    unsigned long n_hi);

} // namespace qindep

#endif
