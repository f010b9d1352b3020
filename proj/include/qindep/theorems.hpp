#ifndef QINDEP_THEOREMS_HPP
#define QINDEP_THEOREMS_HPP

#include <string>
#include <vector>

#include "qindep/numberfield.hpp"

namespace qindep {

enum class TheoremId { Thm1, Cor1_2, Cor1_3, Cor1_5, Thm1_6 };
std::string theorem_id_name(TheoremId id);

enum class CheckStatus { Pass, Fail, Undecided };
std::string check_status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Undecided;
    std::string evidence;  // decimal enclosures or exact facts backing the status
};

/* Outcome of a hypothesis check.  satisfied is true only when every
 * individual check certifiably passed; strict inequalities are decided by
 * disjoint enclosures (with precision laddering), never by midpoints.
 * margin encloses rhs - lhs of the governing inequality. */
struct HypothesisVerdict {
    TheoremId theorem_id = TheoremId::Thm1;
    bool satisfied = false;
    std::vector<CheckResult> checks;
    RealBall margin;
};

/* Hypotheses for linear independence of the derivative values
 * E^{(j)}(alpha_k): +-q PV, each alpha_k a nonzero algebraic integer,
 * P(q^t) != 0 for all t >= 1, the size inequality
 *   |c_d|^{n_q - 1} max_k |alpha_k| prod_{l>=2} max{1, |sigma_l(alpha_k)|}
 *     < |q|^D,
 * and no ratio alpha_i / alpha_j a root of unity.  derivative_bound is
 * carried for reporting; the hypotheses do not depend on it. */
HypothesisVerdict check_thm1(const FieldPtr& q, const ZPoly& P,
                             const std::vector<FieldElement>& alphas,
                             unsigned derivative_bound, Precision prec);

// Same hypotheses specialized to P = X - 1.
HypothesisVerdict check_cor_eq(const FieldPtr& q,
                               const std::vector<FieldElement>& alphas,
                               unsigned derivative_bound, Precision prec);

/* Irrationality hypotheses for E_q(alpha), L_q(alpha) (and the Tschakaloff
 * variant, selected by id): 0 < min{1, |alpha|} H_q(alpha) < |q|. */
HypothesisVerdict check_cor_irrational(const FieldPtr& q, const FieldElement& alpha,
                                       Precision prec,
                                       TheoremId id = TheoremId::Cor1_3);

/* Hypotheses for independence along progressions a_1 < ... < a_k:
 * +-q PV, alpha integral with |alpha| >= 1, H_q(alpha) < |q|^{a_1}.
 * Throws NonIncreasingA unless a_list is strictly increasing and positive. */
HypothesisVerdict check_thm2(const FieldPtr& q, const FieldElement& alpha,
                             const std::vector<unsigned long>& a_list, Precision prec);

} // namespace qindep

#endif
