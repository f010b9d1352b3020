#include "qindep/theorems.hpp"

#include <functional>

#include "qindep/errors.hpp"
#include "qindep/qseries.hpp"

namespace qindep {

std::string theorem_id_name(TheoremId id) {
    switch (id) {
        case TheoremId::Thm1: return "thm1";
        case TheoremId::Cor1_2: return "cor1_2";
        case TheoremId::Cor1_3: return "cor1_3";
        case TheoremId::Cor1_5: return "cor1_5";
        case TheoremId::Thm1_6: return "thm1_6";
    }
    return "?";
}

std::string check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Undecided: return "undecided";
    }
    return "?";
}

namespace {

std::string enclosure_str(const RealBall& b) {
    return b.mid_str(25) + " +- " + b.rad_str();
}

struct IneqOutcome {
    CheckStatus status = CheckStatus::Undecided;
    RealBall margin;  // rhs - lhs at the deciding precision
    std::string evidence;
};

/* Certifies lhs < rhs strictly, laddering precision while the enclosures
 * straddle.  Exact coincident enclosures fail (strictness is violated for
 * certain). */
IneqOutcome decide_strict_lt(
    const std::function<std::pair<RealBall, RealBall>(Precision)>& sides,
    Precision start) {
    IneqOutcome out;
    Precision p = start;
    for (int i = 0; i <= 8; ++i, p = p.doubled()) {
        auto [lhs, rhs] = sides(p);
        out.margin = ball_sub(rhs, lhs, p);
        out.evidence = "lhs=" + enclosure_str(lhs) + " rhs=" + enclosure_str(rhs);
        if (lhs.certainly_lt(rhs)) {
            out.status = CheckStatus::Pass;
            return out;
        }
        if (rhs.certainly_lt(lhs) ||
            (lhs.is_exact() && rhs.is_exact() && lhs.overlaps(rhs))) {
            out.status = CheckStatus::Fail;
            return out;
        }
    }
    out.status = CheckStatus::Undecided;
    return out;
}

CheckResult pv_check_result(const FieldPtr& q, Precision prec) {
    CheckResult c{"pv", CheckStatus::Undecided, ""};
    try {
        PVReport rep = pv_check(q, prec);
        c.status = rep.is_pv ? CheckStatus::Pass : CheckStatus::Fail;
        c.evidence = std::string("sign=") +
                     (rep.sign_convention == PVReport::Plus ? "+" : "-") +
                     " dominant=" + enclosure_str(ball_abs(rep.dominant_root, prec));
    } catch (const Undecidable& e) {
        c.evidence = e.what();
    }
    return c;
}

CheckResult integrality_result(const std::vector<FieldElement>& alphas) {
    CheckResult c{"alphas_integral_nonzero", CheckStatus::Pass, ""};
    for (size_t k = 0; k < alphas.size(); ++k) {
        if (alphas[k].is_zero() || !is_algebraic_integer(alphas[k])) {
            c.status = CheckStatus::Fail;
            c.evidence = "alpha_" + std::to_string(k + 1) +
                         (alphas[k].is_zero() ? " is zero" : " is not integral");
            return c;
        }
    }
    c.evidence = "all " + std::to_string(alphas.size()) + " integral and nonzero";
    return c;
}

RealBall ball_max(const RealBall& a, const RealBall& b, Precision p) {
    RealBall alo = a.lower_bound(p), blo = b.lower_bound(p);
    RealBall ahi = a.upper_bound(p), bhi = b.upper_bound(p);
    mpfr_srcptr lo = mpfr_cmp(alo.mid(), blo.mid()) >= 0 ? alo.mid() : blo.mid();
    mpfr_srcptr hi = mpfr_cmp(ahi.mid(), bhi.mid()) >= 0 ? ahi.mid() : bhi.mid();
    return from_endpoints(lo, hi, p);
}

RealBall abs_q_at(const FieldPtr& q, Precision p) {
    return ball_abs(q->roots_at(p)[0], p);
}

bool aggregate(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        if (c.status != CheckStatus::Pass) return false;
    return true;
}

} // namespace

HypothesisVerdict check_thm1(const FieldPtr& q, const ZPoly& P,
                             const std::vector<FieldElement>& alphas,
                             unsigned /*derivative_bound*/, Precision prec) {
    if (alphas.empty()) throw Error("check_thm1: alphas must be nonempty");
    for (const auto& a : alphas)
        if (a.field()->min_poly() != q->min_poly())
            throw FieldMismatch("alpha not in the given field");
    HypothesisVerdict v;
    v.theorem_id = TheoremId::Thm1;
    v.checks.push_back(pv_check_result(q, prec));
    v.checks.push_back(integrality_result(alphas));

    ZPoly p = P;
    normalize(p);
    CheckResult pc{"p_nonvanishing", CheckStatus::Pass, ""};
    if (degree(p) < 1) {
        pc.status = CheckStatus::Fail;
        pc.evidence = "P is constant";
    } else {
        try {
            unsigned long t0 = poly_nonvanishing_threshold(q, p, prec);
            pc.evidence = "exact check up to t=" + std::to_string(t0);
            FieldElement gen = FieldElement::generator(q);
            for (unsigned long t = 1; t <= t0 && pc.status == CheckStatus::Pass; ++t) {
                FieldElement qt = gen.pow(t);
                FieldElement val = FieldElement::zero(q);
                for (int i = degree(p); i >= 0; --i)
                    val = val * qt + FieldElement::from_rational(q, mpq_class(p[i]));
                if (val.is_zero()) {
                    pc.status = CheckStatus::Fail;
                    pc.evidence = "P(q^" + std::to_string(t) + ") = 0";
                }
            }
        } catch (const DomainViolation& e) {
            pc.status = CheckStatus::Fail;
            pc.evidence = e.what();
        }
    }
    v.checks.push_back(pc);

    // governing inequality
    if (degree(p) >= 1) {
        int D = degree(p);
        int d = 0;
        while (p[d] == 0) ++d;
        mpz_class cd_pow;
        mpz_pow_ui(cd_pow.get_mpz_t(), mpz_class(abs(p[d])).get_mpz_t(),
                   q->degree() >= 1 ? q->degree() - 1 : 0);
        auto sides = [&](Precision pp) {
            RealBall lhs = RealBall::exact(cd_pow, pp);
            RealBall mx;
            for (const auto& a : alphas)
                mx = ball_max(mx, ball_abs(embed(a, 1, pp), pp), pp);
            lhs = ball_mul(lhs, mx, pp);
            for (size_t l = 2; l <= q->degree(); ++l) {
                RealBall inner;
                for (const auto& a : alphas)
                    inner = ball_max(inner, ball_abs(embed(a, l, pp), pp), pp);
                lhs = ball_mul(lhs, ball_max1(inner, pp), pp);
            }
            RealBall rhs = ball_pow_ui(abs_q_at(q, pp), (unsigned long)D, pp);
            return std::make_pair(lhs, rhs);
        };
        IneqOutcome out = decide_strict_lt(sides, prec);
        v.margin = out.margin;
        v.checks.push_back({"size_inequality", out.status, out.evidence});
    } else {
        v.checks.push_back({"size_inequality", CheckStatus::Fail, "P is constant"});
    }

    CheckResult rc{"ratios_not_roots_of_unity", CheckStatus::Pass, ""};
    for (size_t i = 0; i < alphas.size() && rc.status == CheckStatus::Pass; ++i)
        for (size_t j = i + 1; j < alphas.size(); ++j) {
            if (alphas[i].is_zero() || alphas[j].is_zero()) continue;
            if (is_ratio_root_of_unity(alphas[i], alphas[j])) {
                rc.status = CheckStatus::Fail;
                rc.evidence = "alpha_" + std::to_string(i + 1) + "/alpha_" +
                              std::to_string(j + 1) + " is a root of unity";
                break;
            }
        }
    v.checks.push_back(rc);

    v.satisfied = aggregate(v.checks);
    return v;
}

HypothesisVerdict check_cor_eq(const FieldPtr& q,
                               const std::vector<FieldElement>& alphas,
                               unsigned derivative_bound, Precision prec) {
    HypothesisVerdict v = check_thm1(q, ZPoly{-1, 1}, alphas, derivative_bound, prec);
    v.theorem_id = TheoremId::Cor1_2;
    return v;
}

HypothesisVerdict check_cor_irrational(const FieldPtr& q, const FieldElement& alpha,
                                       Precision prec, TheoremId id) {
    if (alpha.field()->min_poly() != q->min_poly())
        throw FieldMismatch("alpha not in the given field");
    HypothesisVerdict v;
    v.theorem_id = id;
    v.checks.push_back(pv_check_result(q, prec));
    v.checks.push_back(integrality_result({alpha}));

    CheckResult pos{"positivity", alpha.is_zero() ? CheckStatus::Fail : CheckStatus::Pass,
                    alpha.is_zero() ? "alpha = 0" : "alpha != 0"};
    v.checks.push_back(pos);

    if (!alpha.is_zero()) {
        // min{1, |alpha|} H_q(alpha) < |q|, with min{1, a} = a / max{1, a}
        auto sides = [&](Precision pp) {
            RealBall aa = ball_abs(embed(alpha, 1, pp), pp);
            RealBall min1 = ball_div(aa, ball_max1(aa, pp), pp);
            RealBall lhs = ball_mul(min1, q_height(alpha, pp), pp);
            return std::make_pair(lhs, abs_q_at(q, pp));
        };
        IneqOutcome out = decide_strict_lt(sides, prec);
        v.margin = out.margin;
        v.checks.push_back({"height_inequality", out.status, out.evidence});
    } else {
        v.checks.push_back({"height_inequality", CheckStatus::Fail, "alpha = 0"});
    }
    v.satisfied = aggregate(v.checks);
    return v;
}

HypothesisVerdict check_thm2(const FieldPtr& q, const FieldElement& alpha,
                             const std::vector<unsigned long>& a_list, Precision prec) {
    if (a_list.empty()) throw NonIncreasingA("a_list must be nonempty");
    for (size_t i = 0; i < a_list.size(); ++i) {
        if (a_list[i] < 1) throw NonIncreasingA("a_list entries must be positive");
        if (i > 0 && a_list[i] <= a_list[i - 1])
            throw NonIncreasingA("a_list must be strictly increasing");
    }
    if (alpha.field()->min_poly() != q->min_poly())
        throw FieldMismatch("alpha not in the given field");

    HypothesisVerdict v;
    v.theorem_id = TheoremId::Thm1_6;
    v.checks.push_back(pv_check_result(q, prec));
    v.checks.push_back(integrality_result({alpha}));

    // |alpha| >= 1, non-strict: exact for rational alpha, else laddered
    CheckResult mod{"alpha_modulus_ge_1", CheckStatus::Undecided, ""};
    if (alpha.is_rational()) {
        mpq_class r = abs(alpha.rational_value());
        mod.status = r >= 1 ? CheckStatus::Pass : CheckStatus::Fail;
        mod.evidence = "|alpha| = " + r.get_str();
    } else {
        Precision pp = prec;
        for (int i = 0; i <= 8; ++i, pp = pp.doubled()) {
            RealBall aa = ball_abs(embed(alpha, 1, pp), pp);
            RealBall one = RealBall::exact_int(1, pp);
            mod.evidence = "|alpha| = " + enclosure_str(aa);
            if (aa.certainly_gt(one)) {
                mod.status = CheckStatus::Pass;
                break;
            }
            if (aa.certainly_lt(one)) {
                mod.status = CheckStatus::Fail;
                break;
            }
        }
    }
    v.checks.push_back(mod);

    auto sides = [&](Precision pp) {
        return std::make_pair(q_height(alpha, pp),
                              ball_pow_ui(abs_q_at(q, pp), a_list[0], pp));
    };
    IneqOutcome out = decide_strict_lt(sides, prec);
    v.margin = out.margin;
    v.checks.push_back({"height_inequality", out.status, out.evidence});

    v.satisfied = aggregate(v.checks);
    return v;
}

} // namespace qindep
