#include "qindep/qseries.hpp"

#include <algorithm>

#include "qindep/errors.hpp"

namespace qindep {

std::string series_kind_name(SeriesKind k) {
    switch (k) {
        case SeriesKind::Eq: return "eq";
        case SeriesKind::Lq: return "lq";
        case SeriesKind::ZetaQ1: return "zetaq1";
        case SeriesKind::EqP: return "eqp";
        case SeriesKind::Tq: return "tq";
        case SeriesKind::EqM: return "eqm";
    }
    return "?";
}

SeriesKind series_kind_from_name(const std::string& s) {
    if (s == "eq") return SeriesKind::Eq;
    if (s == "lq") return SeriesKind::Lq;
    if (s == "zetaq1") return SeriesKind::ZetaQ1;
    if (s == "eqp") return SeriesKind::EqP;
    if (s == "tq") return SeriesKind::Tq;
    if (s == "eqm") return SeriesKind::EqM;
    throw UsageError("unknown series kind '" + s + "'");
}

SeriesSpec SeriesSpec::numeric(SeriesKind k, FieldPtr f, const ComplexBall& x) {
    SeriesSpec s;
    s.kind = k;
    s.field = std::move(f);
    s.x_ball = x;
    return s;
}

SeriesSpec SeriesSpec::exact(SeriesKind k, FieldPtr f, const FieldElement& x) {
    SeriesSpec s;
    s.kind = k;
    s.field = std::move(f);
    s.x_exact = x;
    return s;
}

FieldElement q_bracket(const FieldPtr& field, unsigned long n) {
    if (n < 1) throw Error("q_bracket: n must be >= 1");
    return FieldElement::generator(field).pow(n) - FieldElement::one(field);
}

FieldElement q_factorial(const FieldPtr& field, unsigned long n) {
    FieldElement acc = FieldElement::one(field);
    for (unsigned long k = 1; k <= n; ++k) acc = acc * q_bracket(field, k);
    return acc;
}

namespace {

/* The six kinds reduce to three denominator families:
 *   Poly:       denom(n) = prod_{t<=n} P(q^t)      (Eq: P=X-1, Tq: P=X, EqP)
 *   Bracket:    denom(n) = q^n - 1                 (Lq, ZetaQ1)
 *   Factorial:  denom(n) = [Mn]_q!                 (EqM)
 * The term at index n of the j-th derivative, times x^j, is
 *   r_j(n) x^{n-j} / denom(n)  with  r_j(n) = n(n-1)...(n-j+1). */
enum class Family { Poly, Bracket, Factorial };

struct Resolved {
    Family family;
    ZPoly P;
    unsigned M = 1;
    unsigned j = 0;
    bool has_constant_term;  // the leading "1 +" of the undifferentiated series
};

Resolved resolve(const SeriesSpec& spec) {
    Resolved r;
    r.j = spec.derivative_order;
    switch (spec.kind) {
        case SeriesKind::Eq:
            r.family = Family::Poly;
            r.P = {-1, 1};
            break;
        case SeriesKind::EqP:
            r.family = Family::Poly;
            r.P = spec.P;
            normalize(r.P);
            if (degree(r.P) < 1)
                throw Error("EqP requires a nonconstant polynomial P");
            break;
        case SeriesKind::Tq:
            r.family = Family::Poly;
            r.P = {0, 1};
            break;
        case SeriesKind::Lq:
        case SeriesKind::ZetaQ1:
            r.family = Family::Bracket;
            break;
        case SeriesKind::EqM:
            r.family = Family::Factorial;
            r.M = spec.progression;
            if (r.M < 1) throw Error("EqM requires M >= 1");
            break;
    }
    r.has_constant_term = (r.family != Family::Bracket);
    return r;
}

// r_j(n) = n (n-1) ... (n-j+1); zero when n < j.
mpz_class falling(unsigned j, unsigned long n) {
    if (n < j) return 0;
    mpz_class acc = 1;
    for (unsigned t = 0; t < j; ++t) acc *= mpz_class(n - t);
    return acc;
}

RealBall abs_q(const FieldPtr& f, Precision prec) {
    return ball_abs(f->roots_at(prec)[0], prec);
}

ComplexBall arg_ball(const SeriesSpec& spec, Precision prec) {
    if (spec.kind == SeriesKind::ZetaQ1) return ComplexBall::exact_int(1, prec);
    if (spec.x_exact) return embed(*spec.x_exact, 1, prec);
    if (spec.x_ball) return *spec.x_ball;
    throw Error("SeriesSpec has no argument");
}

bool is_monomial(const ZPoly& p) {
    for (int i = 0; i < degree(p); ++i)
        if (p[i] != 0) return false;
    return true;
}

/* First t from which |lead| |q|^{tD} > factor * sum of lower-term moduli,
 * certified; beyond it P(q^t) cannot vanish (factor >= 1). */
unsigned long dominance_threshold(const FieldPtr& field, const ZPoly& P, Precision prec,
                                  unsigned long factor) {
    int D = degree(P);
    if (is_monomial(P)) return 1;
    RealBall qa = abs_q(field, prec);
    RealBall qlo = qa.lower_bound(prec);
    RealBall qhi = qa.upper_bound(prec);
    if (!qlo.certainly_gt(RealBall::exact_int(1, prec)))
        throw DomainViolation("series require |q| > 1");
    RealBall lead = RealBall::exact(abs(P[D]), prec);
    for (unsigned long t = 1; t <= 100000; ++t) {
        RealBall lhs = ball_mul(lead, ball_pow_ui(qlo, t * (unsigned long)D, prec), prec);
        RealBall rhs;
        for (int i = 0; i < D; ++i) {
            if (P[i] == 0) continue;
            rhs = ball_add(rhs,
                           ball_mul(RealBall::exact(abs(P[i]), prec),
                                    ball_pow_ui(qhi, t * (unsigned long)i, prec), prec),
                           prec);
        }
        rhs = ball_mul(rhs, RealBall::exact_int((long)factor, prec), prec);
        if (lhs.certainly_gt(rhs)) return t;
    }
    throw PrecisionExhausted("leading-term dominance threshold not found");
}

/* Lower bound, valid for every n > N, of |denom(n+1)| / |denom(n)|. */
RealBall step_lower_bound(const Resolved& r, const SeriesSpec& spec, unsigned long N,
                          Precision prec) {
    RealBall qa = abs_q(spec.field, prec);
    RealBall qlo = qa.lower_bound(prec);
    RealBall qhi = qa.upper_bound(prec);
    RealBall one = RealBall::exact_int(1, prec);
    RealBall lb;
    switch (r.family) {
        case Family::Poly: {
            int D = degree(r.P);
            RealBall lead = RealBall::exact(abs(r.P[D]), prec);
            lb = ball_mul(lead, ball_pow_ui(qlo, (N + 2) * (unsigned long)D, prec), prec);
            if (!is_monomial(r.P)) {
                if (N + 2 <= dominance_threshold(spec.field, r.P, prec, 2))
                    throw ThresholdNotReached("truncation below dominance threshold");
                lb = ball_div(lb, RealBall::exact_int(2, prec), prec);
            }
            break;
        }
        case Family::Bracket: {
            // |[n+1]_q| / |[n]_q| >= (|q|^{n+1} - 1) / (|q|^n + 1), increasing in n
            RealBall num = ball_sub(ball_pow_ui(qlo, N + 2, prec), one, prec);
            RealBall den = ball_add(ball_pow_ui(qhi, N + 1, prec), one, prec);
            if (!num.certainly_positive())
                throw ThresholdNotReached("bracket step not yet positive");
            lb = ball_div(num, den, prec);
            break;
        }
        case Family::Factorial: {
            // prod over t in (Mn, M(n+1)] of (|q|^t - 1) at n = N+1; each
            // factor only grows with n
            lb = one;
            for (unsigned long t = (unsigned long)r.M * (N + 1) + 1;
                 t <= (unsigned long)r.M * (N + 2); ++t) {
                RealBall f = ball_sub(ball_pow_ui(qlo, t, prec), one, prec);
                if (!f.certainly_positive())
                    throw ThresholdNotReached("factorial step not yet positive");
                lb = ball_mul(lb, f, prec);
            }
            break;
        }
    }
    lb = lb.lower_bound(prec);
    if (!lb.certainly_positive())
        throw ThresholdNotReached("denominator step bound not positive");
    return lb;
}

/* Lower bound on |denom(N+1)|. */
RealBall first_denom_lower_bound(const Resolved& r, const SeriesSpec& spec,
                                 unsigned long N, Precision prec) {
    RealBall qa = abs_q(spec.field, prec);
    RealBall qlo = qa.lower_bound(prec);
    RealBall one = RealBall::exact_int(1, prec);
    RealBall lb = one;
    switch (r.family) {
        case Family::Bracket:
            lb = ball_sub(ball_pow_ui(qlo, N + 1, prec), one, prec);
            break;
        case Family::Poly: {
            ComplexBall qb = spec.field->roots_at(prec)[0];
            ComplexBall qpow = ComplexBall::exact_int(1, prec);
            for (unsigned long t = 1; t <= N + 1; ++t) {
                qpow = ball_mul(qpow, qb, prec);
                RealBall f = ball_abs(poly_eval(r.P, qpow, prec), prec);
                if (!f.certainly_positive())
                    throw ThresholdNotReached("cannot bound P(q^t) away from zero");
                lb = ball_mul(lb, f, prec);
            }
            break;
        }
        case Family::Factorial:
            for (unsigned long t = 1; t <= (unsigned long)r.M * (N + 1); ++t) {
                RealBall f = ball_sub(ball_pow_ui(qlo, t, prec), one, prec);
                if (!f.certainly_positive())
                    throw ThresholdNotReached("cannot bound [t]_q away from zero");
                lb = ball_mul(lb, f, prec);
            }
            break;
    }
    lb = lb.lower_bound(prec);
    if (!lb.certainly_positive())
        throw ThresholdNotReached("first tail denominator bound not positive");
    return lb;
}

} // namespace

unsigned long poly_nonvanishing_threshold(const FieldPtr& field, const ZPoly& P,
                                          Precision prec) {
    ZPoly p = P;
    normalize(p);
    if (degree(p) < 1) throw Error("threshold needs a nonconstant polynomial");
    return dominance_threshold(field, p, prec, 1);
}

RealBall tail_bound(const SeriesSpec& spec, unsigned long N, Precision prec) {
    Resolved r = resolve(spec);
    if (N < r.j) throw ThresholdNotReached("truncation below derivative order");
    RealBall xa = ball_abs(arg_ball(spec, prec), prec).upper_bound(prec);
    if (!xa.certainly_positive()) return RealBall();  // x = 0: empty tail

    // first discarded term
    RealBall num = RealBall::exact(falling(r.j, N + 1), prec);
    num = ball_mul(num, ball_pow_ui(xa, N + 1 - r.j, prec), prec);
    num = ball_div(num, first_denom_lower_bound(r, spec, N, prec), prec);

    // term ratio bound valid for all n > N: r_j growth times the step bound
    RealBall ratio = ball_div(RealBall::exact_int((long)(N + 2), prec),
                              RealBall::exact_int((long)(N + 2 - r.j), prec), prec);
    ratio = ball_mul(ratio, xa, prec);
    ratio = ball_div(ratio, step_lower_bound(r, spec, N, prec), prec);
    ratio = ratio.upper_bound(prec);
    RealBall one = RealBall::exact_int(1, prec);
    if (!ratio.certainly_lt(one))
        throw ThresholdNotReached("geometric majorant ratio not below 1");

    // geometric sum: |t_{N+1}| / (1 - ratio)
    return ball_div(num, ball_sub(one, ratio, prec), prec).upper_bound(prec);
}

unsigned long choose_truncation(const SeriesSpec& spec, unsigned target_bits,
                                Precision prec) {
    Resolved r = resolve(spec);
    mpq_class tq(1);
    tq /= mpz_class(1) << target_bits;
    RealBall target = RealBall::from_rational(tq, Precision(64));
    for (unsigned long N = std::max<unsigned long>(1, r.j); N <= 1000000; ++N) {
        try {
            RealBall t = tail_bound(spec, N, prec);
            if (!t.certainly_gt(target)) return N;
        } catch (const ThresholdNotReached&) {
        }
    }
    throw ThresholdNotReached("no adequate truncation point below 10^6 terms");
}

namespace {

ComplexBall eval_numeric(const SeriesSpec& spec, const Resolved& r, unsigned long N,
                         Precision work) {
    ComplexBall x = arg_ball(spec, work);
    ComplexBall qb = spec.field->roots_at(work)[0];
    ComplexBall one = ComplexBall::exact_int(1, work);
    ComplexBall sum = (r.has_constant_term && r.j == 0) ? one : ComplexBall();

    unsigned long start = std::max<unsigned long>(1, r.j);
    ComplexBall xpow = ball_pow_ui(x, start - r.j, work);
    ComplexBall qpow = one;
    unsigned long qexp = 0;
    auto advance_q = [&](unsigned long upto) {
        for (; qexp < upto; ++qexp) qpow = ball_mul(qpow, qb, work);
    };
    ComplexBall denom = one;
    if (r.family == Family::Poly) {
        for (unsigned long t = 1; t < start; ++t) {
            advance_q(t);
            denom = ball_mul(denom, poly_eval(r.P, qpow, work), work);
        }
    } else if (r.family == Family::Factorial) {
        for (unsigned long t = 1; t <= (unsigned long)r.M * (start - 1); ++t) {
            advance_q(t);
            denom = ball_mul(denom, ball_sub(qpow, one, work), work);
        }
    }

    for (unsigned long n = start; n <= N; ++n) {
        switch (r.family) {
            case Family::Poly:
                advance_q(n);
                denom = ball_mul(denom, poly_eval(r.P, qpow, work), work);
                break;
            case Family::Bracket:
                advance_q(n);
                denom = ball_sub(qpow, one, work);
                break;
            case Family::Factorial:
                for (unsigned t = 0; t < r.M; ++t) {
                    advance_q(qexp + 1);
                    denom = ball_mul(denom, ball_sub(qpow, one, work), work);
                }
                break;
        }
        mpz_class w = falling(r.j, n);
        if (w != 0) {
            ComplexBall term =
                ball_mul(xpow, ComplexBall::from_real(RealBall::exact(w, work)), work);
            sum = ball_add(sum, ball_div(term, denom, work), work);
        }
        xpow = ball_mul(xpow, x, work);
    }
    return sum;
}

ComplexBall eval_exact(const SeriesSpec& spec, const Resolved& r, unsigned long N,
                       Precision prec) {
    const FieldPtr& f = spec.field;
    FieldElement x =
        spec.x_exact ? *spec.x_exact : FieldElement::one(f);  // ZetaQ1 argument
    FieldElement q = FieldElement::generator(f);
    FieldElement one = FieldElement::one(f);
    FieldElement sum = (r.has_constant_term && r.j == 0) ? one : FieldElement::zero(f);

    auto eval_P_at = [&](const FieldElement& v) {
        FieldElement acc = FieldElement::zero(f);
        for (int i = degree(r.P); i >= 0; --i)
            acc = acc * v + FieldElement::from_rational(f, mpq_class(r.P[i]));
        return acc;
    };

    unsigned long start = std::max<unsigned long>(1, r.j);
    FieldElement xpow = x.pow(start - r.j);
    FieldElement qpow = one;
    unsigned long qexp = 0;
    auto advance_q = [&](unsigned long upto) {
        for (; qexp < upto; ++qexp) qpow = qpow * q;
    };
    FieldElement denom = one;
    if (r.family == Family::Poly) {
        for (unsigned long t = 1; t < start; ++t) {
            advance_q(t);
            denom = denom * eval_P_at(qpow);
        }
    } else if (r.family == Family::Factorial) {
        for (unsigned long t = 1; t <= (unsigned long)r.M * (start - 1); ++t) {
            advance_q(t);
            denom = denom * (qpow - one);
        }
    }

    for (unsigned long n = start; n <= N; ++n) {
        switch (r.family) {
            case Family::Poly: {
                advance_q(n);
                FieldElement v = eval_P_at(qpow);
                if (v.is_zero())
                    throw DenominatorVanishes("P(q^" + std::to_string(n) + ") = 0");
                denom = denom * v;
                break;
            }
            case Family::Bracket:
                advance_q(n);
                denom = qpow - one;
                break;
            case Family::Factorial:
                for (unsigned t = 0; t < r.M; ++t) {
                    advance_q(qexp + 1);
                    denom = denom * (qpow - one);
                }
                break;
        }
        mpz_class w = falling(r.j, n);
        if (w != 0)
            sum = sum + xpow * FieldElement::from_rational(f, mpq_class(w)) / denom;
        xpow = xpow * x;
    }
    return embed(sum, 1, prec);
}

} // namespace

ComplexBall eval_series(const SeriesSpec& spec, Precision prec) {
    Resolved r = resolve(spec);
    Precision work(prec.bits + 64);

    RealBall qa = abs_q(spec.field, work);
    if (!qa.lower_bound(work).certainly_gt(RealBall::exact_int(1, work)))
        throw DomainViolation("series require |q| > 1");
    if (spec.kind == SeriesKind::Lq) {
        RealBall xa = ball_abs(arg_ball(spec, work), work);
        if (!xa.certainly_lt(qa.lower_bound(work)))
            throw DomainViolation("L_q requires |x| < |q|");
    }
    if (spec.kind == SeriesKind::EqP) {
        // exact finite check of P(q^t) != 0 up to the dominance threshold
        unsigned long t0 = poly_nonvanishing_threshold(spec.field, r.P, work);
        FieldElement q = FieldElement::generator(spec.field);
        for (unsigned long t = 1; t <= t0; ++t) {
            FieldElement qt = q.pow(t);
            FieldElement v = FieldElement::zero(spec.field);
            for (int i = degree(r.P); i >= 0; --i)
                v = v * qt + FieldElement::from_rational(spec.field, mpq_class(r.P[i]));
            if (v.is_zero())
                throw DenominatorVanishes("P(q^" + std::to_string(t) + ") = 0");
        }
    }

    unsigned long N = choose_truncation(spec, prec.bits, work);
    RealBall tail = tail_bound(spec, N, work);
    bool exact_mode = spec.x_exact.has_value() ||
                      (spec.kind == SeriesKind::ZetaQ1 && !spec.x_ball);
    ComplexBall sum =
        exact_mode ? eval_exact(spec, r, N, work) : eval_numeric(spec, r, N, work);
    // widen both components by the tail modulus
    RealBall spread = from_endpoints(ball_neg(tail).mid(), tail.mid(), work);
    return ComplexBall(ball_add(sum.re(), spread, work),
                       ball_add(sum.im(), spread, work));
}

ComplexBall f_j(const SeriesSpec& spec, Precision prec) {
    Resolved r = resolve(spec);
    Precision work(prec.bits + 64);
    ComplexBall x = arg_ball(spec, work);
    ComplexBall lhs = ball_mul(ball_pow_ui(x, r.j, prec), eval_series(spec, prec), prec);

    // re-derive through the other evaluation route (or higher precision when
    // only one route applies) and require overlap
    SeriesSpec alt = spec;
    Precision altp = prec;
    if (alt.x_exact) {
        alt.x_ball = embed(*alt.x_exact, 1, work);
        alt.x_exact.reset();
    } else {
        altp = Precision(prec.bits + 32);
    }
    ComplexBall rhs = ball_mul(ball_pow_ui(x, r.j, altp), eval_series(alt, altp), altp);
    if (!lhs.overlaps(rhs)) throw Error("f_j cross-check failed");
    return lhs;
}

} // namespace qindep
