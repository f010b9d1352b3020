#include "qindep/proofkit.hpp"

#include <numeric>

#include "qindep/errors.hpp"

namespace qindep {

mpz_class falling_factorial(unsigned j, unsigned long n) {
    if (j > 0 && n < j) return 0;
    mpz_class acc = 1;
    for (unsigned t = 0; t < j; ++t) acc *= mpz_class(n - t);
    return acc;
}

FieldElement RelationCoeffs::lambda0_tilde() const {
    FieldElement acc = lambda0;
    for (const auto& row : lambdas) {
        if (row.empty()) throw Error("RelationCoeffs: empty lambda row");
        acc = acc + row[0];
    }
    return acc;
}

unsigned RelationCoeffs::derivative_bound() const {
    size_t cols = 0;
    for (const auto& row : lambdas) cols = std::max(cols, row.size());
    return cols > 0 ? (unsigned)cols - 1 : 0;
}

bool RelationCoeffs::all_integral() const {
    if (!is_algebraic_integer(lambda0)) return false;
    for (const auto& row : lambdas)
        for (const auto& e : row)
            if (!is_algebraic_integer(e)) return false;
    return true;
}

FieldElement A_poly(const RelationCoeffs& coeffs, size_t k, unsigned long n) {
    if (k < 1 || k > coeffs.lambdas.size()) throw Error("A_poly: k out of range");
    const auto& row = coeffs.lambdas[k - 1];
    FieldElement acc = FieldElement::zero(coeffs.lambda0.field());
    for (size_t j = 0; j < row.size(); ++j)
        acc = acc + row[j] * FieldElement::from_rational(
                                 row[j].field(), mpq_class(falling_factorial(j, n)));
    return acc;
}

namespace {

FieldElement eval_zpoly(const FieldPtr& f, const ZPoly& p, const FieldElement& x) {
    FieldElement acc = FieldElement::zero(f);
    for (int i = degree(p); i >= 0; --i)
        acc = acc * x + FieldElement::from_rational(f, mpq_class(p[i]));
    return acc;
}

RealBall ball_max(const RealBall& a, const RealBall& b, Precision p) {
    RealBall alo = a.lower_bound(p), blo = b.lower_bound(p);
    RealBall ahi = a.upper_bound(p), bhi = b.upper_bound(p);
    mpfr_srcptr lo = mpfr_cmp(alo.mid(), blo.mid()) >= 0 ? alo.mid() : blo.mid();
    mpfr_srcptr hi = mpfr_cmp(ahi.mid(), bhi.mid()) >= 0 ? ahi.mid() : bhi.mid();
    return from_endpoints(lo, hi, p);
}

void finalize_trace(XNTrace& tr, const FieldPtr& q, Precision prec) {
    tr.norm = norm_exact(tr.xn_exact);
    tr.conj_enclosures.clear();
    for (size_t l = 1; l <= q->degree(); ++l)
        tr.conj_enclosures.push_back(embed(tr.xn_exact, l, prec));
}

} // namespace

XNTrace compute_xn_thm1(const FieldPtr& q, const ZPoly& P,
                        const std::vector<FieldElement>& alphas,
                        const RelationCoeffs& coeffs, unsigned long N,
                        Precision prec) {
    if (N < 1) throw Error("compute_xn_thm1: N must be >= 1");
    if (alphas.empty()) throw Error("compute_xn_thm1: alphas must be nonempty");
    if (coeffs.lambdas.size() != alphas.size())
        throw Error("compute_xn_thm1: one lambda row per alpha required");
    ZPoly p = P;
    normalize(p);
    if (degree(p) < 1) throw Error("compute_xn_thm1: P must be nonconstant");

    FieldElement gen = FieldElement::generator(q);
    // Pq[t] = P(q^t), t = 1..N+1
    std::vector<FieldElement> Pq(N + 2, FieldElement::zero(q));
    FieldElement qpow = FieldElement::one(q);
    for (unsigned long t = 1; t <= N + 1; ++t) {
        qpow = qpow * gen;
        Pq[t] = eval_zpoly(q, p, qpow);
        if (Pq[t].is_zero())
            throw DenominatorVanishes("P(q^" + std::to_string(t) + ") = 0");
    }
    // suffix[n] = prod_{t=n+1}^{N} P(q^t), suffix[N] = 1
    std::vector<FieldElement> suffix(N + 1, FieldElement::one(q));
    for (unsigned long n = N; n >= 1; --n) suffix[n - 1] = Pq[n] * suffix[n];

    FieldElement xn = coeffs.lambda0_tilde() * suffix[0];
    std::vector<FieldElement> apow(alphas.size(), FieldElement::one(q));
    for (unsigned long n = 1; n <= N; ++n) {
        FieldElement inner = FieldElement::zero(q);
        for (size_t k = 0; k < alphas.size(); ++k) {
            apow[k] = apow[k] * alphas[k];
            inner = inner + A_poly(coeffs, k + 1, n) * apow[k];
        }
        xn = xn + inner * suffix[n];
    }

    XNTrace tr;
    tr.N = N;
    tr.xn_exact = xn;
    finalize_trace(tr, q, prec);

    unsigned M = coeffs.derivative_bound();
    // main envelope: (max_k |alpha_k|)^{N+1} / |P(q^{N+1})| * N^M
    RealBall amax;
    for (const auto& a : alphas)
        amax = ball_max(amax, ball_abs(embed(a, 1, prec), prec), prec);
    RealBall main = ball_pow_ui(amax, N + 1, prec);
    main = ball_div(main, ball_abs(embed(Pq[N + 1], 1, prec), prec), prec);
    mpz_class nM;
    mpz_pow_ui(nM.get_mpz_t(), mpz_class((unsigned long)N).get_mpz_t(), M);
    tr.bound_main = ball_mul(main, RealBall::exact(nM, prec), prec);

    // conjugate envelopes: N^{M+2} |c_d|^N (max{1, |sigma_l(alpha_k)|})^N
    int d = 0;
    while (p[d] == 0) ++d;
    mpz_class cdN;
    mpz_pow_ui(cdN.get_mpz_t(), mpz_class(abs(p[d])).get_mpz_t(), N);
    mpz_class nM2;
    mpz_pow_ui(nM2.get_mpz_t(), mpz_class((unsigned long)N).get_mpz_t(), M + 2);
    for (size_t l = 2; l <= q->degree(); ++l) {
        RealBall inner;
        for (const auto& a : alphas)
            inner = ball_max(inner, ball_abs(embed(a, l, prec), prec), prec);
        RealBall b = ball_pow_ui(ball_max1(inner, prec), N, prec);
        b = ball_mul(b, RealBall::exact(cdN, prec), prec);
        tr.bound_conj.push_back(ball_mul(b, RealBall::exact(nM2, prec), prec));
    }
    return tr;
}

ProgressionSetup ProgressionSetup::create(const std::vector<unsigned long>& a) {
    if (a.empty()) throw NonIncreasingA("a_list must be nonempty");
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 1) throw NonIncreasingA("a_list entries must be positive");
        if (i > 0 && a[i] <= a[i - 1])
            throw NonIncreasingA("a_list must be strictly increasing");
    }
    ProgressionSetup s;
    s.a_list = a;
    s.d = 1;
    for (auto v : a) s.d = std::lcm(s.d, v);
    for (auto v : a) s.d_list.push_back(s.d / v);
    s.delta = a.size() >= 2 ? std::min(a[0], a[1] - a[0]) : a[0];
    return s;
}

XNTrace compute_xn_thm2(const FieldPtr& q, const FieldElement& alpha,
                        const ProgressionSetup& setup, const RelationCoeffs& coeffs,
                        unsigned long N, Precision prec) {
    if (N < 1) throw Error("compute_xn_thm2: N must be >= 1");
    size_t k = setup.k();
    if (coeffs.lambdas.size() != k)
        throw Error("compute_xn_thm2: one lambda per progression required");
    for (const auto& row : coeffs.lambdas)
        if (row.size() != 1)
            throw Error("compute_xn_thm2: lambda rows must have a single column");

    FieldElement gen = FieldElement::generator(q);
    FieldElement one = FieldElement::one(q);
    unsigned long dN = setup.d * N;
    unsigned long amax = setup.a_list.back();

    // brackets [t]_q for t = 1..dN+amax and suffix products
    // G[s] = prod_{t=s+1}^{dN} [t]_q, so G[0] = [dN]_q! and G[dN] = 1
    std::vector<FieldElement> bracket(dN + amax + 1, FieldElement::zero(q));
    FieldElement qpow = one;
    for (unsigned long t = 1; t <= dN + amax; ++t) {
        qpow = qpow * gen;
        bracket[t] = qpow - one;
    }
    std::vector<FieldElement> G(dN + 1, one);
    for (unsigned long s = dN; s >= 1; --s) G[s - 1] = bracket[s] * G[s];

    // factorial-quotient identity, exact, for every progression:
    // [a_i (N_i+1)]_q! = [dN]_q! (q^{dN+1}-1)...(q^{dN+a_i}-1), where the
    // left side is recomputed as a forward product and [dN]_q! comes from
    // the suffix-product table
    for (size_t i = 0; i < k; ++i) {
        FieldElement lhs = one;
        for (unsigned long t = 1; t <= dN + setup.a_list[i]; ++t)
            lhs = lhs * bracket[t];
        FieldElement rhs = G[0];
        for (unsigned long t = dN + 1; t <= dN + setup.a_list[i]; ++t)
            rhs = rhs * bracket[t];
        if (!(lhs == rhs)) throw Error("factorial-quotient identity failed");
    }

    FieldElement xn = coeffs.lambda0_tilde() * G[0];
    for (size_t i = 0; i < k; ++i) {
        FieldElement s = FieldElement::zero(q);
        FieldElement apow = one;
        unsigned long Ni = setup.N_i(i, N);
        for (unsigned long n = 1; n <= Ni; ++n) {
            apow = apow * alpha;
            s = s + apow * G[setup.a_list[i] * n];
        }
        xn = xn + coeffs.lambdas[i][0] * s;
    }

    XNTrace tr;
    tr.N = N;
    tr.xn_exact = xn;
    finalize_trace(tr, q, prec);

    // main envelope: (|alpha|^{d_1} / |q|^{a_1 d})^N
    RealBall aa = ball_abs(embed(alpha, 1, prec), prec);
    RealBall qq = ball_abs(q->roots_at(prec)[0], prec);
    RealBall ratio = ball_div(ball_pow_ui(aa, setup.d_list[0], prec),
                              ball_pow_ui(qq, setup.a_list[0] * setup.d, prec), prec);
    tr.bound_main = ball_pow_ui(ratio, N, prec);

    // conjugate envelopes: N_1 (max{1, |sigma_l(alpha)|})^{N_1}
    unsigned long N1 = setup.N_i(0, N);
    for (size_t l = 2; l <= q->degree(); ++l) {
        RealBall m = ball_max1(ball_abs(embed(alpha, l, prec), prec), prec);
        tr.bound_conj.push_back(
            ball_mul(ball_pow_ui(m, N1, prec),
                     RealBall::exact(mpz_class(N1), prec), prec));
    }
    return tr;
}

std::vector<EliminationTerm> elimination_terms(const FieldPtr& q,
                                               const FieldElement& alpha,
                                               const ProgressionSetup& setup,
                                               const RelationCoeffs& coeffs,
                                               unsigned long N, Precision prec) {
    if (N < 1) throw Error("elimination_terms: N must be >= 1");
    size_t k = setup.k();
    if (coeffs.lambdas.size() != k)
        throw Error("elimination_terms: one lambda per progression required");

    FieldElement gen = FieldElement::generator(q);
    FieldElement one = FieldElement::one(q);
    unsigned long dN = setup.d * N;
    unsigned long dk = setup.d_list.back();
    unsigned long a1 = setup.a_list[0];

    // brackets [t]_q for t up to dN + d
    std::vector<FieldElement> bracket(dN + setup.d + 1, FieldElement::zero(q));
    FieldElement qpow = one;
    for (unsigned long t = 1; t <= dN + setup.d; ++t) {
        qpow = qpow * gen;
        bracket[t] = qpow - one;
    }

    // shared decay envelope (|alpha|^{d_1 - d_k} / |q|^{delta d})^N
    RealBall aa = ball_abs(embed(alpha, 1, prec), prec);
    RealBall qq = ball_abs(q->roots_at(prec)[0], prec);
    RealBall env = ball_div(ball_pow_ui(aa, setup.d_list[0] - dk, prec),
                            ball_pow_ui(qq, setup.delta * setup.d, prec), prec);
    env = ball_pow_ui(env, N, prec);

    std::vector<EliminationTerm> out;
    for (size_t j = 1; j <= k; ++j) {
        unsigned long dj = setup.d_list[j - 1];
        unsigned long aj = setup.a_list[j - 1];
        for (unsigned long l = 0; l < dj; ++l) {
            EliminationTerm t;
            t.j = j;
            t.l = l;
            t.leading = (j == 1 && l == 0);
            FieldElement num = alpha.pow(N * (dj - dk) + l);
            FieldElement den = one;
            for (unsigned long s = dN + a1 + 1; s <= dN + (l + 1) * aj; ++s)
                den = den * bracket[s];
            t.value_exact = num / den;
            t.weighted_exact = coeffs.lambdas[j - 1][0] * t.value_exact;
            t.value = embed(t.value_exact, 1, prec);
            t.envelope = env;
            out.push_back(std::move(t));
        }
    }
    return out;
}

std::string dichotomy_class_name(DichotomyClass c) {
    switch (c) {
        case DichotomyClass::IdenticallyZeroTail: return "identically-zero-tail";
        case DichotomyClass::Growing: return "growing";
        case DichotomyClass::Inconclusive: return "inconclusive";
    }
    return "?";
}

DichotomyReport norm_dichotomy_scan(
    const std::function<XNTrace(unsigned long)>& source, unsigned long n_lo,
    unsigned long n_hi) {
    if (n_lo < 1 || n_hi < n_lo) throw Error("norm_dichotomy_scan: bad range");
    DichotomyReport rep;
    for (unsigned long N = n_lo; N <= n_hi; ++N) {
        XNTrace tr = source(N);
        DichotomyEntry e;
        e.N = N;
        e.norm = tr.norm;
        e.forced_zero = (abs(tr.norm) < 1);
        rep.entries.push_back(e);
    }
    bool tail_zero = rep.entries.back().norm == 0;
    bool growing = true, any_zero = false;
    for (size_t i = 0; i < rep.entries.size(); ++i) {
        if (rep.entries[i].norm == 0) any_zero = true;
        if (i > 0 && !(abs(rep.entries[i].norm) > abs(rep.entries[i - 1].norm)))
            growing = false;
    }
    if (tail_zero) {
        // zero tail: once zero, stays zero through the scanned range
        bool seen_zero = false, consistent = true;
        for (const auto& e : rep.entries) {
            if (e.norm == 0) seen_zero = true;
            else if (seen_zero) consistent = false;
        }
        rep.classification = consistent ? DichotomyClass::IdenticallyZeroTail
                                        : DichotomyClass::Inconclusive;
    } else if (growing && !any_zero) {
        rep.classification = DichotomyClass::Growing;
    } else {
        rep.classification = DichotomyClass::Inconclusive;
    }
    return rep;
}

} // namespace qindep
