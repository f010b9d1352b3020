#include "qindep/relations.hpp"

#include <algorithm>

#include "qindep/errors.hpp"

namespace qindep {

namespace {

mpq_class to_mpq(mpfr_srcptr x) {
    mpq_class r;
    if (mpfr_zero_p(x)) return r;
    mpfr_get_q(r.get_mpq_t(), x);
    return r;
}

mpz_class round_nearest(const mpq_class& x) {
    mpq_class y = x + mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), y.get_num().get_mpz_t(), y.get_den().get_mpz_t());
    return r;
}

mpq_class dot(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    mpq_class s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct GSData {
    std::vector<std::vector<mpq_class>> mu;  // mu[i][j], j < i
    std::vector<mpq_class> B;                // squared Gram-Schmidt norms
};

GSData gram_schmidt(const IntMatrix& b) {
    size_t n = b.size(), m = b.empty() ? 0 : b[0].size();
    GSData gs;
    gs.mu.assign(n, {});
    gs.B.assign(n, 0);
    std::vector<std::vector<mpq_class>> star(n, std::vector<mpq_class>(m));
    for (size_t i = 0; i < n; ++i) {
        for (size_t c = 0; c < m; ++c) star[i][c] = mpq_class(b[i][c]);
        gs.mu[i].assign(i, 0);
        for (size_t j = 0; j < i; ++j) {
            std::vector<mpq_class> row(m);
            for (size_t c = 0; c < m; ++c) row[c] = mpq_class(b[i][c]);
            gs.mu[i][j] = dot(row, star[j]) / gs.B[j];
            for (size_t c = 0; c < m; ++c) star[i][c] -= gs.mu[i][j] * star[j][c];
        }
        gs.B[i] = dot(star[i], star[i]);
        if (gs.B[i] == 0) throw DegenerateBasis("linearly dependent basis rows");
    }
    return gs;
}

// in-place LLL, returns the final Gram-Schmidt data
GSData lll_inplace(IntMatrix& b) {
    size_t n = b.size();
    if (n == 0) throw DegenerateBasis("empty basis");
    for (const auto& row : b)
        if (row.size() != b[0].size()) throw Error("lll: ragged matrix");
    const mpq_class delta(99, 100), half(1, 2);
    GSData gs = gram_schmidt(b);
    size_t k = 1;
    while (k < n) {
        for (size_t jj = k; jj-- > 0;) {
            if (abs(gs.mu[k][jj]) > half) {
                mpz_class r = round_nearest(gs.mu[k][jj]);
                for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= r * b[jj][c];
                gs = gram_schmidt(b);
            }
        }
        mpq_class lhs = gs.B[k];
        mpq_class rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.B[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gs = gram_schmidt(b);
            k = k > 1 ? k - 1 : 1;
        }
    }
    return gs;
}

std::vector<ComplexBall> expand_values(const std::vector<ComplexBall>& vals,
                                       const FieldPtr& field, Precision prec) {
    if (!field || field->degree() <= 1) return vals;
    ComplexBall q = field->roots_at(prec)[0];
    std::vector<ComplexBall> out;
    for (const auto& v : vals) {
        ComplexBall acc = v;
        for (size_t b = 0; b < field->degree(); ++b) {
            out.push_back(acc);
            acc = ball_mul(acc, q, prec);
        }
    }
    return out;
}

mpq_class max_radius(const std::vector<ComplexBall>& vals) {
    mpq_class r = 0;
    for (const auto& v : vals) {
        r = std::max(r, to_mpq(v.re().rad()));
        r = std::max(r, to_mpq(v.im().rad()));
    }
    return r;
}

} // namespace

IntMatrix lll_reduce(const IntMatrix& basis) {
    IntMatrix b = basis;
    lll_inplace(b);
    return b;
}

RealBall verify_relation(const std::vector<ComplexBall>& values,
                         const std::vector<mpz_class>& coefficients, Precision prec) {
    if (values.size() != coefficients.size())
        throw Error("verify_relation: length mismatch");
    ComplexBall sum;
    for (size_t i = 0; i < values.size(); ++i) {
        if (coefficients[i] == 0) continue;
        ComplexBall c = ComplexBall::from_real(RealBall::exact(coefficients[i], prec));
        sum = ball_add(sum, ball_mul(c, values[i], prec), prec);
    }
    return ball_abs(sum, prec);
}

RelationResult find_relation(const RelationQuery& query) {
    if (query.values.empty()) throw Error("find_relation: no values");
    if (query.max_height < 1) throw Error("find_relation: max_height must be >= 1");
    Precision prec = query.precision;

    mpq_class rad_cap(mpz_class(1) << 16, mpz_class(1) << prec.bits);
    if (max_radius(query.values) > rad_cap)
        throw PrecisionTooLow("value radii exceed 2^{-precision+16}");

    std::vector<ComplexBall> vals = expand_values(query.values, query.field, prec);
    size_t n = vals.size();
    bool use_imag = false;
    for (const auto& v : vals)
        if (!v.certainly_real()) use_imag = true;

    mpz_class scale = mpz_class(1) << (prec.bits - 16);
    IntMatrix lat(n, std::vector<mpz_class>(n + 1 + (use_imag ? 1 : 0), 0));
    for (size_t i = 0; i < n; ++i) {
        lat[i][i] = 1;
        lat[i][n] = round_nearest(mpq_class(scale) * to_mpq(vals[i].re().mid()));
        if (use_imag)
            lat[i][n + 1] = round_nearest(mpq_class(scale) * to_mpq(vals[i].im().mid()));
    }

    IntMatrix red = lat;
    GSData gs = lll_inplace(red);

    // candidate: shortest reduced row with a nonzero coefficient part
    size_t best = red.size();
    mpz_class best_norm;
    for (size_t i = 0; i < red.size(); ++i) {
        bool nonzero = false;
        for (size_t c = 0; c < n; ++c)
            if (red[i][c] != 0) nonzero = true;
        if (!nonzero) continue;
        mpz_class norm = 0;
        for (const auto& v : red[i]) norm += v * v;
        if (best == red.size() || norm < best_norm) {
            best = i;
            best_norm = norm;
        }
    }

    RelationResult res;

    // certificate: a true relation c (height H) maps to the lattice vector
    // sum c_i row_i whose last column(s) are bounded by n H (scale rad + 1/2),
    // so |v|^2 <= H^2 (n + 2 n^2 (scale rad + 1/2)^2); any nonzero lattice
    // vector has |v|^2 >= min_i B_i
    {
        mpq_class g2 = gs.B[0];
        for (const auto& bi : gs.B) g2 = std::min(g2, bi);
        mpq_class slack = mpq_class(scale) * max_radius(vals) + mpq_class(1, 2);
        mpq_class denom = mpq_class((unsigned long)n) +
                          2 * mpq_class((unsigned long)(n * n)) * slack * slack;
        mpq_class h2 = g2 / denom;
        mpz_class floor_h2;
        mpz_fdiv_q(floor_h2.get_mpz_t(), h2.get_num().get_mpz_t(),
                   h2.get_den().get_mpz_t());
        if (floor_h2 < 0) floor_h2 = 0;
        mpz_sqrt(res.certified_height_bound.get_mpz_t(), floor_h2.get_mpz_t());
    }

    if (best < red.size()) {
        std::vector<mpz_class> cand(red[best].begin(), red[best].begin() + n);
        mpz_class height = 0;
        for (const auto& c : cand) height = std::max(height, mpz_class(abs(c)));
        if (height <= query.max_height) {
            Precision vp(prec.bits * 2);
            std::vector<ComplexBall> fresh =
                query.reevaluate ? expand_values(query.reevaluate(vp), query.field, vp)
                                 : vals;
            RealBall resid = verify_relation(fresh, cand, vp);
            mpq_class thr(1, mpz_class(1) << (prec.bits / 2));
            if (resid.upper_bound(vp).certainly_lt(RealBall::from_rational(thr, vp))) {
                res.status = RelationStatus::RelationFound;
                res.coefficients = std::move(cand);
                res.residual = resid;
                if (query.field && query.field->degree() > 1) {
                    size_t nq = query.field->degree();
                    for (size_t i = 0; i < query.values.size(); ++i)
                        res.field_coefficients.emplace_back(
                            res.coefficients.begin() + (long)(i * nq),
                            res.coefficients.begin() + (long)((i + 1) * nq));
                }
                return res;
            }
            res.residual = resid;
        }
    }
    res.status = RelationStatus::NoneBelowHeight;
    return res;
}

} // namespace qindep
