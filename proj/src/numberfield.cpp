#include "qindep/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <vector>

#include "qindep/errors.hpp"

namespace qindep {

namespace {

RealBall exact_point(const RealBall& b, Precision prec) {
    // drop the radius, keeping the midpoint as an approximation point
    return b.lower_bound(prec);
}

ComplexBall exact_point(const ComplexBall& z, Precision prec) {
    return ComplexBall(exact_point(z.re(), prec), exact_point(z.im(), prec));
}

RealBall with_radius(const RealBall& mid_exact, const RealBall& rad_ub, Precision prec) {
    RealBall lo = ball_sub(mid_exact, rad_ub, prec).lower_bound(prec);
    RealBall hi = ball_add(mid_exact, rad_ub, prec).upper_bound(prec);
    return from_endpoints(lo.mid(), hi.mid(), prec);
}

/* Durand-Kerner in double precision for starting approximations. */
std::vector<std::complex<double>> dk_approximations(const ZPoly& p) {
    int n = degree(p);
    std::vector<std::complex<double>> c(n + 1);
    double lead = p[n].get_d();
    for (int i = 0; i <= n; ++i) c[i] = p[i].get_d() / lead;
    double radius = 1.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
    radius += 1.0;

    std::vector<std::complex<double>> z(n);
    for (int i = 0; i < n; ++i) {
        double theta = 2.0 * M_PI * (i + 0.25) / n + 0.4;
        z[i] = radius * std::complex<double>(std::cos(theta), std::sin(theta));
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> acc = 0;
        for (int i = n; i >= 0; --i) acc = acc * x + c[i];
        return acc;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            if (denom == std::complex<double>(0, 0)) denom = 1e-30;
            std::complex<double> step = eval(z[i]) / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-14 * radius) break;
    }
    return z;
}

struct Disk {
    ComplexBall center;  // exact dyadic point
    RealBall radius;     // upper bound, exact value
};

/* Distance to the nearest root of p from the exact point z is at most
 * n |p(z)/p'(z)| (from p'/p = sum 1/(z - r_j)).  Returns empty when p'(z)
 * cannot be bounded away from zero. */
std::optional<RealBall> nearest_root_radius(const ZPoly& p, const ZPoly& pd,
                                            const ComplexBall& z, Precision prec) {
    ComplexBall fv = poly_eval(p, z, prec);
    ComplexBall fd = poly_eval(pd, z, prec);
    RealBall den = ball_abs(fd, prec);
    if (den.contains_zero()) return std::nullopt;
    RealBall num = ball_abs(fv, prec).upper_bound(prec);
    RealBall rho = ball_div(num, den.lower_bound(prec), prec);
    rho = ball_mul(rho, RealBall::exact_int(degree(p), prec), prec);
    return rho.upper_bound(prec);
}

ComplexBall newton_refine(const ZPoly& p, const ZPoly& pd, ComplexBall z,
                          Precision prec, int iters) {
    for (int i = 0; i < iters; ++i) {
        ComplexBall fv = poly_eval(p, z, prec);
        ComplexBall fd = poly_eval(pd, z, prec);
        RealBall mag = ball_abs(fd, prec);
        if (mag.contains_zero()) break;
        ComplexBall step = ball_div(fv, fd, prec);
        z = exact_point(ball_sub(z, step, prec), prec);
    }
    return z;
}

bool disks_disjoint(const Disk& a, const Disk& b, Precision prec) {
    RealBall dist = ball_abs(ball_sub(a.center, b.center, prec), prec);
    RealBall sum = ball_add(a.radius, b.radius, prec);
    return dist.certainly_gt(sum);
}

bool disks_certainly_apart(const ComplexBall& ca, const RealBall& ra, const Disk& b,
                           Precision prec) {
    RealBall dist = ball_abs(ball_sub(ca, b.center, prec), prec);
    RealBall sum = ball_add(ra, b.radius, prec);
    return dist.certainly_gt(sum);
}

/* One isolation attempt at a fixed working precision. */
std::optional<std::vector<ComplexBall>> try_isolate(const ZPoly& p, Precision out_prec,
                                                    Precision work) {
    int n = degree(p);
    ZPoly pd = poly_derivative(p);
    auto approx = dk_approximations(p);

    int newton_iters = 4 + (int)std::ceil(std::log2((double)work.bits / 40.0 + 2.0));
    std::vector<Disk> disks;
    for (auto zd : approx) {
        ComplexBall z(RealBall::from_decimal(std::to_string(zd.real()), work),
                      RealBall::from_decimal(std::to_string(zd.imag()), work));
        z = exact_point(z, work);
        z = newton_refine(p, pd, z, work, newton_iters);
        auto rho = nearest_root_radius(p, pd, z, work);
        if (!rho) return std::nullopt;
        disks.push_back({z, *rho});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!disks_disjoint(disks[i], disks[j], work)) return std::nullopt;

    // Each disk holds >= 1 root; n pairwise disjoint disks and n roots force
    // exactly one root per disk.  Now pin down which disks hold real roots:
    // a disk is real iff it meets the real axis and its mirror image meets no
    // other disk (the conjugate of its root is again a root).
    std::vector<ComplexBall> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        RealBall im_abs = ball_abs(disks[i].center.im());
        bool meets_axis = !im_abs.certainly_gt(disks[i].radius);
        if (!meets_axis) {
            out.push_back(ComplexBall(
                with_radius(disks[i].center.re(), disks[i].radius, out_prec),
                with_radius(disks[i].center.im(), disks[i].radius, out_prec)));
            continue;
        }
        ComplexBall mirror(disks[i].center.re(), ball_neg(disks[i].center.im()));
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (!disks_certainly_apart(mirror, disks[i].radius, disks[j], work))
                return std::nullopt;  // ambiguous near-real pair
        }
        // real root: |r - Re(z)| <= rho
        out.push_back(ComplexBall(
            with_radius(disks[i].center.re(), disks[i].radius, out_prec), RealBall()));
    }
    return out;
}

} // namespace

std::vector<ComplexBall> isolate_roots(const ZPoly& p, Precision prec) {
    int n = degree(p);
    if (n < 1) throw RootIsolationFailed("polynomial must be nonconstant");
    if (n == 1) {
        mpq_class r(-p[0], p[1]);
        r.canonicalize();
        return {ComplexBall::from_rational(r, prec)};
    }
    Precision work(std::max(64u, prec.bits) + 64);
    for (int attempt = 0; attempt <= 8; ++attempt) {
        auto r = try_isolate(p, prec, work);
        if (r) return *r;
        work = work.doubled();
    }
    throw RootIsolationFailed("could not certify disjoint root disks for " +
                              poly_to_string(p));
}

namespace {

// ---- irreducibility ----

std::vector<int> subset_sums(const std::vector<int>& degs) {
    std::vector<char> possible(std::accumulate(degs.begin(), degs.end(), 0) + 1, 0);
    possible[0] = 1;
    for (int d : degs)
        for (int s = (int)possible.size() - 1; s >= d; --s)
            if (possible[s - d]) possible[s] = 1;
    std::vector<int> out;
    for (int s = 0; s < (int)possible.size(); ++s)
        if (possible[s]) out.push_back(s);
    return out;
}

/* Complete factor search by reconstructing integer factors from certified
 * complex roots of the monicized polynomial.  Returns reducible/irreducible,
 * or empty when the working precision cannot pin the coefficients. */
std::optional<bool> subset_reducible(const ZPoly& monic, Precision work) {
    int n = degree(monic);
    std::vector<ComplexBall> roots = isolate_roots(monic, work);
    QPoly F = to_qpoly(monic);
    for (unsigned long mask = 1; mask + 1 < (1ul << n); ++mask) {
        int popcount = __builtin_popcountl(mask);
        if (popcount > n / 2) continue;
        if (popcount == n / 2 && !(mask & 1) && n % 2 == 0) continue;  // complements
        // expand prod (x - r_i) over the subset
        std::vector<ComplexBall> coeff = {ComplexBall::exact_int(1, work)};
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1ul << i))) continue;
            std::vector<ComplexBall> next(coeff.size() + 1);
            for (size_t j = 0; j < coeff.size(); ++j) {
                next[j + 1] = coeff[j];
                next[j] = ball_sub(next[j], ball_mul(coeff[j], roots[i], work), work);
            }
            coeff = std::move(next);
        }
        // coeff is low-to-high with exact leading 1
        bool rejected = false;
        ZPoly cand(coeff.size());
        for (size_t j = 0; j < coeff.size() && !rejected; ++j) {
            if (!coeff[j].im().contains_zero()) {
                rejected = true;
                break;
            }
            std::optional<mpz_class> z;
            try {
                z = enclosure_contains_integer(coeff[j].re());
            } catch (const AmbiguousEnclosure&) {
                return std::nullopt;
            }
            if (!z) rejected = true;
            else cand[j] = *z;
        }
        if (rejected) continue;
        auto [q, r] = poly_divrem(F, to_qpoly(cand));
        (void)q;
        if (degree(r) < 0) return true;  // genuine factor
    }
    return false;
}

bool is_irreducible(const ZPoly& p) {
    int n = degree(p);
    if (n <= 0) return false;
    if (n == 1) return true;
    if (!poly_is_squarefree(p)) return false;
    if (!rational_roots(p).empty()) return false;
    if (n == 2 || n == 3) return true;  // no rational root and squarefree

    static const unsigned long primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    std::vector<int> feasible;  // degrees a proper factor could have
    for (int d = 1; d < n; ++d) feasible.push_back(d);
    for (unsigned long pr : primes) {
        auto degs = factor_degrees_mod_p(p, pr);
        if (degs.empty()) continue;
        auto sums = subset_sums(degs);
        std::vector<int> next;
        for (int d : feasible)
            if (std::find(sums.begin(), sums.end(), d) != sums.end()) next.push_back(d);
        feasible = std::move(next);
        if (feasible.empty()) return true;  // mod-p patterns force irreducibility
    }

    if (n > 12)
        throw Undecidable("irreducibility undecided for degree > 12 with inconclusive "
                          "mod-p factor patterns");

    // monicize: G(y) = lc^{n-1} p(y/lc) has coefficient p_i lc^{n-1-i} at y^i
    // and leading coefficient 1; G is reducible over Q iff p is.
    mpz_class lc = p[n];
    ZPoly monic(n + 1);
    monic[n] = 1;
    mpz_class pw = 1;
    for (int i = n - 1; i >= 0; --i) {
        monic[i] = p[i] * pw;
        pw *= lc;
    }

    Precision work(256);
    for (int attempt = 0; attempt <= 8; ++attempt) {
        auto r = subset_reducible(monic, work);
        if (r) return !*r;
        work = work.doubled();
    }
    throw PrecisionExhausted("irreducibility subset search ran out of precision");
}

bool mid_cmp_desc(const ComplexBall& a, const ComplexBall& b) {
    int c = mpfr_cmp(a.re().mid(), b.re().mid());
    if (c != 0) return c > 0;
    return mpfr_cmp(a.im().mid(), b.im().mid()) > 0;
}

} // namespace

FieldPtr field_create(const ZPoly& min_poly_in, RootSelector sel, Precision prec) {
    ZPoly p = min_poly_in;
    normalize(p);
    if (degree(p) < 1) throw Error("field_create: polynomial must be nonconstant");
    if (p.back() < 0)
        for (auto& c : p) c = -c;
    if (!is_irreducible(p))
        throw ReduciblePolynomial("not irreducible over Q: " + poly_to_string(p));

    auto roots = isolate_roots(p, prec);
    std::sort(roots.begin(), roots.end(), mid_cmp_desc);

    size_t chosen;
    if (sel.kind == RootSelector::MaxReal) {
        std::optional<size_t> best;
        for (size_t i = 0; i < roots.size(); ++i) {
            if (!roots[i].certainly_real()) continue;
            if (!best || mpfr_cmp(roots[i].re().mid(), roots[*best].re().mid()) > 0)
                best = i;
        }
        if (!best)
            throw RootIsolationFailed("no real root to distinguish in " +
                                      poly_to_string(p));
        chosen = *best;
    } else {
        if (sel.index < 1 || sel.index > roots.size())
            throw Error("field_create: root index out of range");
        chosen = sel.index - 1;
    }
    // distinguished root first, remaining in sorted order
    std::rotate(roots.begin(), roots.begin() + chosen, roots.begin() + chosen + 1);

    auto f = std::shared_ptr<NumberField>(new NumberField());
    f->min_poly_ = p;
    f->degree_ = (unsigned)degree(p);
    f->roots_ = std::move(roots);
    f->root_prec_ = prec;
    return f;
}

std::vector<ComplexBall> NumberField::roots_at(Precision prec) const {
    if (prec.bits <= root_prec_.bits) return roots_;
    if (degree_ == 1) {
        mpq_class r(-min_poly_[0], min_poly_[1]);
        r.canonicalize();
        return {ComplexBall::from_rational(r, prec)};
    }
    Precision work(prec.bits + 64);
    ZPoly pd = poly_derivative(min_poly_);
    int iters = 4 + (int)std::ceil(std::log2((double)work.bits / 40.0 + 2.0));
    std::vector<ComplexBall> out;
    for (const auto& old : roots_) {
        ComplexBall z = exact_point(old, work);
        z = newton_refine(min_poly_, pd, z, work, iters);
        auto rho = nearest_root_radius(min_poly_, pd, z, work);
        if (!rho) throw RootIsolationFailed("root refinement lost the root");
        if (old.certainly_real()) {
            out.push_back(ComplexBall(with_radius(z.re(), *rho, prec), RealBall()));
        } else {
            out.push_back(ComplexBall(with_radius(z.re(), *rho, prec),
                                      with_radius(z.im(), *rho, prec)));
        }
    }
    // re-check disjointness and matching against the certified creation disks
    for (size_t i = 0; i < out.size(); ++i) {
        if (!out[i].overlaps(roots_[i]))
            throw RootIsolationFailed("refined root drifted out of its disk");
        for (size_t j = 0; j < out.size(); ++j) {
            if (i == j) continue;
            if (out[i].overlaps(roots_[j]))
                throw RootIsolationFailed("refined root disks not separated");
        }
    }
    return out;
}

// ---- FieldElement ----

FieldElement::FieldElement(FieldPtr field, QPoly coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    normalize(coeffs_);
    if ((int)coeffs_.size() > (int)field_->degree()) {
        auto [q, r] = poly_divrem(coeffs_, to_qpoly(field_->min_poly()));
        (void)q;
        coeffs_ = std::move(r);
    }
    for (auto& c : coeffs_) c.canonicalize();
}

FieldElement FieldElement::from_rational(FieldPtr field, const mpq_class& r) {
    QPoly c;
    if (r != 0) c = {r};
    return FieldElement(std::move(field), std::move(c));
}

FieldElement FieldElement::generator(FieldPtr field) {
    if (field->degree() == 1) {
        mpq_class r(-field->min_poly()[0], field->min_poly()[1]);
        r.canonicalize();
        return from_rational(std::move(field), r);
    }
    return FieldElement(std::move(field), QPoly{0, 1});
}

mpq_class FieldElement::rational_value() const {
    if (!is_rational()) throw Error("rational_value: element is not rational");
    return coeffs_.empty() ? mpq_class(0) : coeffs_[0];
}

void FieldElement::check_same_field(const FieldElement& o) const {
    if (field_.get() != o.field_.get())
        throw FieldMismatch("operands belong to different number fields");
}

bool FieldElement::operator==(const FieldElement& o) const {
    check_same_field(o);
    return coeffs_ == o.coeffs_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same_field(o);
    return FieldElement(field_, poly_add(coeffs_, o.coeffs_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same_field(o);
    return FieldElement(field_, poly_sub(coeffs_, o.coeffs_));
}

FieldElement FieldElement::operator-() const {
    return FieldElement(field_, poly_scale(coeffs_, -1));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same_field(o);
    return FieldElement(field_, poly_mul(coeffs_, o.coeffs_));
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
    check_same_field(o);
    if (o.is_zero()) throw DivisionByZeroElement("division by zero field element");
    // extended Euclid: u * o + v * f = g (constant)
    QPoly f = to_qpoly(field_->min_poly());
    QPoly r0 = f, r1 = o.coeffs_;
    QPoly u0 = {}, u1 = {1};
    while (degree(r1) > 0) {
        auto [q, r] = poly_divrem(r0, r1);
        QPoly u2 = poly_sub(u0, poly_mul(q, u1));
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (degree(r1) < 0) throw DivisionByZeroElement("divisor not invertible (zero mod f)");
    mpq_class g = r1[0];
    QPoly inv = poly_scale(u1, 1 / g);
    return *this * FieldElement(field_, std::move(inv));
}

FieldElement FieldElement::pow(unsigned long e) const {
    FieldElement acc = one(field_);
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

ComplexBall embed(const FieldElement& a, size_t l, Precision prec) {
    const auto& f = a.field();
    if (l < 1 || l > f->degree()) throw Error("embed: embedding index out of range");
    if (a.is_rational())
        return ComplexBall::from_rational(a.is_zero() ? mpq_class(0) : a.coeffs()[0], prec);
    // evaluation error ~ |coeff poly|'(root) * root_rad; ask for extra root bits
    auto roots = f->roots_at(Precision(prec.bits + 32));
    return poly_eval(a.coeffs(), roots[l - 1], Precision(prec.bits + 32));
}

QPoly minimal_polynomial(const FieldElement& a) {
    unsigned n = a.field()->degree();
    // powers of a as column vectors in the power basis
    std::vector<QPoly> pows;
    FieldElement cur = FieldElement::one(a.field());
    for (unsigned k = 0; k <= n; ++k) {
        pows.push_back(cur.coeffs());
        cur = cur * a;
    }
    auto coord = [&](const QPoly& v, unsigned i) {
        return i < v.size() ? v[i] : mpq_class(0);
    };
    for (unsigned k = 1; k <= n; ++k) {
        // solve sum_{i<k} c_i a^i = a^k  (n equations, k unknowns)
        std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(k + 1));
        for (unsigned r = 0; r < n; ++r) {
            for (unsigned c = 0; c < k; ++c) m[r][c] = coord(pows[c], r);
            m[r][k] = coord(pows[k], r);
        }
        // Gaussian elimination
        unsigned row = 0;
        std::vector<int> pivot_col(n, -1);
        for (unsigned col = 0; col < k && row < n; ++col) {
            unsigned sel = row;
            while (sel < n && m[sel][col] == 0) ++sel;
            if (sel == n) continue;
            std::swap(m[sel], m[row]);
            mpq_class inv = 1 / m[row][col];
            for (unsigned c2 = col; c2 <= k; ++c2) m[row][c2] *= inv;
            for (unsigned r2 = 0; r2 < n; ++r2) {
                if (r2 == row || m[r2][col] == 0) continue;
                mpq_class fct = m[r2][col];
                for (unsigned c2 = col; c2 <= k; ++c2) m[r2][c2] -= fct * m[row][c2];
            }
            pivot_col[row] = (int)col;
            ++row;
        }
        bool consistent = true;
        for (unsigned r = row; r < n; ++r)
            if (m[r][k] != 0) consistent = false;
        if (!consistent) continue;
        QPoly mp(k + 1);
        mp[k] = 1;
        for (unsigned r = 0; r < row; ++r)
            if (pivot_col[r] >= 0) mp[pivot_col[r]] = -m[r][k];
        return mp;
    }
    throw Error("minimal_polynomial: no annihilating polynomial found");  // unreachable
}

bool is_algebraic_integer(const FieldElement& a) {
    QPoly mp = minimal_polynomial(a);
    for (const auto& c : mp)
        if (c.get_den() != 1) return false;
    return true;
}

mpq_class norm_exact(const FieldElement& a) {
    unsigned n = a.field()->degree();
    if (a.is_zero()) return 0;
    // multiplication-by-a matrix in the power basis
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
    FieldElement q = FieldElement::generator(a.field());
    FieldElement col = a;
    for (unsigned c = 0; c < n; ++c) {
        for (unsigned r = 0; r < n; ++r)
            m[r][c] = r < col.coeffs().size() ? col.coeffs()[r] : mpq_class(0);
        if (c + 1 < n) col = col * q;
    }
    // determinant by fraction-free-ish Gaussian elimination over Q
    mpq_class det = 1;
    for (unsigned col = 0; col < n; ++col) {
        unsigned sel = col;
        while (sel < n && m[sel][col] == 0) ++sel;
        if (sel == n) return 0;
        if (sel != col) {
            std::swap(m[sel], m[col]);
            det = -det;
        }
        det *= m[col][col];
        mpq_class inv = 1 / m[col][col];
        for (unsigned r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            mpq_class fct = m[r][col] * inv;
            for (unsigned c2 = col; c2 < n; ++c2) m[r][c2] -= fct * m[col][c2];
        }
    }
    det.canonicalize();
    return det;
}

RealBall q_height(const FieldElement& a, Precision prec) {
    unsigned n = a.field()->degree();
    Precision work(prec.bits + 32);
    RealBall h = RealBall::exact_int(1, work);
    for (unsigned l = 1; l <= n; ++l) {
        RealBall m = ball_abs(embed(a, l, work), work);
        h = ball_mul(h, ball_max1(m, work), work);
    }
    return h;
}

bool is_ratio_root_of_unity(const FieldElement& a, const FieldElement& b) {
    if (a.is_zero() || b.is_zero())
        throw Error("is_ratio_root_of_unity: arguments must be nonzero");
    FieldElement r = a / b;
    if (r.is_rational()) {
        mpq_class v = r.rational_value();
        return v == 1 || v == -1;
    }
    QPoly mp = minimal_polynomial(r);
    for (const auto& c : mp)
        if (c.get_den() != 1) return false;  // not an algebraic integer
    ZPoly mz = primitive_part(mp);
    unsigned deg = (unsigned)degree(mz);
    for (unsigned long nn : orders_with_phi_at_most(a.field()->degree())) {
        if (euler_phi(nn) != deg) continue;
        if (cyclotomic(nn) == mz) return true;
    }
    return false;
}

PVReport pv_check(const FieldPtr& field, Precision prec) {
    PVReport rep;
    unsigned n = field->degree();
    if (abs(field->min_poly().back()) != 1) {
        // q is not an algebraic integer, so it cannot be PV
        rep.is_pv = false;
        rep.dominant_root = field->roots()[0];
        return rep;
    }
    Precision p = prec;
    for (int attempt = 0; attempt <= 8; ++attempt, p = p.doubled()) {
        auto roots = field->roots_at(p);
        const ComplexBall& q = roots[0];
        rep.dominant_root = q;
        rep.conjugate_moduli.clear();
        for (size_t i = 1; i < roots.size(); ++i)
            rep.conjugate_moduli.push_back(ball_abs(roots[i], p));
        if (!q.certainly_real()) {
            rep.is_pv = false;
            return rep;
        }
        RealBall one = RealBall::exact_int(1, p);
        RealBall neg_one = RealBall::exact_int(-1, p);
        bool gt1 = q.re().certainly_gt(one);
        bool lt_m1 = q.re().certainly_lt(neg_one);
        if (!gt1 && !lt_m1) {
            if (q.re().certainly_lt(one) && q.re().certainly_gt(neg_one)) {
                rep.is_pv = false;  // |q| < 1
                return rep;
            }
            continue;  // straddles +-1, refine
        }
        rep.sign_convention = gt1 ? PVReport::Plus : PVReport::Minus;
        if (n == 1) {
            rep.is_pv = true;
            return rep;
        }
        bool all_small = true, any_large = false, undecided = false;
        for (const auto& m : rep.conjugate_moduli) {
            if (m.certainly_lt(one)) continue;
            all_small = false;
            if (m.certainly_gt(one)) any_large = true;
            else undecided = true;
        }
        if (all_small) {
            rep.is_pv = true;
            return rep;
        }
        if (any_large) {
            rep.is_pv = false;  // a conjugate certainly outside the unit disk
            return rep;
        }
        (void)undecided;
        // some modulus straddles 1: refine
    }
    throw Undecidable("pv_check: a conjugate modulus straddles 1 after laddering "
                      "(Salem-like borderline input)");
}

} // namespace qindep
