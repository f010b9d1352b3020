#include "qindep/ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace qindep {

namespace {

/* Half-ulp bound for an inexact mpfr operation that produced `mid` at
 * precision `prec`.  Written into `out` (radius precision, rounded up). */
void roundoff_bound(mpfr_ptr out, mpfr_srcptr mid, Precision prec, int ternary) {
    if (ternary == 0 || mpfr_zero_p(mid)) {
        mpfr_set_zero(out, 1);
        return;
    }
    mpfr_set_ui(out, 1, MPFR_RNDU);
    mpfr_mul_2si(out, out, mpfr_get_exp(mid) - (mpfr_prec_t)prec.bits, MPFR_RNDU);
}

struct Tmp {
    mpfr_t v;
    explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
    ~Tmp() { mpfr_clear(v); }
    operator mpfr_ptr() { return v; }
    operator mpfr_srcptr() const { return v; }
};

mpq_class to_mpq(mpfr_srcptr x) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), x);
    return q;
}

} // namespace

RealBall::RealBall() {
    mpfr_init2(mid_, 32);
    mpfr_init2(rad_, kRadPrec);
    mpfr_set_zero(mid_, 1);
    mpfr_set_zero(rad_, 1);
}

RealBall::RealBall(const RealBall& o) {
    mpfr_init2(mid_, mpfr_get_prec(o.mid_));
    mpfr_init2(rad_, kRadPrec);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept {
    mpfr_init2(mid_, 32);
    mpfr_init2(rad_, kRadPrec);
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
}

RealBall& RealBall::operator=(const RealBall& o) {
    if (this != &o) {
        mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
        mpfr_set(mid_, o.mid_, MPFR_RNDN);
        mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    return *this;
}

RealBall::~RealBall() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
}

RealBall RealBall::exact_int(long v, Precision prec) {
    RealBall r;
    mpfr_set_prec(r.mid_, prec.bits);
    int t = mpfr_set_si(r.mid_, v, MPFR_RNDN);
    roundoff_bound(r.rad_, r.mid_, prec, t);
    return r;
}

RealBall RealBall::exact(const mpz_class& v, Precision prec) {
    RealBall r;
    mpfr_set_prec(r.mid_, prec.bits);
    int t = mpfr_set_z(r.mid_, v.get_mpz_t(), MPFR_RNDN);
    roundoff_bound(r.rad_, r.mid_, prec, t);
    return r;
}

RealBall RealBall::from_rational(const mpq_class& v, Precision prec) {
    RealBall r;
    mpfr_set_prec(r.mid_, prec.bits);
    int t = mpfr_set_q(r.mid_, v.get_mpq_t(), MPFR_RNDN);
    roundoff_bound(r.rad_, r.mid_, prec, t);
    return r;
}

RealBall RealBall::from_decimal(const std::string& s, Precision prec) {
    RealBall r;
    mpfr_set_prec(r.mid_, prec.bits);
    int t = mpfr_set_str(r.mid_, s.c_str(), 10, MPFR_RNDN);
    if (t == -1) throw Error("from_decimal: unparsable number '" + s + "'");
    // mpfr_set_str returns 0 on success without inexact info; assume inexact
    // unless the value round-trips exactly through a rational.
    mpq_class q = to_mpq(r.mid_);
    Tmp chk(prec.bits);
    mpfr_set_q(chk, q.get_mpq_t(), MPFR_RNDN);
    roundoff_bound(r.rad_, r.mid_, prec, mpfr_equal_p(chk, r.mid_) ? 0 : 1);
    return r;
}

bool RealBall::contains_zero() const {
    return mpfr_cmpabs(mid_, rad_) <= 0;
}

bool RealBall::contains(const mpq_class& v) const {
    mpq_class d = to_mpq(mid_) - v;
    mpq_class a = abs(d);
    return a <= to_mpq(rad_);
}

bool RealBall::overlaps(const RealBall& o) const {
    mpq_class d = abs(to_mpq(mid_) - to_mpq(o.mid_));
    return d <= to_mpq(rad_) + to_mpq(o.rad_);
}

RealBall from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec) {
    RealBall r;
    mpfr_set_prec(r.mid_, prec.bits);
    Tmp half(prec.bits);
    mpfr_add(half, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(r.mid_, half, 1, MPFR_RNDN);
    Tmp d1(kRadPrec), d2(kRadPrec);
    mpfr_sub(d1, hi, r.mid_, MPFR_RNDU);
    mpfr_sub(d2, r.mid_, lo, MPFR_RNDU);
    mpfr_max(r.rad_, d1, d2, MPFR_RNDU);
    if (mpfr_sgn(r.rad_) < 0) mpfr_set_zero(r.rad_, 1);
    return r;
}

RealBall RealBall::lower_bound(Precision prec) const {
    Tmp lo(std::max<mpfr_prec_t>(mpfr_get_prec(mid_), prec.bits));
    mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
    RealBall r;
    mpfr_set_prec(r.mid_, prec.bits);
    int t = mpfr_set(r.mid_, lo.v, MPFR_RNDD);
    (void)t;
    mpfr_set_zero(r.rad_, 1);
    return r;
}

RealBall RealBall::upper_bound(Precision prec) const {
    Tmp hi(std::max<mpfr_prec_t>(mpfr_get_prec(mid_), prec.bits));
    mpfr_add(hi, mid_, rad_, MPFR_RNDU);
    RealBall r;
    mpfr_set_prec(r.mid_, prec.bits);
    mpfr_set(r.mid_, hi.v, MPFR_RNDU);
    mpfr_set_zero(r.rad_, 1);
    return r;
}

double RealBall::lower_d() const {
    Tmp lo(mpfr_get_prec(mid_));
    mpfr_sub(lo, mid_, rad_, MPFR_RNDD);
    return mpfr_get_d(lo, MPFR_RNDD);
}

double RealBall::upper_d() const {
    Tmp hi(mpfr_get_prec(mid_));
    mpfr_add(hi, mid_, rad_, MPFR_RNDU);
    return mpfr_get_d(hi, MPFR_RNDU);
}

bool RealBall::certainly_lt(const RealBall& o) const {
    // upper(this) < lower(o), decided exactly over the rationals
    mpq_class hi = to_mpq(mid_) + to_mpq(rad_);
    mpq_class lo = to_mpq(o.mid_) - to_mpq(o.rad_);
    return hi < lo;
}

bool RealBall::certainly_positive() const {
    mpq_class lo = to_mpq(mid_) - to_mpq(rad_);
    return lo > 0;
}

bool RealBall::certainly_negative() const {
    mpq_class hi = to_mpq(mid_) + to_mpq(rad_);
    return hi < 0;
}

RealBall ball_add(const RealBall& a, const RealBall& b, Precision prec) {
    RealBall r;
    mpfr_set_prec(r.mid_, prec.bits);
    int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    Tmp err(kRadPrec);
    roundoff_bound(err, r.mid_, prec, t);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, err, MPFR_RNDU);
    return r;
}

RealBall ball_sub(const RealBall& a, const RealBall& b, Precision prec) {
    return ball_add(a, ball_neg(b), prec);
}

RealBall ball_neg(const RealBall& a) {
    RealBall r(a);
    mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
    return r;
}

RealBall ball_abs(const RealBall& a) {
    if (!a.contains_zero()) {
        RealBall r(a);
        mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);
        return r;
    }
    // straddles zero: |x| lies in [0, |mid|+rad]
    Tmp hi(kRadPrec), lo(kRadPrec);
    mpfr_abs(hi, a.mid(), MPFR_RNDU);
    mpfr_add(hi, hi, a.rad(), MPFR_RNDU);
    mpfr_set_zero(lo, 1);
    return from_endpoints(lo, hi, Precision((unsigned)std::max<mpfr_prec_t>(32, mpfr_get_prec(a.mid()))));
}

RealBall ball_mul(const RealBall& a, const RealBall& b, Precision prec) {
    RealBall r;
    mpfr_set_prec(r.mid_, prec.bits);
    int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    Tmp am(kRadPrec), bm(kRadPrec), t1(kRadPrec), t2(kRadPrec), err(kRadPrec);
    mpfr_abs(am, a.mid_, MPFR_RNDU);
    mpfr_abs(bm, b.mid_, MPFR_RNDU);
    mpfr_mul(t1, am, b.rad_, MPFR_RNDU);
    mpfr_mul(t2, bm, a.rad_, MPFR_RNDU);
    mpfr_add(t1, t1, t2, MPFR_RNDU);
    mpfr_mul(t2, a.rad_, b.rad_, MPFR_RNDU);
    mpfr_add(t1, t1, t2, MPFR_RNDU);
    roundoff_bound(err, r.mid_, prec, t);
    mpfr_add(r.rad_, t1, err, MPFR_RNDU);
    return r;
}

RealBall ball_div(const RealBall& a, const RealBall& b, Precision prec) {
    if (mpfr_cmpabs(b.mid_, b.rad_) <= 0)
        throw DivisorMayBeZero("ball_div: divisor enclosure contains zero");
    RealBall r;
    mpfr_set_prec(r.mid_, prec.bits);
    int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    // |x/y - ma/mb| <= (ra + |ma/mb| rb) / (|mb| - rb)
    Tmp denom(kRadPrec), num(kRadPrec), q(kRadPrec), err(kRadPrec);
    mpfr_abs(denom, b.mid_, MPFR_RNDD);
    mpfr_sub(denom, denom, b.rad_, MPFR_RNDD);
    mpfr_abs(q, r.mid_, MPFR_RNDU);
    mpfr_mul(num, q, b.rad_, MPFR_RNDU);
    mpfr_add(num, num, a.rad_, MPFR_RNDU);
    mpfr_div(num, num, denom, MPFR_RNDU);
    roundoff_bound(err, r.mid_, prec, t);
    mpfr_add(r.rad_, num, err, MPFR_RNDU);
    return r;
}

RealBall ball_sqrt_nonneg(const RealBall& a, Precision prec) {
    Tmp lo(prec.bits), hi(prec.bits);
    mpfr_sub(lo, a.mid(), a.rad(), MPFR_RNDD);
    if (mpfr_sgn(lo.v) < 0) mpfr_set_zero(lo, 1);
    mpfr_add(hi, a.mid(), a.rad(), MPFR_RNDU);
    if (mpfr_sgn(hi.v) < 0)
        throw Error("ball_sqrt_nonneg: enclosure is entirely negative");
    mpfr_sqrt(lo, lo, MPFR_RNDD);
    mpfr_sqrt(hi, hi, MPFR_RNDU);
    return from_endpoints(lo, hi, prec);
}

RealBall ball_root_ui(const RealBall& a, unsigned long n, Precision prec) {
    Tmp lo(prec.bits), hi(prec.bits);
    mpfr_sub(lo, a.mid(), a.rad(), MPFR_RNDD);
    if (mpfr_sgn(lo.v) < 0) mpfr_set_zero(lo, 1);
    mpfr_add(hi, a.mid(), a.rad(), MPFR_RNDU);
    mpfr_rootn_ui(lo, lo, n, MPFR_RNDD);
    mpfr_rootn_ui(hi, hi, n, MPFR_RNDU);
    return from_endpoints(lo, hi, prec);
}

RealBall ball_pow_ui(const RealBall& a, unsigned long e, Precision prec) {
    RealBall acc = RealBall::exact_int(1, prec);
    RealBall base = a;
    while (e > 0) {
        if (e & 1) acc = ball_mul(acc, base, prec);
        e >>= 1;
        if (e) base = ball_mul(base, base, prec);
    }
    return acc;
}

RealBall ball_max1(const RealBall& a, Precision prec) {
    Tmp lo(prec.bits), hi(prec.bits), one(32);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_sub(lo, a.mid(), a.rad(), MPFR_RNDD);
    mpfr_add(hi, a.mid(), a.rad(), MPFR_RNDU);
    mpfr_max(lo, lo, one, MPFR_RNDD);
    mpfr_max(hi, hi, one, MPFR_RNDU);
    return from_endpoints(lo, hi, prec);
}

std::optional<mpz_class> enclosure_contains_integer(const RealBall& a) {
    mpq_class mid = [&] { mpq_class q; mpfr_get_q(q.get_mpq_t(), a.mid()); return q; }();
    mpq_class rad = [&] { mpq_class q; mpfr_get_q(q.get_mpq_t(), a.rad()); return q; }();
    mpq_class lo = mid - rad, hi = mid + rad;
    mpz_class a_int, b_int;
    mpz_cdiv_q(a_int.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t()); // ceil
    mpz_fdiv_q(b_int.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t()); // floor
    if (b_int < a_int) return std::nullopt;
    if (b_int > a_int)
        throw AmbiguousEnclosure("enclosure contains more than one integer");
    return a_int;
}

namespace {

std::string format_mpfr(mpfr_srcptr x, size_t digits) {
    if (mpfr_zero_p(x)) return "0";
    if (digits == 0)
        digits = (size_t)((double)mpfr_get_prec(x) * 0.30103) + 2;
    double mag = std::fabs(mpfr_get_d(x, MPFR_RNDN));
    char* s = nullptr;
    if (mag >= 1e-6 && mag < 1e18) {
        mpfr_asprintf(&s, "%.*Rf", (int)digits, x);
        std::string out(s);
        mpfr_free_str(s);
        if (out.find('.') != std::string::npos) {
            size_t last = out.find_last_not_of('0');
            if (out[last] == '.') last--;
            out.erase(last + 1);
        }
        return out;
    }
    mpfr_asprintf(&s, "%.*Re", (int)digits, x);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

} // namespace

std::string RealBall::mid_str(size_t digits) const { return format_mpfr(mid_, digits); }
std::string RealBall::rad_str() const { return format_mpfr(rad_, 4); }

ComplexBall ComplexBall::exact_int(long v, Precision prec) {
    return ComplexBall(RealBall::exact_int(v, prec), RealBall());
}

ComplexBall ComplexBall::from_rational(const mpq_class& v, Precision prec) {
    return ComplexBall(RealBall::from_rational(v, prec), RealBall());
}

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b, Precision prec) {
    return ComplexBall(ball_add(a.re(), b.re(), prec), ball_add(a.im(), b.im(), prec));
}

ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b, Precision prec) {
    return ComplexBall(ball_sub(a.re(), b.re(), prec), ball_sub(a.im(), b.im(), prec));
}

ComplexBall ball_neg(const ComplexBall& a) {
    return ComplexBall(ball_neg(a.re()), ball_neg(a.im()));
}

ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b, Precision prec) {
    RealBall re = ball_sub(ball_mul(a.re(), b.re(), prec), ball_mul(a.im(), b.im(), prec), prec);
    RealBall im = ball_add(ball_mul(a.re(), b.im(), prec), ball_mul(a.im(), b.re(), prec), prec);
    return ComplexBall(std::move(re), std::move(im));
}

ComplexBall ball_div(const ComplexBall& a, const ComplexBall& b, Precision prec) {
    RealBall n = ball_add(ball_mul(b.re(), b.re(), prec), ball_mul(b.im(), b.im(), prec), prec);
    if (n.contains_zero())
        throw DivisorMayBeZero("complex ball_div: divisor enclosure contains zero");
    ComplexBall conj(b.re(), ball_neg(b.im()));
    ComplexBall num = ball_mul(a, conj, prec);
    return ComplexBall(ball_div(num.re(), n, prec), ball_div(num.im(), n, prec));
}

ComplexBall ball_pow_ui(const ComplexBall& a, unsigned long e, Precision prec) {
    ComplexBall acc = ComplexBall::exact_int(1, prec);
    ComplexBall base = a;
    while (e > 0) {
        if (e & 1) acc = ball_mul(acc, base, prec);
        e >>= 1;
        if (e) base = ball_mul(base, base, prec);
    }
    return acc;
}

RealBall ball_abs(const ComplexBall& a, Precision prec) {
    if (a.im().is_exact() && a.im().contains_zero()) return ball_abs(a.re());
    RealBall s = ball_add(ball_mul(a.re(), a.re(), prec), ball_mul(a.im(), a.im(), prec), prec);
    return ball_sqrt_nonneg(s, prec);
}

} // namespace qindep
