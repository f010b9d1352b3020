#ifndef QINDEP_BALL_HPP
#define QINDEP_BALL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "qindep/errors.hpp"

namespace qindep {

/* Working mantissa precision in bits.  Every public numeric operation takes
 * one explicitly; there is no ambient global precision. */
struct Precision {
    unsigned bits;

    explicit Precision(unsigned b) : bits(b) {
        if (b < 32) throw Error("Precision: bits must be >= 32");
    }
    Precision doubled() const { return Precision(bits * 2); }
};

inline const Precision kDefaultPrec(128);

/* Radii are stored at a fixed small precision and always rounded up, so the
 * containment invariant survives radius bookkeeping. */
constexpr mpfr_prec_t kRadPrec = 64;

/* Midpoint-radius enclosure of a real number: the represented value x
 * satisfies |x - mid| <= rad.  Immutable in spirit; all operations return
 * fresh balls. */
class RealBall {
  public:
    RealBall();                       // exact 0
    RealBall(const RealBall&);
    RealBall(RealBall&&) noexcept;
    RealBall& operator=(const RealBall&);
    RealBall& operator=(RealBall&&) noexcept;
    ~RealBall();

    static RealBall exact_int(long v, Precision prec = kDefaultPrec);
    static RealBall exact(const mpz_class& v, Precision prec = kDefaultPrec);
    static RealBall from_rational(const mpq_class& v, Precision prec);
    // Parses a decimal midpoint; rad covers the representation error.
    static RealBall from_decimal(const std::string& s, Precision prec);

    mpfr_srcptr mid() const { return mid_; }
    mpfr_srcptr rad() const { return rad_; }

    bool is_exact() const { return mpfr_zero_p(rad_) != 0; }
    bool contains_zero() const;
    bool contains(const mpq_class& v) const;
    bool overlaps(const RealBall& o) const;

    // Endpoints rounded outward.
    RealBall lower_bound(Precision prec) const;  // exact ball at lo endpoint
    RealBall upper_bound(Precision prec) const;
    double lower_d() const;
    double upper_d() const;

    // Certified strict comparisons: true only when the enclosures are disjoint.
    bool certainly_lt(const RealBall& o) const;
    bool certainly_gt(const RealBall& o) const { return o.certainly_lt(*this); }
    bool certainly_positive() const;
    bool certainly_negative() const;
    bool certainly_nonzero() const { return !contains_zero(); }

    std::string mid_str(size_t digits = 0) const;
    std::string rad_str() const;

  private:
    friend RealBall ball_add(const RealBall&, const RealBall&, Precision);
    friend RealBall ball_sub(const RealBall&, const RealBall&, Precision);
    friend RealBall ball_mul(const RealBall&, const RealBall&, Precision);
    friend RealBall ball_div(const RealBall&, const RealBall&, Precision);
    friend RealBall ball_neg(const RealBall&);
    friend RealBall ball_abs(const RealBall&);
    friend RealBall ball_sqrt_nonneg(const RealBall&, Precision);
    friend RealBall ball_pow_ui(const RealBall&, unsigned long, Precision);
    friend RealBall ball_max1(const RealBall&, Precision);
    friend RealBall ball_root_ui(const RealBall&, unsigned long, Precision);
    friend RealBall from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, Precision);
    friend class ComplexBall;

    mpfr_t mid_;
    mpfr_t rad_;
};

// Ball spanning [lo, hi] (endpoints as exact mpfr values).
RealBall from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, Precision prec);

RealBall ball_add(const RealBall& a, const RealBall& b, Precision prec);
RealBall ball_sub(const RealBall& a, const RealBall& b, Precision prec);
RealBall ball_mul(const RealBall& a, const RealBall& b, Precision prec);
// Throws DivisorMayBeZero when the divisor enclosure meets 0.
RealBall ball_div(const RealBall& a, const RealBall& b, Precision prec);
RealBall ball_neg(const RealBall& a);
RealBall ball_abs(const RealBall& a);
// Enclosure of sqrt of a ball known to contain only values >= 0 (the negative
// part of a sloppy enclosure is clamped away).
RealBall ball_sqrt_nonneg(const RealBall& a, Precision prec);
RealBall ball_pow_ui(const RealBall& a, unsigned long e, Precision prec);
// n-th root of a nonnegative ball.
RealBall ball_root_ui(const RealBall& a, unsigned long n, Precision prec);
// max{1, a}
RealBall ball_max1(const RealBall& a, Precision prec);

/* If exactly one integer lies in [mid-rad, mid+rad] returns it; none returns
 * empty; more than one throws AmbiguousEnclosure. */
std::optional<mpz_class> enclosure_contains_integer(const RealBall& a);

/* Componentwise enclosure of a complex value. */
class ComplexBall {
  public:
    ComplexBall() = default;
    ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}

    static ComplexBall exact_int(long v, Precision prec = kDefaultPrec);
    static ComplexBall from_rational(const mpq_class& v, Precision prec);
    static ComplexBall from_real(RealBall r) { return ComplexBall(std::move(r), RealBall()); }

    const RealBall& re() const { return re_; }
    const RealBall& im() const { return im_; }

    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    bool overlaps(const ComplexBall& o) const {
        return re_.overlaps(o.re_) && im_.overlaps(o.im_);
    }
    bool certainly_real() const { return im_.is_exact() && im_.contains_zero(); }

  private:
    RealBall re_, im_;
};

ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b, Precision prec);
ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b, Precision prec);
ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b, Precision prec);
ComplexBall ball_div(const ComplexBall& a, const ComplexBall& b, Precision prec);
ComplexBall ball_neg(const ComplexBall& a);
ComplexBall ball_pow_ui(const ComplexBall& a, unsigned long e, Precision prec);
RealBall ball_abs(const ComplexBall& a, Precision prec);

/* Retries f at doubled precision (up to 8 doublings) until it returns a
 * value; f signals "not yet" by returning an empty optional. */
template <typename F>
auto ladder(Precision start, F&& f) {
    Precision p = start;
    for (int i = 0; i <= 8; ++i) {
        auto r = f(p);
        if (r) return *r;
        p = p.doubled();
    }
    throw PrecisionExhausted("precision ladder exhausted after 8 doublings");
}

} // namespace qindep

#endif
