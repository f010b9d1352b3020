#include "qindep/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>

#include "qindep/errors.hpp"

namespace qindep {

int degree(const ZPoly& p) {
    for (int i = (int)p.size() - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

int degree(const QPoly& p) {
    for (int i = (int)p.size() - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

void normalize(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void normalize(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_qpoly(const ZPoly& p) {
    QPoly q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[i] = mpq_class(p[i]);
    return q;
}

ZPoly primitive_part(const QPoly& p) {
    QPoly q = p;
    normalize(q);
    if (q.empty()) return {};
    mpz_class den = 1;
    for (const auto& c : q) den = lcm(den, c.get_den());
    ZPoly z(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        mpq_class t = q[i] * den;
        z[i] = t.get_num();
    }
    mpz_class g = 0;
    for (const auto& c : z) g = gcd(g, c);
    if (g != 0)
        for (auto& c : z) c /= g;
    if (z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

QPoly poly_add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    normalize(r);
    return r;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] -= b[i];
    }
    normalize(r);
    return r;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (degree(a) < 0 || degree(b) < 0) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    normalize(r);
    return r;
}

QPoly poly_scale(const QPoly& a, const mpq_class& c) {
    QPoly r = a;
    for (auto& x : r) x *= c;
    normalize(r);
    return r;
}

std::pair<QPoly, QPoly> poly_divrem(const QPoly& a, const QPoly& b) {
    int db = degree(b);
    if (db < 0) throw Error("poly_divrem: division by zero polynomial");
    QPoly rem = a;
    normalize(rem);
    int da = degree(rem);
    if (da < db) return {{}, rem};
    QPoly quot(da - db + 1);
    mpq_class lead = b[db];
    for (int i = da; i >= db; --i) {
        if (rem.size() <= (size_t)i || rem[i] == 0) continue;
        mpq_class c = rem[i] / lead;
        quot[i - db] = c;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
    }
    normalize(quot);
    normalize(rem);
    return {quot, rem};
}

QPoly poly_monic(const QPoly& p) {
    QPoly r = p;
    normalize(r);
    if (r.empty()) return r;
    mpq_class lead = r.back();
    for (auto& c : r) c /= lead;
    return r;
}

QPoly poly_gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a, y = b;
    normalize(x);
    normalize(y);
    while (!y.empty()) {
        auto [q, r] = poly_divrem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return poly_monic(x);
}

QPoly poly_derivative(const QPoly& p) {
    if (p.size() <= 1) return {};
    QPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * (long)i;
    normalize(r);
    return r;
}

ZPoly poly_derivative(const ZPoly& p) {
    if (p.size() <= 1) return {};
    ZPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * (long)i;
    normalize(r);
    return r;
}

mpq_class poly_eval(const QPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (int i = (int)p.size() - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

ComplexBall poly_eval(const ZPoly& p, const ComplexBall& x, Precision prec) {
    ComplexBall acc;
    for (int i = (int)p.size() - 1; i >= 0; --i) {
        acc = ball_mul(acc, x, prec);
        acc = ball_add(acc, ComplexBall(RealBall::exact(p[i], prec), RealBall()), prec);
    }
    return acc;
}

ComplexBall poly_eval(const QPoly& p, const ComplexBall& x, Precision prec) {
    ComplexBall acc;
    for (int i = (int)p.size() - 1; i >= 0; --i) {
        acc = ball_mul(acc, x, prec);
        acc = ball_add(acc, ComplexBall(RealBall::from_rational(p[i], prec), RealBall()), prec);
    }
    return acc;
}

RealBall poly_eval(const ZPoly& p, const RealBall& x, Precision prec) {
    RealBall acc;
    for (int i = (int)p.size() - 1; i >= 0; --i) {
        acc = ball_mul(acc, x, prec);
        acc = ball_add(acc, RealBall::exact(p[i], prec), prec);
    }
    return acc;
}

bool poly_is_squarefree(const ZPoly& p) {
    QPoly q = to_qpoly(p);
    QPoly g = poly_gcd(q, poly_derivative(q));
    return degree(g) == 0;
}

std::vector<mpq_class> rational_roots(const ZPoly& p) {
    std::vector<mpq_class> roots;
    ZPoly f = p;
    normalize(f);
    if (f.empty()) return roots;
    // strip x | f
    size_t low = 0;
    while (low < f.size() && f[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    if (low == f.size() - 1) return roots;  // monomial
    mpz_class a0 = f[low], an = f.back();
    std::vector<mpz_class> ps, qs;
    auto divisors = [](const mpz_class& n) {
        std::vector<mpz_class> d;
        mpz_class a = abs(n);
        for (mpz_class i = 1; i * i <= a; ++i) {
            if (a % i == 0) {
                d.push_back(i);
                if (i * i != a) d.push_back(a / i);
            }
        }
        return d;
    };
    QPoly q = to_qpoly(f);
    for (const auto& num : divisors(a0))
        for (const auto& den : divisors(an))
            for (int s : {1, -1}) {
                mpq_class cand(s * num, den);
                cand.canonicalize();
                if (poly_eval(q, cand) == 0) {
                    if (std::find(roots.begin(), roots.end(), cand) == roots.end())
                        roots.push_back(cand);
                }
            }
    return roots;
}

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

ZPoly cyclotomic(unsigned long n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    QPoly num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (unsigned long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        ZPoly phi_d = cyclotomic(d);
        auto [q, r] = poly_divrem(num, to_qpoly(phi_d));
        num = q;
    }
    ZPoly out(num.size());
    for (size_t i = 0; i < num.size(); ++i) out[i] = num[i].get_num();
    return out;
}

std::vector<unsigned long> orders_with_phi_at_most(unsigned long bound) {
    // phi(n) >= sqrt(n/2), so n <= 2 bound^2 suffices
    std::vector<unsigned long> out;
    for (unsigned long n = 1; n <= 2 * bound * bound + 1; ++n)
        if (euler_phi(n) <= bound) out.push_back(n);
    return out;
}

namespace {

// dense polynomials over F_p, p < 2^31
using PPoly = std::vector<uint64_t>;

void pnorm(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& f, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (unsigned __int128)a[i] * b[j]) % p;
    // reduce mod f (f monic)
    int df = (int)f.size() - 1;
    for (int i = (int)r.size() - 1; i >= df; --i) {
        uint64_t c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (int j = 0; j < df; ++j)
            r[i - df + j] = (r[i - df + j] + (unsigned __int128)c * (p - f[j])) % p;
    }
    pnorm(r);
    return r;
}

PPoly pgcd(PPoly a, PPoly b, uint64_t p) {
    auto inv = [&](uint64_t x) {
        uint64_t r = 1, e = p - 2, base = x % p;
        while (e) {
            if (e & 1) r = (unsigned __int128)r * base % p;
            base = (unsigned __int128)base * base % p;
            e >>= 1;
        }
        return r;
    };
    pnorm(a);
    pnorm(b);
    while (!b.empty()) {
        // a mod b
        uint64_t linv = inv(b.back());
        while (a.size() >= b.size()) {
            uint64_t c = (unsigned __int128)a.back() * linv % p;
            size_t off = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                a[off + j] = (a[off + j] + (unsigned __int128)c * (p - b[j])) % p;
            pnorm(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    pnorm(a);
    return a;
}

std::pair<PPoly, bool> pdiv_exact(const PPoly& a, const PPoly& b, uint64_t p) {
    auto inv = [&](uint64_t x) {
        uint64_t r = 1, e = p - 2, base = x % p;
        while (e) {
            if (e & 1) r = (unsigned __int128)r * base % p;
            base = (unsigned __int128)base * base % p;
            e >>= 1;
        }
        return r;
    };
    PPoly rem = a, quot;
    pnorm(rem);
    if (rem.size() < b.size()) return {{}, rem.empty()};
    quot.assign(rem.size() - b.size() + 1, 0);
    uint64_t linv = inv(b.back());
    for (int i = (int)rem.size() - 1; i >= (int)b.size() - 1; --i) {
        if (rem[i] == 0) continue;
        uint64_t c = (unsigned __int128)rem[i] * linv % p;
        quot[i - (b.size() - 1)] = c;
        for (size_t j = 0; j < b.size(); ++j)
            rem[i - (b.size() - 1) + j] =
                (rem[i - (b.size() - 1) + j] + (unsigned __int128)c * (p - b[j])) % p;
    }
    pnorm(rem);
    return {quot, rem.empty()};
}

} // namespace

std::vector<int> factor_degrees_mod_p(const ZPoly& poly, unsigned long prime) {
    ZPoly f = poly;
    normalize(f);
    if (f.empty() || mpz_fdiv_ui(f.back().get_mpz_t(), prime) == 0) return {};
    uint64_t p = prime;
    PPoly fp(f.size());
    for (size_t i = 0; i < f.size(); ++i)
        fp[i] = mpz_fdiv_ui(f[i].get_mpz_t(), prime);
    pnorm(fp);
    // make monic
    {
        uint64_t l = fp.back(), linv = 1, e = p - 2, base = l;
        while (e) {
            if (e & 1) linv = (unsigned __int128)linv * base % p;
            base = (unsigned __int128)base * base % p;
            e >>= 1;
        }
        for (auto& c : fp) c = (unsigned __int128)c * linv % p;
    }
    // squarefree mod p?
    PPoly fd(fp.size() - 1);
    for (size_t i = 1; i < fp.size(); ++i)
        fd[i - 1] = (unsigned __int128)fp[i] * (i % p) % p;
    pnorm(fd);
    if (fd.empty()) return {};
    PPoly g = pgcd(fp, fd, p);
    if (g.size() != 1) return {};

    std::vector<int> degrees;
    PPoly rem = fp;
    PPoly xp = {0, 1};  // x
    // x^(p^i) mod f via repeated frobenius of the fixed modulus fp
    PPoly frob = xp;
    {
        // frob = x^p mod fp
        PPoly acc = {1};
        PPoly base = xp;
        uint64_t e = p;
        while (e) {
            if (e & 1) acc = pmulmod(acc, base, fp, p);
            base = pmulmod(base, base, fp, p);
            e >>= 1;
        }
        frob = acc;
    }
    PPoly xpow = frob;  // x^(p^d) mod fp, d = 1
    int d = 0;
    while (rem.size() > 1) {
        ++d;
        if ((int)rem.size() - 1 < 2 * d) {
            degrees.push_back((int)rem.size() - 1);
            break;
        }
        // gcd(x^(p^d) - x, rem)
        PPoly diff = xpow;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        pnorm(diff);
        PPoly g2 = pgcd(rem, diff, p);
        if (g2.size() > 1) {
            int count = ((int)g2.size() - 1) / d;
            for (int i = 0; i < count; ++i) degrees.push_back(d);
            auto [q, ok] = pdiv_exact(rem, g2, p);
            if (!ok) return {};  // should not happen
            rem = q;
            pnorm(rem);
        }
        // advance xpow: replace modulus reduction by fp (valid since rem | fp)
        PPoly acc = {1};
        PPoly base = xpow;
        uint64_t e = p;
        while (e) {
            if (e & 1) acc = pmulmod(acc, base, fp, p);
            base = pmulmod(base, base, fp, p);
            e >>= 1;
        }
        xpow = acc;
    }
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

namespace {

struct ExprParser {
    const std::string& s;
    size_t i = 0;
    explicit ExprParser(const std::string& str) : s(str) {}

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }

    QPoly parse() {
        QPoly r = parse_expr();
        skip();
        if (i != s.size()) throw UsageError("polynomial parse error at '" + s.substr(i) + "'");
        return r;
    }

    QPoly parse_expr() {
        QPoly acc;
        bool neg = false;
        skip();
        if (eat('-')) neg = true;
        else eat('+');
        acc = parse_term();
        if (neg) acc = poly_scale(acc, -1);
        while (true) {
            skip();
            if (i >= s.size()) break;
            if (s[i] == '+' || s[i] == '-') {
                bool minus = s[i] == '-';
                ++i;
                QPoly t = parse_term();
                acc = minus ? poly_sub(acc, t) : poly_add(acc, t);
            } else {
                break;
            }
        }
        return acc;
    }

    QPoly parse_term() {
        QPoly acc = parse_factor();
        while (true) {
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                acc = poly_mul(acc, parse_factor());
            } else if (i < s.size() && (s[i] == 'x' || s[i] == 'X' || s[i] == '(')) {
                acc = poly_mul(acc, parse_factor());  // implicit multiplication
            } else {
                break;
            }
        }
        return acc;
    }

    QPoly parse_factor() {
        skip();
        QPoly base;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
            ++i;
            base = {0, 1};
        } else if (eat('(')) {
            base = parse_expr();
            if (!eat(')')) throw UsageError("polynomial parse error: missing ')'");
        } else {
            size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            if (j == i) throw UsageError("polynomial parse error near '" + s.substr(i) + "'");
            base = {mpq_class(mpz_class(s.substr(i, j - i)))};
            i = j;
        }
        skip();
        if (eat('^')) {
            skip();
            size_t j = i;
            while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
            if (j == i) throw UsageError("polynomial parse error: exponent expected");
            unsigned long e = std::stoul(s.substr(i, j - i));
            i = j;
            QPoly acc = {1};
            for (unsigned long k = 0; k < e; ++k) acc = poly_mul(acc, base);
            base = acc;
        }
        return base;
    }
};

} // namespace

ZPoly parse_poly(const std::string& s) {
    bool has_letter = false;
    for (char c : s)
        if (c == 'x' || c == 'X') has_letter = true;
    if (!has_letter) {
        // comma-separated coefficients, low-to-high
        ZPoly out;
        size_t start = 0;
        while (start <= s.size()) {
            size_t comma = s.find(',', start);
            std::string tok = s.substr(start, comma == std::string::npos ? comma : comma - start);
            size_t a = tok.find_first_not_of(" \t");
            if (a == std::string::npos) throw UsageError("empty coefficient in '" + s + "'");
            size_t b = tok.find_last_not_of(" \t");
            out.emplace_back(tok.substr(a, b - a + 1));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        normalize(out);
        return out;
    }
    ExprParser p(s);
    QPoly q = p.parse();
    ZPoly out(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        if (q[i].get_den() != 1)
            throw UsageError("polynomial must have integer coefficients: " + s);
        out[i] = q[i].get_num();
    }
    normalize(out);
    return out;
}

std::string poly_to_string(const ZPoly& p) {
    int d = degree(p);
    if (d < 0) return "0";
    std::string out;
    for (int i = d; i >= 0; --i) {
        if (p[i] == 0) continue;
        mpz_class c = p[i];
        bool first = out.empty();
        if (c > 0 && !first) out += "+";
        if (c < 0) {
            out += "-";
            c = -c;
        }
        if (i == 0) {
            out += c.get_str();
        } else {
            if (c != 1) out += c.get_str() + "*";
            out += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
    }
    return out;
}

std::vector<mpq_class> parse_rational_vector(const std::string& s) {
    std::string body = s;
    size_t a = body.find_first_not_of(" \t");
    size_t b = body.find_last_not_of(" \t");
    if (a == std::string::npos) throw UsageError("empty rational vector");
    body = body.substr(a, b - a + 1);
    if (body.front() == '[') {
        if (body.back() != ']') throw UsageError("unterminated '[' in '" + s + "'");
        body = body.substr(1, body.size() - 2);
    }
    std::vector<mpq_class> out;
    size_t start = 0;
    while (start <= body.size()) {
        size_t comma = body.find(',', start);
        std::string tok =
            body.substr(start, comma == std::string::npos ? comma : comma - start);
        size_t x = tok.find_first_not_of(" \t");
        if (x == std::string::npos) throw UsageError("empty entry in '" + s + "'");
        size_t y = tok.find_last_not_of(" \t");
        mpq_class v(tok.substr(x, y - x + 1));
        v.canonicalize();
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace qindep
