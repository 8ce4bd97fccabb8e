#include "gl4/ring.hpp"

#include <algorithm>
#include <cassert>

namespace gl4 {

namespace {

u64 mulmod(u64 a, u64 b, u64 mod) {
    return static_cast<u64>((static_cast<u128>(a) * b) % mod);
}

u64 addmod(u64 a, u64 b, u64 mod) {
    u64 s = a + b;  // both < mod <= 2^62, no overflow
    return s >= mod ? s - mod : s;
}

u64 submod(u64 a, u64 b, u64 mod) { return a >= b ? a - b : a + mod - b; }

// --- tiny polynomial arithmetic over F_p, used only to pick the modulus ---

using Poly = std::vector<long>;  // coeffs of 1, x, x^2, ...; normalized

Poly poly_mod(Poly a, const Poly& b, long p) {
    // b monic
    while (a.size() >= b.size()) {
        long lead = a.back() % p;
        if (lead != 0) {
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i) {
                long& x = a[shift + i];
                x = ((x - lead * b[i]) % p + p * p) % p;
            }
        }
        a.pop_back();
        while (!a.empty() && a.back() % p == 0 && a.size() > 1) {
            if (a.back() != 0) break;
            a.pop_back();
        }
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, long p) {
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(r), mod, p);
}

bool poly_is_zero(const Poly& a) {
    for (long c : a)
        if (c != 0) return false;
    return true;
}

// x^(p^k) mod f, computed by repeated p-th powering.
Poly poly_frob_power(const Poly& f, long p, int k) {
    Poly x{0, 1};
    Poly r = poly_mod(x, f, p);
    for (int i = 0; i < k; ++i) {
        // r <- r^p mod f by square-and-multiply on exponent p
        Poly acc{1};
        Poly base = r;
        long e = p;
        while (e > 0) {
            if (e & 1) acc = poly_mulmod(acc, base, f, p);
            base = poly_mulmod(base, base, f, p);
            e >>= 1;
        }
        r = std::move(acc);
    }
    return r;
}

// Irreducibility of a monic degree-m polynomial over F_p:
// x^(p^m) == x mod f, and x^(p^(m/q)) != x for every prime divisor q of m.
bool poly_irreducible(const Poly& f, long p) {
    int m = static_cast<int>(f.size()) - 1;
    Poly x{0, 1};
    Poly xm = poly_frob_power(f, p, m);
    Poly diff = xm;
    diff.resize(std::max(diff.size(), x.size()), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    if (!poly_is_zero(diff)) return false;
    for (int q = 2; q <= m; ++q) {
        if (m % q != 0) continue;
        bool qprime = true;
        for (int d = 2; d < q; ++d)
            if (q % d == 0) qprime = false;
        if (!qprime) continue;
        Poly xq = poly_frob_power(f, p, m / q);
        Poly d2 = xq;
        d2.resize(std::max(d2.size(), x.size()), 0);
        d2[1] = ((d2[1] - 1) % p + p) % p;
        if (poly_is_zero(d2)) return false;
    }
    return true;
}

}  // namespace

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrecisionPolicy PrecisionPolicy::make(long p, int N, int m) {
    PrecisionPolicy pol;
    pol.p = p;
    pol.N = N;
    pol.m = m;
    pol.val_bound = (N - 4) / 2;
    if (pol.val_bound < 1)
        throw domain_error("precision policy: N must be at least 6");
    return pol;
}

RingCtxPtr RingContext::make(long p, int N, int m) {
    if (p == 2 || !is_prime(p))
        throw domain_error("ring context requires an odd prime p");
    if (N < 1) throw domain_error("precision N must be >= 1");
    if (m < 1 || m > kMaxDegree)
        throw domain_error("residue degree m out of supported range");

    auto ctx = std::make_shared<RingContext>();
    ctx->p = p;
    ctx->N = N;
    ctx->m = m;
    ctx->ppow.assign(static_cast<std::size_t>(N) + 1, 1);
    for (int k = 1; k <= N; ++k) {
        if (ctx->ppow[k - 1] > (u64{1} << 62) / static_cast<u64>(p))
            throw domain_error("p^N exceeds the 64-bit working range");
        ctx->ppow[k] = ctx->ppow[k - 1] * static_cast<u64>(p);
    }
    ctx->pN = ctx->ppow[N];
    ctx->policy = N >= 6 ? PrecisionPolicy::make(p, N, m)
                         : PrecisionPolicy{p, N, m, 1};

    // Lexicographically least monic irreducible of degree m over F_p,
    // scanning constant coefficient fastest.
    if (m == 1) {
        ctx->modulus[0] = 0;
        ctx->modulus[1] = 1;
    } else {
        bool found = false;
        long total = 1;
        for (int i = 0; i < m; ++i) total *= p;
        for (long k = 0; k < total && !found; ++k) {
            Poly f(static_cast<std::size_t>(m) + 1, 0);
            long t = k;
            for (int i = 0; i < m; ++i) {
                f[i] = t % p;
                t /= p;
            }
            f[m] = 1;
            if (poly_irreducible(f, p)) {
                for (int i = 0; i <= m; ++i)
                    ctx->modulus[i] = static_cast<u64>(f[i]);
                found = true;
            }
        }
        if (!found) throw inconsistency_error("no irreducible modulus found");
    }

    // Frobenius: Hensel-lift the root g^p of the modulus.  Start from the
    // residue image of x^p mod f and Newton-iterate r <- r - f(r)/f'(r).
    if (m == 1) {
        ctx->frob_gpow_[0] = ctx->one();
        ctx->frobinv_gpow_[0] = ctx->one();
    } else {
        Poly f(static_cast<std::size_t>(m) + 1, 0);
        for (int i = 0; i <= m; ++i) f[i] = static_cast<long>(ctx->modulus[i]);
        Poly xp = poly_frob_power(f, p, 1);
        RElem r{};
        for (std::size_t i = 0; i < xp.size() && i < static_cast<std::size_t>(m); ++i)
            r.c[i] = static_cast<u64>(xp[i]);

        auto eval_f = [&](const RElem& v) {
            RElem acc = ctx->from_int(1);
            RElem res = ctx->zero();
            for (int i = 0; i <= m; ++i) {
                RElem term = ctx->mul_int(acc, static_cast<long long>(ctx->modulus[i]));
                res = ctx->add(res, term);
                if (i < m) acc = ctx->mul(acc, v);
            }
            return res;
        };
        auto eval_fprime = [&](const RElem& v) {
            RElem acc = ctx->from_int(1);
            RElem res = ctx->zero();
            for (int i = 1; i <= m; ++i) {
                RElem term = ctx->mul_int(acc, static_cast<long long>(i) *
                                                   static_cast<long long>(ctx->modulus[i]));
                res = ctx->add(res, term);
                if (i < m) acc = ctx->mul(acc, v);
            }
            return res;
        };

        for (int it = 0; it < N + 2; ++it) {
            RElem fv = eval_f(r);
            if (ctx->is_zero(fv)) break;
            RElem fp = eval_fprime(r);
            r = ctx->sub(r, ctx->mul(fv, ctx->inverse(fp)));
        }
        if (!ctx->is_zero(eval_f(r)))
            throw inconsistency_error("Frobenius Hensel lift did not converge");

        ctx->frob_gpow_[0] = ctx->one();
        for (int i = 1; i < m; ++i)
            ctx->frob_gpow_[i] = ctx->mul(ctx->frob_gpow_[i - 1], r);

        // sigma^{m-1} = sigma^{-1}: image of g under m-1 applications.
        RElem ginv = ctx->gen();
        for (int k = 0; k < m - 1; ++k) ginv = ctx->apply_table(ginv, ctx->frob_gpow_);
        ctx->frobinv_gpow_[0] = ctx->one();
        for (int i = 1; i < m; ++i)
            ctx->frobinv_gpow_[i] = ctx->mul(ctx->frobinv_gpow_[i - 1], ginv);

        // sanity: sigma^m = id on the generator
        RElem g = ctx->gen();
        RElem s = g;
        for (int k = 0; k < m; ++k) s = ctx->frobenius(s);
        if (!(s == g))
            throw inconsistency_error("Frobenius table fails sigma^m = id");
    }
    return ctx;
}

RElem RingContext::from_int(long long v) const {
    long long r = v % static_cast<long long>(pN);
    if (r < 0) r += static_cast<long long>(pN);
    RElem e{};
    e.c[0] = static_cast<u64>(r);
    return e;
}

RElem RingContext::gen() const {
    if (m < 2) throw domain_error("generator requires m >= 2");
    RElem e{};
    e.c[1] = 1;
    return e;
}

RElem RingContext::from_coords(const std::vector<u64>& coords) const {
    RElem e{};
    for (int i = 0; i < m && i < static_cast<int>(coords.size()); ++i)
        e.c[i] = coords[i] % pN;
    return e;
}

RElem RingContext::add(const RElem& a, const RElem& b) const {
    RElem r{};
    for (int i = 0; i < m; ++i) r.c[i] = addmod(a.c[i], b.c[i], pN);
    return r;
}

RElem RingContext::sub(const RElem& a, const RElem& b) const {
    RElem r{};
    for (int i = 0; i < m; ++i) r.c[i] = submod(a.c[i], b.c[i], pN);
    return r;
}

RElem RingContext::neg(const RElem& a) const {
    RElem r{};
    for (int i = 0; i < m; ++i) r.c[i] = a.c[i] == 0 ? 0 : pN - a.c[i];
    return r;
}

RElem RingContext::mul(const RElem& a, const RElem& b) const {
    if (m == 1) {
        RElem r{};
        r.c[0] = mulmod(a.c[0], b.c[0], pN);
        return r;
    }
    // schoolbook product, then reduce degrees >= m with the monic modulus:
    // g^m = -(mod[0] + mod[1] g + ... + mod[m-1] g^{m-1})
    std::array<u64, 2 * kMaxDegree> prod{};
    for (int i = 0; i < m; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < m; ++j) {
            if (b.c[j] == 0) continue;
            prod[i + j] = addmod(prod[i + j], mulmod(a.c[i], b.c[j], pN), pN);
        }
    }
    for (int d = 2 * m - 2; d >= m; --d) {
        u64 lead = prod[d];
        if (lead == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < m; ++i) {
            if (modulus[i] == 0) continue;
            u64 t = mulmod(lead, modulus[i], pN);
            prod[d - m + i] = submod(prod[d - m + i], t, pN);
        }
    }
    RElem r{};
    for (int i = 0; i < m; ++i) r.c[i] = prod[i];
    return r;
}

RElem RingContext::mul_int(const RElem& a, long long k) const {
    long long r = k % static_cast<long long>(pN);
    if (r < 0) r += static_cast<long long>(pN);
    RElem out{};
    for (int i = 0; i < m; ++i) out.c[i] = mulmod(a.c[i], static_cast<u64>(r), pN);
    return out;
}

RElem RingContext::pow(const RElem& a, u64 e) const {
    RElem acc = one();
    RElem base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

bool RingContext::is_zero(const RElem& a) const {
    for (int i = 0; i < m; ++i)
        if (a.c[i] != 0) return false;
    return true;
}

int RingContext::valuation(const RElem& a) const {
    int v = N;
    for (int i = 0; i < m; ++i) {
        if (a.c[i] == 0) continue;
        u64 x = a.c[i];
        int vi = 0;
        while (x % static_cast<u64>(p) == 0) {
            x /= static_cast<u64>(p);
            ++vi;
        }
        v = std::min(v, vi);
    }
    return v;
}

RElem RingContext::inverse(const RElem& a) const {
    if (!is_unit(a)) throw domain_error("inverse of a non-unit");
    // Fermat inverse in the residue field: a^(p^m - 2) with coordinates
    // reduced mod p at every step, then Hensel lift x <- x(2 - ax).
    RElem abar = reduce_mod_p_pow(a, 1);
    u64 q = 1;
    for (int i = 0; i < m; ++i) q *= static_cast<u64>(p);
    RElem x = reduce_mod_p_pow(pow(abar, q - 2), 1);
    RElem two = from_int(2);
    for (int it = 0; it < N + 1; ++it) {
        RElem e = sub(two, mul(a, x));
        x = mul(x, e);
        if (mul(a, x) == one()) break;
    }
    if (!(mul(a, x) == one()))
        throw inconsistency_error("Hensel inverse did not converge");
    return x;
}

RElem RingContext::mul_pow_p(const RElem& a, int k) const {
    if (k < 0) throw domain_error("mul_pow_p: negative exponent");
    if (k >= N) return zero();
    RElem r{};
    for (int i = 0; i < m; ++i) r.c[i] = mulmod(a.c[i], ppow[k], pN);
    return r;
}

RElem RingContext::divide_exact_p(const RElem& a, int k) const {
    if (k == 0) return a;
    if (k < 0) return mul_pow_p(a, -k);
    RElem r{};
    for (int i = 0; i < m; ++i) {
        if (a.c[i] % ppow[k] != 0)
            throw domain_error("divide_exact_p: not divisible");
        r.c[i] = a.c[i] / ppow[k];
    }
    return r;
}

RElem RingContext::reduce_mod_p_pow(const RElem& a, int k) const {
    if (k >= N) return a;
    RElem r{};
    for (int i = 0; i < m; ++i) r.c[i] = a.c[i] % ppow[k];
    return r;
}

RElem RingContext::quotient_p_pow(const RElem& a, int k) const {
    if (k == 0) return a;
    RElem r{};
    for (int i = 0; i < m; ++i) r.c[i] = a.c[i] / ppow[k];
    return r;
}

RElem RingContext::apply_table(const RElem& a,
                               const std::array<RElem, kMaxDegree>& tab) const {
    RElem r{};
    for (int i = 0; i < m; ++i) {
        if (a.c[i] == 0) continue;
        RElem term = tab[i];
        for (int j = 0; j < m; ++j)
            r.c[j] = addmod(r.c[j], mulmod(a.c[i], term.c[j], pN), pN);
    }
    return r;
}

RElem RingContext::frobenius(const RElem& a) const {
    if (m == 1) return a;
    return apply_table(a, frob_gpow_);
}

RElem RingContext::frobenius_inv(const RElem& a) const {
    if (m == 1) return a;
    return apply_table(a, frobinv_gpow_);
}

RElem RingContext::frobenius_pow(const RElem& a, int k) const {
    int r = ((k % m) + m) % m;
    RElem x = a;
    for (int i = 0; i < r; ++i) x = frobenius(x);
    return x;
}

std::string RingContext::to_string(const RElem& a) const {
    std::string s = std::to_string(a.c[0]);
    for (int i = 1; i < m; ++i) {
        s += ':';
        s += std::to_string(a.c[i]);
    }
    return s;
}

int legendre(long long a, long p) {
    long r = static_cast<long>(((a % p) + p) % p);
    if (r == 0) return 0;
    for (long t = 1; t < p; ++t)
        if ((t * t) % p == r) return 1;
    return -1;
}

long default_nonsquare(long p) {
    for (long u = 2; u < p; ++u)
        if (legendre(u, p) == -1) return u;
    throw domain_error("no nonsquare found (p must be an odd prime)");
}

RElem hensel_sqrt(const RingContext& R, const RElem& a) {
    if (!R.is_unit(a)) throw domain_error("hensel_sqrt: unit argument required");
    // brute-force root in the residue field (digits < p)
    RElem a0 = R.reduce_mod_p_pow(a, 1);
    RElem root{};
    bool found = false;
    std::vector<u64> digits(static_cast<std::size_t>(R.m), 0);
    u64 total = 1;
    for (int i = 0; i < R.m; ++i) total *= static_cast<u64>(R.p);
    for (u64 k = 0; k < total && !found; ++k) {
        u64 t = k;
        for (int i = 0; i < R.m; ++i) {
            digits[static_cast<std::size_t>(i)] = t % static_cast<u64>(R.p);
            t /= static_cast<u64>(R.p);
        }
        RElem x = R.from_coords(digits);
        if (R.reduce_mod_p_pow(R.mul(x, x), 1) == a0) {
            root = x;
            found = true;
        }
    }
    if (!found) throw domain_error("hensel_sqrt: no square root exists");
    // Newton: x <- (x + a/x) / 2, quadratic convergence (p odd)
    RElem inv2 = R.inverse(R.from_int(2));
    for (int it = 0; it < 8 && !R.equal(R.mul(root, root), a); ++it)
        root = R.mul(inv2, R.add(root, R.mul(a, R.inverse(root))));
    if (!R.equal(R.mul(root, root), a))
        throw inconsistency_error("hensel_sqrt: lifting failed to converge");
    return root;
}

PRat PRat::make(long long num, long long den, long p) {
    if (num == 0 || den == 0) throw domain_error("PRat: zero value");
    PRat r;
    r.exp = 0;
    while (num % p == 0) {
        num /= p;
        ++r.exp;
    }
    while (den % p == 0) {
        den /= p;
        --r.exp;
    }
    // unit part only matters mod squares / mod p for symbols; keep the exact
    // reduced integer pair folded into one numerator when possible.
    r.unit = num * (den < 0 ? -1 : 1);
    long long d = den < 0 ? -den : den;
    if (d != 1) {
        // fold the denominator via sign + magnitude; symbols only need the
        // residue of unit mod p and its sign, so multiply by den (same class
        // mod squares: a/b ~ a*b).
        r.unit *= d;
    }
    return r;
}

int hilbert_symbol(const PRat& a, const PRat& b, long p) {
    if (p == 2) throw domain_error("hilbert_symbol: p must be odd");
    int alpha = a.exp;
    int beta = b.exp;
    int lu = legendre(a.unit, p);
    int lv = legendre(b.unit, p);
    if (lu == 0 || lv == 0)
        throw domain_error("hilbert_symbol: unit part divisible by p");
    int eps = static_cast<int>((p - 1) / 2) % 2;  // parity of (p-1)/2
    int sign = 1;
    if (eps && (alpha % 2) && (beta % 2)) sign = -sign;
    if (beta % 2 && lu == -1) sign = -sign;
    if (alpha % 2 && lv == -1) sign = -sign;
    return sign;
}

int hilbert_symbol(long long a, long long b, long p) {
    return hilbert_symbol(PRat::from_int(a, p), PRat::from_int(b, p), p);
}

}  // namespace gl4
