// Exact arithmetic in F_{p^m} and the truncated Witt ring GR(p^N, m).
//
// Elements are stored as polynomial-basis coordinates modulo p^N.  The ring
// context owns the lifted modulus polynomial and a cached Frobenius table
// (images of powers of the generator under the Hensel-lifted p-power map).
// All values are immutable after construction; contexts are shared read-only.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gl4 {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Maximum supported residue degree m.  Desk scale: F_{p^4} is enough for
/// every quadric point enumeration we do (F_{p^{2s}} with s <= 2).
inline constexpr int kMaxDegree = 4;

/// Raised when a result would need valuations at or beyond the working
/// precision N (silently returning 0 would be wrong, so we refuse).
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised on structurally invalid inputs (non-unit inverse, containment
/// violations, wrong lattice types, ...).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when two independently computed criteria that must agree do not;
/// indicates a bug, never a data problem.
struct inconsistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Working-precision contract: N >= 2*val_bound + 4 guard digits.
struct PrecisionPolicy {
    long p = 3;
    int N = 12;
    int m = 2;
    int val_bound = 4;

    static PrecisionPolicy make(long p, int N, int m);
};

/// One element of GR(p^N, m): coordinates c[0..m-1] modulo p^N in the
/// polynomial basis 1, g, ..., g^{m-1}.  Plain value type; all arithmetic
/// lives on RingContext.
struct RElem {
    std::array<u64, kMaxDegree> c{};

    bool operator==(const RElem&) const = default;
};

class RingContext;
using RingCtxPtr = std::shared_ptr<const RingContext>;

/// Shared context for GR(p^N, m): modulus, powers of p, Frobenius tables.
/// With N = 1 this is exactly the field F_{p^m}.
class RingContext : public std::enable_shared_from_this<RingContext> {
public:
    long p;
    int N;
    int m;
    u64 pN;                          // p^N
    std::vector<u64> ppow;           // ppow[k] = p^k, k = 0..N
    std::array<u64, kMaxDegree + 1> modulus{};  // monic lift, coeffs of 1..x^m
    PrecisionPolicy policy;

    /// Builds the ring with the lexicographically least monic irreducible
    /// modulus of degree m over F_p and a Hensel-lifted Frobenius table.
    /// Rejects p = 2 and non-primes.
    static RingCtxPtr make(long p, int N, int m);

    // --- element construction ---
    RElem zero() const { return RElem{}; }
    RElem one() const { return from_int(1); }
    RElem from_int(long long v) const;
    RElem gen() const;               // the class of x (requires m >= 2)
    RElem from_coords(const std::vector<u64>& coords) const;

    // --- ring operations ---
    RElem add(const RElem& a, const RElem& b) const;
    RElem sub(const RElem& a, const RElem& b) const;
    RElem neg(const RElem& a) const;
    RElem mul(const RElem& a, const RElem& b) const;
    RElem mul_int(const RElem& a, long long k) const;
    RElem pow(const RElem& a, u64 e) const;

    bool is_zero(const RElem& a) const;
    bool equal(const RElem& a, const RElem& b) const { return a == b; }

    /// Largest e <= N with p^e dividing every coordinate; returns N for 0
    /// (the infinity marker: precision cannot distinguish 0 from p^N).
    int valuation(const RElem& a) const;
    bool is_unit(const RElem& a) const { return valuation(a) == 0; }

    /// Multiplicative inverse of a unit (Fermat inverse mod p, then Hensel
    /// lifted to precision N).  Throws domain_error for non-units.
    RElem inverse(const RElem& a) const;

    RElem mul_pow_p(const RElem& a, int k) const;        // a * p^k, k >= 0
    RElem divide_exact_p(const RElem& a, int k) const;   // requires p^k | a
    RElem reduce_mod_p_pow(const RElem& a, int k) const; // coords mod p^k
    /// Coordinate-wise floor quotient by p^k on canonical lifts:
    /// a = quotient * p^k + (a mod p^k).
    RElem quotient_p_pow(const RElem& a, int k) const;

    // --- Frobenius ---
    RElem frobenius(const RElem& a) const;       // sigma
    RElem frobenius_inv(const RElem& a) const;   // sigma^{m-1}
    RElem frobenius_pow(const RElem& a, int k) const;

    /// Decimal serialization: single coordinate for m = 1, otherwise
    /// coordinates joined by ':'.
    std::string to_string(const RElem& a) const;

private:
    std::array<RElem, kMaxDegree> frob_gpow_{};     // sigma(g)^i
    std::array<RElem, kMaxDegree> frobinv_gpow_{};  // sigma^{m-1}(g)^i

    RElem apply_table(const RElem& a,
                      const std::array<RElem, kMaxDegree>& tab) const;
};

bool is_prime(long n);

/// Quadratic residue symbol of a mod p, by exhaustive squaring (desk scale).
int legendre(long long a, long p);

/// Smallest positive nonsquare mod p (the canonical Delta / D choice).
long default_nonsquare(long p);

/// Square root of a unit: brute-force root in the residue field, then Newton
/// lifting to full precision.  Throws domain_error if no root exists.
RElem hensel_sqrt(const RingContext& R, const RElem& a);

/// A nonzero rational with explicit p-power part: value = unit * p^exp,
/// p coprime to unit.  Exact at negative valuations.
struct PRat {
    long long unit = 1;
    int exp = 0;

    static PRat make(long long num, long long den, long p);
    static PRat from_int(long long n, long p) { return make(n, 1, p); }
};

/// Standard odd-p Hilbert symbol (a, b)_p from valuations and Legendre
/// symbols.  Throws domain_error if either argument is zero or p = 2.
int hilbert_symbol(const PRat& a, const PRat& b, long p);
int hilbert_symbol(long long a, long long b, long p);

}  // namespace gl4
