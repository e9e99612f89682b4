#pragma once

// Exact coefficient rings: Q, F_p and the p-local integers Z_(p).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace ainf {

enum class RingKind { rationals, prime_field, local_integers };

bool is_prime(std::int64_t n);

class Ring {
public:
    static Ring rationals() { return Ring(RingKind::rationals, 0); }
    static Ring prime_field(std::int64_t p);
    static Ring local_integers(std::int64_t p);

    RingKind kind() const noexcept { return kind_; }
    /// The prime p for F_p and Z_(p); zero for Q.
    std::int64_t prime() const noexcept { return p_; }

    /// "Q", "Fp" or "Zloc", as used in input documents.
    std::string kind_tag() const;
    /// Human readable: "Q", "F_5", "Z_(7)".
    std::string name() const;

    friend bool operator==(const Ring&, const Ring&) = default;

private:
    Ring(RingKind kind, std::int64_t p) : kind_(kind), p_(p) {}

    RingKind kind_;
    std::int64_t p_;
};

/// An exact element of a Ring. Values are kept canonical: reduced fractions
/// with positive denominator, residues in [0, p).
class Scalar {
public:
    /// The rational zero; exists so Scalars can live in standard containers.
    Scalar() : ring_(Ring::rationals()), value_(mpq_class(0)) {}

    static Scalar zero(const Ring& ring);
    static Scalar one(const Ring& ring);
    static Scalar from_int(const Ring& ring, long long n);
    /// num/den; throws NonUnit if den is not invertible in the ring.
    static Scalar from_fraction(const Ring& ring, const mpz_class& num, const mpz_class& den);
    /// Parses "a", "-a" or "a/b". Throws std::invalid_argument on malformed text
    /// and NonUnit when the denominator is not invertible.
    static Scalar parse(const Ring& ring, std::string_view text);

    const Ring& ring() const noexcept { return ring_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;
    /// p-adic valuation of the value; 0 for nonzero elements of Q and F_p.
    /// Undefined for zero (returns a large sentinel).
    int valuation() const;

    Scalar inverse() const;
    /// Integer power; negative exponents require a unit.
    Scalar pow(long long e) const;

    /// Residue mod p (F_p and Z_(p) only).
    std::int64_t residue_mod_p() const;
    /// Exact rational value (Q and Z_(p) only).
    const mpq_class& rational() const;

    std::string to_string() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    Scalar operator-() const;

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

private:
    Scalar(const Ring& ring, std::int64_t residue) : ring_(ring), value_(residue) {}
    Scalar(const Ring& ring, mpq_class q) : ring_(ring), value_(std::move(q)) {}

    void require_same_ring(const Scalar& o) const;
    std::int64_t res() const { return std::get<std::int64_t>(value_); }
    const mpq_class& q() const { return std::get<mpq_class>(value_); }

    Ring ring_;
    std::variant<std::int64_t, mpq_class> value_;
};

/// Result of probing for which n the elements alpha^k - 1, 1 <= k <= n, are units.
struct UnitRange {
    /// Largest n <= probe_limit with alpha^k - 1 a unit for all 1 <= k <= n.
    int n_max = 0;
    /// All probed k passed.
    bool unbounded_up_to_probe = false;
    /// For F_p and Z_(p): ord_p(alpha mod p) - 1, computed without probing.
    std::optional<int> exact;
};

inline constexpr int default_probe_limit = 64;

UnitRange unit_range(const Ring& ring, const Scalar& alpha, int probe_limit = default_probe_limit);

/// Multiplicative order of a mod p, for a not divisible by p.
int multiplicative_order(std::int64_t a, std::int64_t p);

}  // namespace ainf
