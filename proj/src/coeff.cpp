#include "ainf/coeff.hpp"

#include <climits>
#include <stdexcept>

#include "ainf/errors.hpp"

namespace ainf {

namespace {

std::int64_t mod_norm(std::int64_t a, std::int64_t p) {
    a %= p;
    return a < 0 ? a + p : a;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
}

std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1 % p;
    a = mod_norm(a, p);
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    // Fermat: p is prime.
    return pow_mod(a, p - 2, p);
}

std::int64_t mpz_mod_p(const mpz_class& z, std::int64_t p) {
    mpz_class r = z % mpz_class(static_cast<long>(p));
    if (r < 0) r += static_cast<long>(p);
    return r.get_si();
}

bool divisible(const mpz_class& z, std::int64_t p) {
    return mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
}

int p_valuation(mpz_class z, std::int64_t p) {
    if (z == 0) return INT_MAX;
    int v = 0;
    const mpz_class pp(static_cast<long>(p));
    while (divisible(z, p)) {
        z /= pp;
        ++v;
    }
    return v;
}

}  // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Ring Ring::prime_field(std::int64_t p) {
    if (!is_prime(p) || p > (std::int64_t{1} << 31))
        throw std::invalid_argument("prime field needs a prime below 2^31, got " + std::to_string(p));
    return Ring(RingKind::prime_field, p);
}

Ring Ring::local_integers(std::int64_t p) {
    if (!is_prime(p) || p > (std::int64_t{1} << 31))
        throw std::invalid_argument("p-local integers need a prime below 2^31, got " + std::to_string(p));
    return Ring(RingKind::local_integers, p);
}

std::string Ring::kind_tag() const {
    switch (kind_) {
        case RingKind::rationals: return "Q";
        case RingKind::prime_field: return "Fp";
        case RingKind::local_integers: return "Zloc";
    }
    return "?";
}

std::string Ring::name() const {
    switch (kind_) {
        case RingKind::rationals: return "Q";
        case RingKind::prime_field: return "F_" + std::to_string(p_);
        case RingKind::local_integers: return "Z_(" + std::to_string(p_) + ")";
    }
    return "?";
}

Scalar Scalar::zero(const Ring& ring) {
    if (ring.kind() == RingKind::prime_field) return Scalar(ring, std::int64_t{0});
    return Scalar(ring, mpq_class(0));
}

Scalar Scalar::one(const Ring& ring) { return from_int(ring, 1); }

Scalar Scalar::from_int(const Ring& ring, long long n) {
    if (ring.kind() == RingKind::prime_field) return Scalar(ring, mod_norm(n, ring.prime()));
    return Scalar(ring, mpq_class(mpz_class(static_cast<long>(n))));
}

Scalar Scalar::from_fraction(const Ring& ring, const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw NonUnit("zero denominator");
    switch (ring.kind()) {
        case RingKind::rationals: {
            mpq_class q(num, den);
            q.canonicalize();
            return Scalar(ring, std::move(q));
        }
        case RingKind::prime_field: {
            const auto d = mpz_mod_p(den, ring.prime());
            if (d == 0) throw NonUnit("denominator divisible by " + std::to_string(ring.prime()));
            return Scalar(ring, mul_mod(mpz_mod_p(num, ring.prime()), inv_mod(d, ring.prime()), ring.prime()));
        }
        case RingKind::local_integers: {
            mpq_class q(num, den);
            q.canonicalize();
            if (divisible(q.get_den(), ring.prime()))
                throw NonUnit("denominator of " + q.get_str() + " is divisible by " + std::to_string(ring.prime()));
            return Scalar(ring, std::move(q));
        }
    }
    throw std::logic_error("unreachable");
}

Scalar Scalar::parse(const Ring& ring, std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        if (s.empty()) throw std::invalid_argument("empty integer in scalar '" + std::string(text) + "'");
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
        std::string digits(s[0] == '+' ? s.substr(1) : s);
        return mpz_class(digits, 10);
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_fraction(ring, parse_int(text), mpz_class(1));
    const auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
        throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
    return from_fraction(ring, parse_int(text.substr(0, slash)), parse_int(den_text));
}

bool Scalar::is_zero() const {
    if (ring_.kind() == RingKind::prime_field) return res() == 0;
    return q() == 0;
}

bool Scalar::is_one() const {
    if (ring_.kind() == RingKind::prime_field) return res() == 1;
    return q() == 1;
}

bool Scalar::is_unit() const {
    switch (ring_.kind()) {
        case RingKind::rationals: return q() != 0;
        case RingKind::prime_field: return res() != 0;
        case RingKind::local_integers: return q() != 0 && !divisible(q().get_num(), ring_.prime());
    }
    return false;
}

int Scalar::valuation() const {
    if (is_zero()) return INT_MAX;
    if (ring_.kind() != RingKind::local_integers) return 0;
    return p_valuation(q().get_num(), ring_.prime());
}

Scalar Scalar::inverse() const {
    if (!is_unit()) throw NonUnit(to_string() + " is not a unit in " + ring_.name());
    if (ring_.kind() == RingKind::prime_field) return Scalar(ring_, inv_mod(res(), ring_.prime()));
    mpq_class inv = 1 / q();
    inv.canonicalize();
    return Scalar(ring_, std::move(inv));
}

Scalar Scalar::pow(long long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result = one(ring_);
    Scalar base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

std::int64_t Scalar::residue_mod_p() const {
    switch (ring_.kind()) {
        case RingKind::prime_field: return res();
        case RingKind::local_integers: {
            const auto p = ring_.prime();
            return mul_mod(mpz_mod_p(q().get_num(), p), inv_mod(mpz_mod_p(q().get_den(), p), p), p);
        }
        case RingKind::rationals: break;
    }
    throw std::logic_error("residue_mod_p on a rational scalar");
}

const mpq_class& Scalar::rational() const {
    if (ring_.kind() == RingKind::prime_field) throw std::logic_error("rational() on a prime field scalar");
    return q();
}

std::string Scalar::to_string() const {
    if (ring_.kind() == RingKind::prime_field) return std::to_string(res());
    return q().get_str();  // "a" when the denominator is 1, else "a/b"
}

void Scalar::require_same_ring(const Scalar& o) const {
    if (!(ring_ == o.ring_)) throw RingMismatch("cannot combine " + ring_.name() + " and " + o.ring_.name());
}

Scalar& Scalar::operator+=(const Scalar& o) {
    require_same_ring(o);
    if (ring_.kind() == RingKind::prime_field) {
        auto s = res() + o.res();
        if (s >= ring_.prime()) s -= ring_.prime();
        value_ = s;
    } else {
        std::get<mpq_class>(value_) += o.q();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    require_same_ring(o);
    if (ring_.kind() == RingKind::prime_field) {
        auto s = res() - o.res();
        if (s < 0) s += ring_.prime();
        value_ = s;
    } else {
        std::get<mpq_class>(value_) -= o.q();
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    require_same_ring(o);
    if (ring_.kind() == RingKind::prime_field)
        value_ = mul_mod(res(), o.res(), ring_.prime());
    else
        std::get<mpq_class>(value_) *= o.q();
    return *this;
}

Scalar Scalar::operator-() const {
    if (ring_.kind() == RingKind::prime_field) return Scalar(ring_, res() == 0 ? 0 : ring_.prime() - res());
    return Scalar(ring_, mpq_class(-q()));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (!(a.ring_ == b.ring_)) return false;
    if (a.ring_.kind() == RingKind::prime_field) return a.res() == b.res();
    return a.q() == b.q();
}

int multiplicative_order(std::int64_t a, std::int64_t p) {
    a = mod_norm(a, p);
    if (a == 0) throw NonUnit("0 has no multiplicative order");
    std::int64_t x = a;
    int k = 1;
    while (x != 1) {
        x = mul_mod(x, a, p);
        ++k;
    }
    return k;
}

UnitRange unit_range(const Ring& ring, const Scalar& alpha, int probe_limit) {
    if (!(alpha.ring() == ring)) throw RingMismatch("alpha does not belong to " + ring.name());
    if (!alpha.is_unit()) throw NonUnit("alpha = " + alpha.to_string() + " is not a unit");
    if (probe_limit < 1) throw std::invalid_argument("probe_limit must be positive");

    UnitRange out;
    const Scalar one = Scalar::one(ring);
    Scalar power = one;
    out.unbounded_up_to_probe = true;
    for (int k = 1; k <= probe_limit; ++k) {
        power *= alpha;
        if (!(power - one).is_unit()) {
            out.n_max = k - 1;
            out.unbounded_up_to_probe = false;
            break;
        }
        out.n_max = k;
    }
    if (ring.kind() != RingKind::rationals)
        out.exact = multiplicative_order(alpha.residue_mod_p(), ring.prime()) - 1;
    return out;
}

}  // namespace ainf
