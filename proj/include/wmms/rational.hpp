#ifndef WMMS_RATIONAL_HPP
#define WMMS_RATIONAL_HPP

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace wmms {

/// Exact rational number. Always stored reduced with a positive denominator;
/// every comparison and arithmetic operation is exact. This is the only
/// numeric type used by the solvers.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long v) : q_(v) {}
    Rational(int v) : q_(v) {}
    Rational(long num, long den);
    explicit Rational(const mpq_class& q);

    /// Accepts "p/q", a plain integer, or a finite decimal such as "0.25".
    /// Throws std::invalid_argument on malformed text or a zero denominator.
    static Rational parse(std::string_view text);

    /// Always "p/q", including a unit denominator ("3/1").
    std::string str() const;

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return mpq_sgn(q_.get_mpq_t()); }
    bool is_zero() const { return sign() == 0; }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r(*this); r.q_ = -r.q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    double to_double() const { return q_.get_d(); }

private:
    mpq_class q_;  // canonical: reduced, den > 0
};

Rational abs(const Rational& r);

/// 2^p for any integer p (negative p gives 1/2^|p|).
Rational pow2(long p);

/// Largest integer p with 2^p <= r. Requires r > 0.
long floor_log2(const Rational& r);

/// True iff v equals base/2^p for some integer p >= 0, i.e. v is a
/// non-negative power-of-half multiple of base. Requires base > 0.
bool is_dyadic_of(const Rational& v, const Rational& base);

/// Rounds w up to base/2^p with p = floor(log2(base/w)); satisfies
/// w <= result < 2w. Requires 0 < w <= base.
Rational round_up_pow_half(const Rational& w, const Rational& base);

/// Rounds v down to base/2^q with q = ceil(log2(base/v)); satisfies
/// v/2 < result <= v. Requires 0 < v <= base.
Rational round_down_pow_half(const Rational& v, const Rational& base);

/// Greedy binary expansion of r as a sum of distinct terms base/2^q
/// (largest first, q >= 0). Requires 0 <= r <= base and r/base to have a
/// power-of-two denominator; throws std::invalid_argument otherwise.
std::vector<Rational> dyadic_expansion(const Rational& r, const Rational& base);

}  // namespace wmms

#endif
