#include "wmms/rational.hpp"

#include <cctype>

namespace wmms {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) {
    if (q_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("Rational: empty text: '" + std::string(text) + "'");

    mpq_class q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        std::string_view ns = s.substr(0, slash);
        std::string_view ds = s.substr(slash + 1);
        bool dneg = false;
        if (!ds.empty() && (ds.front() == '+' || ds.front() == '-')) {
            dneg = ds.front() == '-';
            ds.remove_prefix(1);
        }
        if (!all_digits(ns) || !all_digits(ds))
            throw std::invalid_argument("Rational: malformed fraction: '" + std::string(text) + "'");
        mpz_class num(std::string(ns), 10), den(std::string(ds), 10);
        if (den == 0) throw std::invalid_argument("Rational: zero denominator: '" + std::string(text) + "'");
        if (dneg) num = -num;
        q = mpq_class(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if (ip.empty() && fp.empty())
            throw std::invalid_argument("Rational: malformed decimal: '" + std::string(text) + "'");
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("Rational: malformed decimal: '" + std::string(text) + "'");
        mpz_class num(std::string(ip) + std::string(fp), 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        q = mpq_class(num, den);
    } else {
        if (!all_digits(s))
            throw std::invalid_argument("Rational: malformed number: '" + std::string(text) + "'");
        q = mpq_class(mpz_class(std::string(s), 10));
    }
    q.canonicalize();
    if (neg) q = -q;
    return Rational(q);
}

std::string Rational::str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow2(long p) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(p < 0 ? -p : p));
    if (p >= 0) return Rational(mpq_class(z));
    return Rational(mpq_class(mpz_class(1), z));
}

long floor_log2(const Rational& r) {
    if (r.sign() <= 0) throw std::domain_error("floor_log2: non-positive argument");
    mpz_class a = r.num(), b = r.den();
    long k = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 2));
    // floor(log2(a/b)) is k or k-1; test 2^k <= a/b exactly.
    mpz_class lhs;
    if (k >= 0) {
        mpz_mul_2exp(lhs.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(k));
        return lhs <= a ? k : k - 1;
    }
    mpz_mul_2exp(lhs.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(-k));
    return lhs >= b ? k : k - 1;
}

bool is_dyadic_of(const Rational& v, const Rational& base) {
    if (base.sign() <= 0) throw std::domain_error("is_dyadic_of: non-positive base");
    if (v.sign() <= 0) return false;
    if (v > base) return false;
    Rational ratio = base / v;  // must be an integral power of two >= 1
    if (ratio.den() != 1) return false;
    mpz_class n = ratio.num();
    return mpz_popcount(n.get_mpz_t()) == 1;
}

Rational round_up_pow_half(const Rational& w, const Rational& base) {
    if (w.sign() <= 0 || base.sign() <= 0 || w > base)
        throw std::domain_error("round_up_pow_half: requires 0 < w <= base");
    long p = floor_log2(base / w);
    return base / pow2(p);
}

Rational round_down_pow_half(const Rational& v, const Rational& base) {
    if (v.sign() <= 0 || base.sign() <= 0 || v > base)
        throw std::domain_error("round_down_pow_half: requires 0 < v <= base");
    Rational ratio = base / v;  // >= 1
    long q = floor_log2(ratio);
    if (pow2(q) < ratio) ++q;  // ceil
    return base / pow2(q);
}

std::vector<Rational> dyadic_expansion(const Rational& r, const Rational& base) {
    if (base.sign() <= 0) throw std::domain_error("dyadic_expansion: non-positive base");
    if (r.sign() < 0 || r > base) throw std::invalid_argument("dyadic_expansion: requires 0 <= r <= base");
    Rational d = r / base;
    if (mpz_popcount(mpz_class(d.den()).get_mpz_t()) != 1)
        throw std::invalid_argument("dyadic_expansion: residual is not dyadic");
    std::vector<Rational> terms;
    Rational rest = r;
    while (!rest.is_zero()) {
        Rational term = round_down_pow_half(rest, base);
        terms.push_back(term);
        rest -= term;
    }
    return terms;
}

}  // namespace wmms
