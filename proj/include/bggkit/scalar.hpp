#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bggkit {

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnsupportedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// Raised when an exact identity that must hold by construction fails.
struct InconsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

inline bool is_prime(unsigned p)
{
    if (p < 2)
        return false;
    for (unsigned d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

// Coefficient field: p == 0 is Q, otherwise F_p.
struct Field {
    unsigned p = 0;

    static Field rationals() { return {}; }
    static Field prime(unsigned p)
    {
        if (!is_prime(p))
            throw DomainError("not a prime: " + std::to_string(p));
        return Field{p};
    }
    bool is_rational() const { return p == 0; }
    std::string name() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
    bool operator==(const Field&) const = default;
};

// Element of Q or of F_p. A default-constructed scalar is the rational zero;
// integral rationals coerce silently into F_p when combined with a residue.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : q_(v) {}
    Scalar(const mpz_class& v) : q_(v) {}
    Scalar(const mpq_class& v) : q_(v) { q_.canonicalize(); }

    static Scalar in(const Field& f, const mpq_class& v)
    {
        Scalar s(v);
        if (f.p)
            s.reduce_into(f.p);
        return s;
    }
    static Scalar in(const Field& f, long v) { return in(f, mpq_class(v)); }

    unsigned characteristic() const { return p_; }
    bool is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }
    bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
    bool is_integral() const { return p_ || q_.get_den() == 1; }

    // Value as a rational (the residue representative in [0,p) for F_p).
    mpq_class rational() const { return p_ ? mpq_class(r_) : q_; }

    Scalar to_field(const Field& f) const
    {
        if (f.p == p_)
            return *this;
        if (p_ != 0)
            throw DomainError("cannot move a residue between prime fields");
        Scalar s(*this);
        s.reduce_into(f.p);
        return s;
    }

    Scalar operator-() const
    {
        Scalar s(*this);
        if (p_)
            s.r_ = s.r_ ? p_ - s.r_ : 0;
        else
            s.q_ = -s.q_;
        return s;
    }
    Scalar& operator+=(const Scalar& o)
    {
        unsigned p = common(o);
        if (p) {
            r_ = (r_ + o.residue(p)) % p;
        } else {
            q_ += o.q_;
        }
        return *this;
    }
    Scalar& operator-=(const Scalar& o) { return *this += -o; }
    Scalar& operator*=(const Scalar& o)
    {
        unsigned p = common(o);
        if (p)
            r_ = static_cast<std::uint64_t>(r_) * o.residue(p) % p;
        else
            q_ *= o.q_;
        return *this;
    }
    Scalar inverse() const
    {
        if (is_zero())
            throw DomainError("division by zero");
        Scalar s(*this);
        if (p_) {
            // Fermat: r^(p-2)
            std::uint64_t b = r_, e = p_ - 2, acc = 1;
            while (e) {
                if (e & 1)
                    acc = acc * b % p_;
                b = b * b % p_;
                e >>= 1;
            }
            s.r_ = static_cast<unsigned>(acc);
        } else {
            s.q_ = 1 / q_;
        }
        return s;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }

    std::string str() const { return p_ ? std::to_string(r_) : q_.get_str(); }
    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    void reduce_into(unsigned p)
    {
        if (q_.get_den() != 1) {
            mpz_class den = q_.get_den() % p;
            if (den == 0)
                throw DomainError("denominator divisible by " + std::to_string(p));
            Scalar num, d;
            num.p_ = d.p_ = p;
            mpz_class n = q_.get_num() % p;
            if (n < 0)
                n += p;
            num.r_ = static_cast<unsigned>(n.get_ui());
            if (den < 0)
                den += p;
            d.r_ = static_cast<unsigned>(den.get_ui());
            *this = num * d.inverse();
            return;
        }
        mpz_class n = q_.get_num() % p;
        if (n < 0)
            n += p;
        p_ = p;
        r_ = static_cast<unsigned>(n.get_ui());
        q_ = 0;
    }
    unsigned residue(unsigned p) const
    {
        if (p_ == p)
            return r_;
        Scalar s(*this);
        s.reduce_into(p);
        return s.r_;
    }
    unsigned common(const Scalar& o)
    {
        if (p_ == o.p_)
            return p_;
        if (p_ == 0) {
            reduce_into(o.p_);
            return p_;
        }
        if (o.p_ == 0)
            return p_;
        throw DomainError("mixing residues of different primes");
    }

    mpq_class q_;
    unsigned p_ = 0;
    unsigned r_ = 0;
};

inline mpz_class factorial(long n)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// Generalized binomial C(n, k) for any integer n and k >= 0.
inline mpz_class binomial(long n, long k)
{
    if (k < 0)
        return 0;
    mpz_class r;
    if (n >= 0) {
        mpz_bin_ui(r.get_mpz_t(), mpz_class(n).get_mpz_t(), static_cast<unsigned long>(k));
        return r;
    }
    // C(-m, k) = (-1)^k C(m+k-1, k)
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(-n + k - 1), static_cast<unsigned long>(k));
    return (k % 2) ? mpz_class(-r) : r;
}

} // namespace bggkit
