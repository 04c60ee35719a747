#pragma once

#include "scalar.hpp"

#include <map>
#include <sstream>
#include <string>

namespace bggkit {

// Integer Laurent polynomial in v, kept canonical (no zero coefficients).
class Laurent {
public:
    Laurent() = default;
    Laurent(long c) { set(0, c); }
    static Laurent monomial(int e, const mpz_class& c = 1)
    {
        Laurent l;
        l.set(e, c);
        return l;
    }

    const std::map<int, mpz_class>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int min_degree() const { return t_.empty() ? 0 : t_.begin()->first; }
    int max_degree() const { return t_.empty() ? 0 : t_.rbegin()->first; }
    mpz_class coeff(int e) const
    {
        auto it = t_.find(e);
        return it == t_.end() ? mpz_class(0) : it->second;
    }

    // Units of Z[v, 1/v] are exactly ±v^k.
    bool is_unit() const { return t_.size() == 1 && abs(t_.begin()->second) == 1; }

    Laurent operator-() const
    {
        Laurent r(*this);
        for (auto& [e, c] : r.t_)
            c = -c;
        return r;
    }
    Laurent& operator+=(const Laurent& o)
    {
        for (auto& [e, c] : o.t_)
            set(e, coeff(e) + c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) { return *this += -o; }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(const Laurent& a, const Laurent& b)
    {
        Laurent r;
        for (auto& [e1, c1] : a.t_)
            for (auto& [e2, c2] : b.t_)
                r.set(e1 + e2, r.coeff(e1 + e2) + c1 * c2);
        return r;
    }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
    bool operator==(const Laurent& o) const { return t_ == o.t_; }

    // Exact division; throws when the quotient is not a Laurent polynomial.
    Laurent exact_div(const Laurent& d) const
    {
        if (d.is_zero())
            throw DomainError("Laurent division by zero");
        if (is_zero())
            return {};
        // shift both to polynomials with nonzero constant term, then long-divide
        int sa = min_degree(), sd = d.min_degree();
        std::map<int, mpz_class> rem, den;
        for (auto& [e, c] : t_)
            rem[e - sa] = c;
        for (auto& [e, c] : d.t_)
            den[e - sd] = c;
        int dd = den.rbegin()->first;
        const mpz_class lc = den.rbegin()->second;
        Laurent q;
        while (!rem.empty() && rem.rbegin()->first >= dd) {
            int e = rem.rbegin()->first - dd;
            mpz_class rc = rem.rbegin()->second;
            if (rc % lc != 0)
                throw DomainError("inexact Laurent division");
            mpz_class f = rc / lc;
            q.set(e + sa - sd, f);
            for (auto& [de, dc] : den) {
                mpz_class& slot = rem[de + e];
                slot -= f * dc;
                if (slot == 0)
                    rem.erase(de + e);
            }
        }
        if (!rem.empty())
            throw DomainError("inexact Laurent division");
        return q;
    }

    // v -> 1/v
    Laurent bar() const
    {
        Laurent r;
        for (auto& [e, c] : t_)
            r.set(-e, c);
        return r;
    }

    mpq_class evaluate(const mpq_class& x) const
    {
        if (x == 0 && min_degree() < 0)
            throw DomainError("evaluating a Laurent polynomial at 0");
        mpq_class s = 0;
        for (auto& [e, c] : t_) {
            mpq_class p = 1;
            mpq_class b = e >= 0 ? x : 1 / x;
            for (int k = 0; k < std::abs(e); ++k)
                p *= b;
            s += p * c;
        }
        return s;
    }
    mpz_class at_one() const
    {
        mpz_class s = 0;
        for (auto& [e, c] : t_)
            s += c;
        return s;
    }

    std::string str() const
    {
        if (t_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const auto& [e, c] = *it;
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            mpz_class a = abs(c);
            if (a != 1 || e == 0)
                os << a;
            if (e != 0)
                os << "v" << (e == 1 ? "" : "^" + std::to_string(e));
            first = false;
        }
        return os.str();
    }

private:
    void set(int e, const mpz_class& c)
    {
        if (c == 0)
            t_.erase(e);
        else
            t_[e] = c;
    }
    std::map<int, mpz_class> t_;
};

// [n] = (v^n - v^-n) / (v - 1/v)
inline Laurent quantum_integer(long n)
{
    Laurent r;
    long m = n < 0 ? -n : n;
    for (long k = 0; k < m; ++k)
        r += Laurent::monomial(static_cast<int>(m - 1 - 2 * k));
    return n < 0 ? -r : r;
}

inline Laurent quantum_factorial(long n)
{
    Laurent r(1);
    for (long k = 1; k <= n; ++k)
        r *= quantum_integer(k);
    return r;
}

// Balanced quantum binomial [n choose k] for any integer n and k >= 0.
inline Laurent quantum_binomial(long n, long k)
{
    if (k < 0)
        return Laurent();
    Laurent num(1);
    for (long j = 0; j < k; ++j)
        num *= quantum_integer(n - j);
    return num.exact_div(quantum_factorial(k));
}

} // namespace bggkit
