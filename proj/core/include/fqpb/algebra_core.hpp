#pragma once

// Exact scalars and the base *-algebra V.
//
// Scalars live in Q(i). V is the commutative Laurent algebra C[x, x^-1] with
// hermitian generator x, carrying the scaling *-automorphism gamma(x) = t x.
// The structure group algebra A = C[U, U^-1] reuses the same sparse Laurent
// container with a different star (see hopf_so2.hpp).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

namespace fqpb {

using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
/// r^n for any integer n (r must be nonzero when n < 0).
Rational rpow(const Rational& r, int n);

class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    Scalar conj() const { return {re_, -im_}; }
    /// Throws std::domain_error for zero.
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend Scalar operator-(const Scalar& a) { return {-a.re_, -a.im_}; }
    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

std::string to_string(const Scalar& s);
std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Sparse Laurent polynomial sum_d c_d g^d with Scalar coefficients.
/// Zero coefficients are never stored, so structural equality is algebraic
/// equality. The Tag distinguishes V (generator x) from A (generator U).
template <class Tag>
class Laurent {
public:
    using Terms = std::map<int, Scalar>;

    Laurent() = default;
    explicit Laurent(const Scalar& c)
    {
        if (!c.is_zero())
            terms_.emplace(0, c);
    }

    static Laurent monomial(int degree, const Scalar& c = Scalar(1))
    {
        Laurent out;
        out.add_term(degree, c);
        return out;
    }
    static Laurent one() { return Laurent(Scalar(1)); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Scalar coeff(int degree) const
    {
        auto it = terms_.find(degree);
        return it == terms_.end() ? Scalar() : it->second;
    }

    int min_degree() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    void add_term(int degree, const Scalar& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(degree, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Laurent& operator+=(const Laurent& o)
    {
        for (const auto& [d, c] : o.terms_)
            add_term(d, c);
        return *this;
    }
    Laurent& operator-=(const Laurent& o)
    {
        for (const auto& [d, c] : o.terms_)
            add_term(d, -c);
        return *this;
    }
    Laurent& operator*=(const Scalar& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [d, c] : terms_)
            c *= s;
        return *this;
    }

    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator-(Laurent a) { return a *= Scalar(-1); }
    friend Laurent operator*(Laurent a, const Scalar& s) { return a *= s; }
    friend Laurent operator*(const Scalar& s, Laurent a) { return a *= s; }

    /// Commutative Laurent product.
    friend Laurent operator*(const Laurent& a, const Laurent& b)
    {
        Laurent out;
        for (const auto& [da, ca] : a.terms_)
            for (const auto& [db, cb] : b.terms_)
                out.add_term(da + db, ca * cb);
        return out;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }

    /// Coefficient-wise map; degree and coefficient may both change.
    template <class F>
    Laurent transform(F&& f) const
    {
        Laurent out;
        for (const auto& [d, c] : terms_) {
            auto [nd, nc] = f(d, c);
            out.add_term(nd, nc);
        }
        return out;
    }

private:
    Terms terms_;
};

struct XTag {};
struct UTag {};

/// Element of V = C[x, x^-1].
using BaseElem = Laurent<XTag>;

std::string to_string(const BaseElem& a);

BaseElem base_mul(const BaseElem& a, const BaseElem& b);
/// Conjugates coefficients; x is hermitian.
BaseElem base_star(const BaseElem& a);
inline BaseElem x_pow(int d, const Scalar& c = Scalar(1)) { return BaseElem::monomial(d, c); }

/// gamma(x^d) = t^d x^d, a *-automorphism of V.
class BaseAutomorphism {
public:
    /// Throws std::invalid_argument for t in {0, 1, -1}.
    explicit BaseAutomorphism(Rational t);

    const Rational& t() const { return t_; }
    /// gamma^m applied coefficient-wise: x^d -> t^{md} x^d.
    BaseElem pow(const BaseElem& a, int m) const;
    BaseElem operator()(const BaseElem& a) const { return pow(a, 1); }

private:
    Rational t_;
};

inline BaseElem gamma_pow(const BaseAutomorphism& gamma, const BaseElem& a, int m)
{
    return gamma.pow(a, m);
}

}  // namespace fqpb
