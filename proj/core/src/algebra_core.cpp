#include "fqpb/algebra_core.hpp"

#include <sstream>
#include <stdexcept>

namespace fqpb {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i >= part.size())
            return false;
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? std::string("1") : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational '" + s + "'");
    if (num[0] == '+')
        num.erase(0, 1);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + s + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational rpow(const Rational& r, int n)
{
    if (n < 0) {
        if (r == 0)
            throw std::domain_error("negative power of zero");
        return rpow(1 / r, -n);
    }
    Rational base = r, out = 1;
    for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
        if (e & 1u)
            out *= base;
        base *= base;
    }
    return out;
}

Scalar Scalar::inverse() const
{
    if (is_zero())
        throw std::domain_error("division by zero scalar");
    Rational norm = re_ * re_ + im_ * im_;
    return {re_ / norm, -im_ / norm};
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string to_string(const Scalar& s)
{
    if (s.is_real())
        return to_string(s.re());
    std::string im = s.im() == 1 ? "i" : s.im() == -1 ? "-i" : to_string(s.im()) + "*i";
    if (sgn(s.re()) == 0)
        return im;
    std::string sep = sgn(s.im()) > 0 ? "+" : "";
    return "(" + to_string(s.re()) + sep + im + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

std::string to_string(const BaseElem& a)
{
    if (a.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : a.terms()) {
        if (!first)
            os << " + ";
        first = false;
        os << to_string(c);
        if (d != 0)
            os << "*x^" << d;
    }
    return os.str();
}

BaseElem base_mul(const BaseElem& a, const BaseElem& b) { return a * b; }

BaseElem base_star(const BaseElem& a)
{
    return a.transform([](int d, const Scalar& c) { return std::pair{d, c.conj()}; });
}

BaseAutomorphism::BaseAutomorphism(Rational t) : t_(std::move(t))
{
    t_.canonicalize();
    if (t_ == 0 || t_ == 1 || t_ == -1)
        throw std::invalid_argument("gamma parameter t must not be 0, 1 or -1");
}

BaseElem BaseAutomorphism::pow(const BaseElem& a, int m) const
{
    if (m == 0)
        return a;
    return a.transform([&](int d, const Scalar& c) {
        return std::pair{d, c * Scalar(rpow(t_, m * d))};
    });
}

}  // namespace fqpb
