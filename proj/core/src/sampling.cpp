#include "fqpb/sampling.hpp"

namespace fqpb {

int Sampler::integer(int lo, int hi)
{
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(rng_() % span);
}

Scalar Sampler::scalar()
{
    for (;;) {
        int re = integer(-3, 3);
        int im = integer(0, 2) == 0 ? integer(-2, 2) : 0;
        int den = integer(1, 3);
        Scalar s(Rational(re, den), Rational(im, den));
        if (!s.is_zero())
            return s;
    }
}

BaseElem Sampler::base(int max_terms, int max_degree)
{
    BaseElem out;
    int n = integer(1, max_terms);
    for (int k = 0; k < n; ++k)
        out.add_term(integer(-max_degree, max_degree), scalar());
    return out;
}

GroupElem Sampler::group(int max_terms, int max_degree)
{
    GroupElem out;
    int n = integer(1, max_terms);
    for (int k = 0; k < n; ++k)
        out.add_term(integer(-max_degree, max_degree), scalar());
    return out;
}

BundleElem Sampler::bundle(int max_grades, int max_grade)
{
    BundleElem out;
    int n = integer(1, max_grades);
    for (int k = 0; k < n; ++k)
        out.add(integer(-max_grade, max_grade), base(2, 2));
    return out;
}

BundleElem Sampler::bundle_of_grade(int m) { return {base(2, 2), m}; }

HorForm Sampler::hor()
{
    HorForm out;
    for (WedgeIndex I : kWedgeBasis)
        if (integer(0, 1) == 1)
            out[I] = bundle();
    return out;
}

HorForm Sampler::hor_of_degree(int k)
{
    HorForm out;
    for (WedgeIndex I : kWedgeBasis)
        if (wedge_degree(I) == k)
            out[I] = bundle();
    return out;
}

HorForm Sampler::invariant_form(int k)
{
    switch (k) {
    case 0:
        return HorForm(BundleElem(base()));
    case 1: {
        // a theta_+ + b theta_- with a of grade 1 and b of grade -1.
        BundleElem a = bundle_of_grade(1);
        BundleElem b = bundle_of_grade(-1);
        HorForm out;
        out[1] = a + b;
        out[2] = (a - b) * Scalar::i();
        return out;
    }
    default:
        return HorForm(BundleElem(base()), 3u);
    }
}

}  // namespace fqpb
