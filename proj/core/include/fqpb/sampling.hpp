#pragma once

// Seeded random elements for property checks. Integers are derived from raw
// mt19937_64 output by modular reduction, so streams are identical across
// standard libraries.

#include "fqpb/horizontal.hpp"

#include <cstdint>
#include <random>

namespace fqpb {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform-ish integer in [lo, hi].
    int integer(int lo, int hi);
    /// Small nonzero Gaussian rational.
    Scalar scalar();
    BaseElem base(int max_terms = 3, int max_degree = 2);
    GroupElem group(int max_terms = 3, int max_degree = 2);
    BundleElem bundle(int max_grades = 2, int max_grade = 2);
    /// Component of a single grade m.
    BundleElem bundle_of_grade(int m);
    HorForm hor();
    HorForm hor_of_degree(int k);
    /// Random F^-invariant form of degree k: f, a theta_+ + b theta_- with
    /// grades (1, -1), or f theta_1 theta_2.
    HorForm invariant_form(int k);

private:
    std::mt19937_64 rng_;
};

}  // namespace fqpb
