#pragma once

#include "linalg.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace polypar {

/* Seeded random generation for property suites. The engine is the
 * standardized mt19937_64 and all integer draws are mapped from raw bits
 * in-house, so sequences are reproducible across standard libraries. */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /* Uniform on [lo, hi], inclusive, unbiased (rejection sampling). */
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t max_valid = (UINT64_MAX / span) * span;
        for (;;) {
            const std::uint64_t r = eng_();
            if (r < max_valid) return lo + static_cast<std::int64_t>(r % span);
        }
    }

    /* Numerator uniform in [-num_mag, num_mag], denominator in [1, den_max]. */
    Rational rational(std::int64_t num_mag, std::int64_t den_max) {
        return rat(uniform(-num_mag, num_mag), uniform(1, den_max));
    }

    Rational positive_rational(std::int64_t num_max, std::int64_t den_max) {
        return rat(uniform(1, num_max), uniform(1, den_max));
    }

    Vec vector(Eigen::Index dim, std::int64_t num_mag = 9, std::int64_t den_max = 9) {
        Vec v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = rational(num_mag, den_max);
        return v;
    }

    Vec nonzero_vector(Eigen::Index dim, std::int64_t num_mag = 9, std::int64_t den_max = 9) {
        for (;;) {
            Vec v = vector(dim, num_mag, den_max);
            if (!is_zero_vec(v)) return v;
        }
    }

    Mat matrix(Eigen::Index rows, Eigen::Index cols, std::int64_t num_mag = 3,
               std::int64_t den_max = 3) {
        Mat m(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rational(num_mag, den_max);
        return m;
    }

    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1));
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

    Mat signed_permutation(Eigen::Index n) {
        const auto p = permutation(static_cast<std::size_t>(n));
        Mat m = Mat::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            m(static_cast<Eigen::Index>(p[static_cast<std::size_t>(i)]), i) =
                uniform(0, 1) == 0 ? 1 : -1;
        return m;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace polypar
