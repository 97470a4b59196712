#ifndef PPVAC_QUADRATURE_HPP
#define PPVAC_QUADRATURE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ppvac {

/// Uniformly spaced nodes start, start + step, ..., start + (points - 1) step.
struct UniformGrid {
    double start = 0.0;
    double step = 0.0;
    std::size_t points = 0;

    double at(std::size_t i) const { return start + static_cast<double>(i) * step; }

    /// Grid of `points` nodes over [center - half_width, center + half_width].
    static UniformGrid centered(double center, double half_width, std::size_t points);

    std::vector<double> trapezoid_weights() const;

    /// Composite Simpson weights; needs an odd number of nodes.
    std::vector<double> simpson_weights() const;
};

/// Sum in a fixed binary-tree order. The result depends only on the input
/// order, never on how work was split across threads.
template <class T>
T pairwise_sum(std::span<const T> values)
{
    if (values.empty()) return T{};
    if (values.size() <= 8) {
        T total = values[0];
        for (std::size_t i = 1; i < values.size(); ++i) total += values[i];
        return total;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& values)
{
    return pairwise_sum(std::span<const T>(values));
}

/// sum_i weights[i] * values[i] with pairwise accumulation.
std::complex<double> weighted_sum(std::span<const double> weights, std::span<const std::complex<double>> values);

}  // namespace ppvac

#endif
