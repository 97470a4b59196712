#include "ppvac/quadrature.hpp"

#include <string>

#include "ppvac/errors.hpp"

namespace ppvac {

UniformGrid UniformGrid::centered(double center, double half_width, std::size_t points)
{
    if (points < 2) throw PreconditionError("a quadrature grid needs at least 2 points");
    if (!(half_width > 0.0)) throw PreconditionError("quadrature half width must be positive");
    return UniformGrid{center - half_width, 2.0 * half_width / static_cast<double>(points - 1), points};
}

std::vector<double> UniformGrid::trapezoid_weights() const
{
    std::vector<double> w(points, step);
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

std::vector<double> UniformGrid::simpson_weights() const
{
    if (points < 3 || points % 2 == 0)
        throw PreconditionError("Simpson's rule needs an odd number (>= 3) of nodes, got " + std::to_string(points));
    std::vector<double> w(points);
    for (std::size_t i = 0; i < points; ++i) w[i] = (i % 2 == 1 ? 4.0 : 2.0) * step / 3.0;
    w.front() = step / 3.0;
    w.back() = step / 3.0;
    return w;
}

std::complex<double> weighted_sum(std::span<const double> weights, std::span<const std::complex<double>> values)
{
    std::vector<std::complex<double>> terms(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) terms[i] = weights[i] * values[i];
    return pairwise_sum(std::span<const std::complex<double>>(terms));
}

}  // namespace ppvac
