#include "ppvac/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "ppvac/constants.hpp"
#include "ppvac/errors.hpp"
#include "ppvac/parallel.hpp"
#include "ppvac/quadrature.hpp"

namespace ppvac {

namespace {

using cplx = std::complex<double>;

std::mt19937_64 chunk_engine(std::uint64_t seed, std::size_t chunk)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk),
                      static_cast<std::uint32_t>(static_cast<std::uint64_t>(chunk) >> 32)};
    return std::mt19937_64(seq);
}

// 53-bit uniform in [0, 1); spelled out so results do not depend on the
// standard library's distribution implementation.
double unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec3 draw(std::mt19937_64& rng, const Cylinder& g)
{
    const double r = 0.5 * g.diameter * std::sqrt(unit(rng));
    const double phi = 2.0 * pi * unit(rng);
    const double z = g.length * unit(rng);
    return {r * std::cos(phi), r * std::sin(phi), z};
}

Vec3 delta_k(const Vec3& k_pump, const Vec3& k_probe)
{
    return {k_pump[0] - k_probe[0], k_pump[1] - k_probe[1], k_pump[2] - k_probe[2]};
}

bool is_zero(const Vec3& v)
{
    return v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0;
}

cplx phase(const Vec3& dk, const Vec3& r)
{
    return std::polar(1.0, dk[0] * r[0] + dk[1] * r[1] + dk[2] * r[2]);
}

std::size_t chunk_count(std::size_t n)
{
    return (n + kSampleChunk - 1) / kSampleChunk;
}

PhaseSum finish(cplx x)
{
    return PhaseSum{x, std::norm(x), false};
}

}  // namespace

double Cylinder::area() const
{
    return pi * diameter * diameter / 4.0;
}

double Cylinder::volume() const
{
    return area() * length;
}

bool Cylinder::contains(const Vec3& r, double slack) const
{
    const double radius = 0.5 * diameter;
    return std::hypot(r[0], r[1]) <= radius * (1.0 + slack) && r[2] >= -slack * length
           && r[2] <= length * (1.0 + slack);
}

void Cylinder::validate() const
{
    if (!(diameter > 0.0)) throw PreconditionError("cylinder diameter must be positive");
    if (!(length > 0.0)) throw PreconditionError("cylinder length must be positive");
}

void EnsembleSpec::validate() const
{
    geometry.validate();
    if (n_mol < 1) throw PreconditionError("ensemble needs n_mol >= 1");
    if (positions.size() != n_mol)
        throw PreconditionError("ensemble has " + std::to_string(positions.size()) + " positions for n_mol = "
                                + std::to_string(n_mol));
    for (std::size_t j = 0; j < positions.size(); ++j)
        if (!geometry.contains(positions[j]))
            throw PreconditionError("position " + std::to_string(j) + " lies outside the sample cylinder");
}

Vec3 wavevector(const PulseSpec& pulse)
{
    const double k = pulse.omega_0 / si::femtosecond / si::c;
    return {k * pulse.direction[0], k * pulse.direction[1], k * pulse.direction[2]};
}

Vec3 direction_at_angle(double angle)
{
    if (angle == 0.0) return {0.0, 0.0, 1.0};
    return {std::sin(angle), 0.0, std::cos(angle)};
}

std::vector<Vec3> sample_positions(std::size_t n_mol, const Cylinder& geometry, std::uint64_t seed, unsigned workers)
{
    geometry.validate();
    if (n_mol < 1) throw PreconditionError("sample_positions needs n_mol >= 1");
    std::vector<Vec3> out(n_mol);
    parallel_for(chunk_count(n_mol), workers, [&](std::size_t c) {
        auto rng = chunk_engine(seed, c);
        const std::size_t end = std::min(n_mol, (c + 1) * kSampleChunk);
        for (std::size_t j = c * kSampleChunk; j < end; ++j) out[j] = draw(rng, geometry);
    });
    return out;
}

PhaseSum phase_sum(std::span<const Vec3> positions, const Vec3& k_pump, const Vec3& k_probe, unsigned workers)
{
    const Vec3 dk = delta_k(k_pump, k_probe);
    const std::size_t n = positions.size();
    if (is_zero(dk)) return finish(cplx{static_cast<double>(n), 0.0});

    std::vector<cplx> partial(chunk_count(n));
    parallel_for(partial.size(), workers, [&](std::size_t c) {
        const std::size_t begin = c * kSampleChunk;
        const std::size_t end = std::min(n, begin + kSampleChunk);
        std::vector<cplx> terms;
        terms.reserve(end - begin);
        for (std::size_t j = begin; j < end; ++j) terms.push_back(phase(dk, positions[j]));
        partial[c] = pairwise_sum(terms);
    });
    return finish(pairwise_sum(partial));
}

PhaseSum phase_sum(const EnsembleSpec& spec, unsigned workers)
{
    spec.validate();
    return phase_sum(std::span<const Vec3>(spec.positions), spec.k_pump, spec.k_probe, workers);
}

PhaseSum sampled_phase_sum(std::size_t n_mol,
                           const Cylinder& geometry,
                           const Vec3& k_pump,
                           const Vec3& k_probe,
                           std::uint64_t seed,
                           unsigned workers)
{
    geometry.validate();
    if (n_mol < 1) throw PreconditionError("phase sum needs n_mol >= 1");
    const Vec3 dk = delta_k(k_pump, k_probe);
    const double n = static_cast<double>(n_mol);
    if (is_zero(dk)) return finish(cplx{n, 0.0});
    if (n_mol > kMaxDirectPositions) return PhaseSum{cplx{std::sqrt(n), 0.0}, n, true};

    std::vector<cplx> partial(chunk_count(n_mol));
    parallel_for(partial.size(), workers, [&](std::size_t c) {
        auto rng = chunk_engine(seed, c);
        const std::size_t end = std::min(n_mol, (c + 1) * kSampleChunk);
        std::vector<cplx> terms;
        for (std::size_t j = c * kSampleChunk; j < end; ++j) terms.push_back(phase(dk, draw(rng, geometry)));
        partial[c] = pairwise_sum(terms);
    });
    return finish(pairwise_sum(partial));
}

namespace {

struct RatioTerms {
    double vacuum = 0.0;     // sum_n |Omega^vac_n Omega^P_n|^2
    double classical = 0.0;  // sum_n |Omega^P_n|^2 |Omega^P'_n|^2
};

RatioTerms ratio_terms(const PumpProbeSetup& setup)
{
    const CouplingSet c = compute_couplings(setup);
    if (c.delta_window != 0)
        throw UnsupportedRegimeError("superradiance ratio is only defined for non-degenerate excitons "
                                     "(Delta_alpha_beta = 0)");
    RatioTerms r;
    const Transition lower[2] = {Transition::alpha_g, Transition::beta_g};
    for (int n = 0; n < 2; ++n) {
        r.vacuum += std::norm(c.vac[n] * c.pump_up(lower[n]));
        r.classical += std::norm(c.pump_up(lower[n])) * std::norm(c.probe_up(lower[n]));
    }
    if (r.classical == 0.0) throw DomainError("classical stimulated-emission term vanishes; ratio undefined");
    return r;
}

}  // namespace

double superradiance_ratio(const PumpProbeSetup& setup, double n_mol, double x_squared)
{
    if (!(n_mol >= 1.0)) throw PreconditionError("superradiance ratio needs n_mol >= 1");
    if (!(x_squared >= 0.0)) throw PreconditionError("|X|^2 must be non-negative");
    const RatioTerms r = ratio_terms(setup);
    return x_squared * r.vacuum / (n_mol * r.classical);
}

double collinear_crossover(const PumpProbeSetup& setup)
{
    const RatioTerms r = ratio_terms(setup);
    if (r.vacuum == 0.0) throw DomainError("vacuum term vanishes; no crossover");
    return r.classical / r.vacuum;
}

double beat_period(const ExcitonBasis& basis)
{
    const double split = std::abs(basis.omega_alpha - basis.omega_beta);
    return split > 0.0 ? 2.0 * pi / split : std::numeric_limits<double>::infinity();
}

std::vector<double> ensemble_total_sweep(const PumpProbeSetup& setup,
                                         std::span<const double> waiting_times,
                                         double n_mol,
                                         double x_squared,
                                         bool include_vacuum)
{
    std::vector<double> out;
    out.reserve(waiting_times.size());
    for (double T : waiting_times) {
        const SignalComponents s = s_total_ensemble(setup, T, x_squared, n_mol);
        out.push_back(include_vacuum ? s.s_total : s.s_total - s.s_se_vacuum);
    }
    return out;
}

double beat_visibility(std::span<const double> waiting_times, std::span<const double> signal, double period)
{
    if (waiting_times.size() != signal.size() || signal.size() < 2)
        throw PreconditionError("beat visibility needs matching T and signal samples");
    const auto [tmin, tmax] = std::minmax_element(waiting_times.begin(), waiting_times.end());
    if (!(std::isfinite(period) && period > 0.0) || *tmax - *tmin < 3.0 * period)
        throw PreconditionError("T sweep covers " + std::to_string(*tmax - *tmin) + " fs; need at least 3 beat periods ("
                                + std::to_string(3.0 * period) + " fs)");
    const auto [lo, hi] = std::minmax_element(signal.begin(), signal.end());
    const double mean2 = *hi + *lo;
    if (mean2 == 0.0) throw DomainError("signal averages to zero; visibility undefined");
    return (*hi - *lo) / std::abs(mean2);
}

}  // namespace ppvac
