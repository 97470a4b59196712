#include "ppvac/exciton.hpp"

#include <cmath>
#include <string>

#include "ppvac/errors.hpp"

namespace ppvac {

void DimerSpec::validate() const
{
    if (!(omega_a > 0.0) || !(omega_b > 0.0))
        throw PreconditionError("dimer site frequencies must be positive");
    if (!(mu_ag >= 0.0) || !(mu_bg >= 0.0))
        throw PreconditionError("dimer site dipoles must be non-negative");
    if (!std::isfinite(coupling_j))
        throw PreconditionError("dimer coupling must be finite");
}

ExcitonBasis diagonalize_dimer(const DimerSpec& spec)
{
    spec.validate();

    ExcitonBasis basis;
    basis.delta = 0.5 * (spec.omega_a - spec.omega_b);
    basis.omega_bar = 0.5 * (spec.omega_a + spec.omega_b);
    basis.theta = 0.5 * std::atan2(spec.coupling_j, basis.delta);

    // hypot(delta, J) == delta sec(2 theta), but stays finite at delta = 0.
    const double half_split = std::hypot(basis.delta, spec.coupling_j);
    basis.omega_g = 0.0;
    basis.omega_alpha = basis.omega_bar + half_split;
    basis.omega_beta = basis.omega_bar - half_split;
    basis.omega_f = spec.omega_a + spec.omega_b;
    basis.mu = transform_dipoles(spec, basis.theta);
    return basis;
}

ExcitonDipoles transform_dipoles(const DimerSpec& spec, double theta)
{
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // <f|mu|a> = mu_bg and <f|mu|b> = mu_ag: the second chromophore gets excited.
    return ExcitonDipoles{
        .alpha_g = c * spec.mu_ag + s * spec.mu_bg,
        .beta_g = -s * spec.mu_ag + c * spec.mu_bg,
        .f_alpha = c * spec.mu_bg + s * spec.mu_ag,
        .f_beta = -s * spec.mu_bg + c * spec.mu_ag,
    };
}

}  // namespace ppvac
