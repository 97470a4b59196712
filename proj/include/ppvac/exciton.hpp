#ifndef PPVAC_EXCITON_HPP
#define PPVAC_EXCITON_HPP

namespace ppvac {

/// Site-basis parameters of a coupled two-chromophore dimer.
///
/// Frequencies are angular frequencies in rad/fs. Dipoles are scalar
/// projections onto the field polarization, in C m.
struct DimerSpec {
    double omega_a = 0.0;
    double omega_b = 0.0;
    double coupling_j = 0.0;
    double mu_ag = 0.0;
    double mu_bg = 0.0;

    /// Throws PreconditionError unless both site frequencies are positive
    /// and both dipoles non-negative.
    void validate() const;
};

/// Transition dipoles in the exciton basis {g, alpha, beta, f}.
struct ExcitonDipoles {
    double alpha_g = 0.0;
    double beta_g = 0.0;
    double f_alpha = 0.0;
    double f_beta = 0.0;
};

/// Diagonalized dimer: eigenenergies, mixing angle and exciton dipoles.
///
/// |alpha> = cos(theta)|a> + sin(theta)|b>, |beta> = -sin(theta)|a> + cos(theta)|b>.
/// omega_alpha >= omega_beta always; the ground energy is pinned to zero.
struct ExcitonBasis {
    double theta = 0.0;
    double delta = 0.0;
    double omega_bar = 0.0;
    double omega_g = 0.0;
    double omega_alpha = 0.0;
    double omega_beta = 0.0;
    double omega_f = 0.0;
    ExcitonDipoles mu;

    /// omega_alpha - omega_beta, the quantum-beat frequency.
    double splitting() const { return omega_alpha - omega_beta; }
};

ExcitonBasis diagonalize_dimer(const DimerSpec& spec);

/// Rotates the site dipoles into the exciton basis for mixing angle `theta`.
ExcitonDipoles transform_dipoles(const DimerSpec& spec, double theta);

}  // namespace ppvac

#endif
