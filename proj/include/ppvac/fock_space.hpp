#ifndef PPVAC_FOCK_SPACE_HPP
#define PPVAC_FOCK_SPACE_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ppvac/operator_algebra.hpp"

namespace ppvac {

/// Multi-mode Fock space truncated at `cutoff` photons per mode.
///
/// Matrix representations are products of truncated single-mode ladder
/// matrices, so they agree with the exact operator only on states whose
/// occupations stay below the cutoff throughout; see `is_safe`.
class FockSpace {
public:
    FockSpace(std::size_t modes, std::size_t cutoff);

    std::size_t modes() const { return modes_; }
    std::size_t cutoff() const { return cutoff_; }
    std::size_t dimension() const { return dimension_; }

    std::vector<std::size_t> occupation(std::size_t index) const;
    std::size_t index_of(std::span<const std::size_t> occupation) const;

    /// True when every mode occupation of basis state `index` is at most cutoff - margin.
    bool is_safe(std::size_t index, std::size_t margin) const;

    /// Dense matrix of `s`. Mode labels map to local mode slots through `slots`.
    Eigen::MatrixXcd matrix(const OperatorString& s, const std::map<ModeLabel, std::size_t>& slots) const;
    Eigen::MatrixXcd matrix(const NormalForm& nf, const std::map<ModeLabel, std::size_t>& slots) const;

    /// Normalized product coherent state (renormalized after truncation).
    Eigen::VectorXcd coherent_state(std::span<const std::complex<double>> amplitudes) const;

    /// <psi| s |psi> via sparse action on the basis.
    std::complex<double> expectation(const Eigen::VectorXcd& psi,
                                     const OperatorString& s,
                                     const std::map<ModeLabel, std::size_t>& slots) const;

private:
    // Applies s to basis state `index`. Returns false when the result is zero.
    bool apply(const OperatorString& s,
               const std::map<ModeLabel, std::size_t>& slots,
               std::size_t index,
               std::size_t& out_index,
               std::complex<double>& out_coeff) const;

    std::size_t modes_;
    std::size_t cutoff_;
    std::size_t dimension_;
};

}  // namespace ppvac

#endif
