#ifndef PPVAC_OPERATOR_ALGEBRA_HPP
#define PPVAC_OPERATOR_ALGEBRA_HPP

#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ppvac/photon_field.hpp"

namespace ppvac {

/// Identifies one boson mode: which pulse it belongs to and its grid index.
/// Modes with different labels commute, including across pulses.
struct ModeLabel {
    int pulse = 0;
    int index = 0;

    auto operator<=>(const ModeLabel&) const = default;
};

enum class Ladder : std::uint8_t { creation, annihilation };

struct LadderOp {
    ModeLabel mode;
    Ladder kind = Ladder::annihilation;

    auto operator<=>(const LadderOp&) const = default;
};

/// Product of ladder operators with a complex prefactor.
///
/// Factors are stored in written order: the rightmost factor acts first on a ket.
struct OperatorString {
    std::vector<LadderOp> factors;
    std::complex<double> scalar{1.0, 0.0};

    static OperatorString identity(std::complex<double> scalar = 1.0);
    static OperatorString create(ModeLabel mode);
    static OperatorString annihilate(ModeLabel mode);

    /// Hermitian adjoint: reversed order, creation <-> annihilation, conjugated scalar.
    OperatorString adjoint() const;

    /// True when every creation operator sits left of every annihilation operator.
    bool is_normal_ordered() const;

    std::size_t length() const { return factors.size(); }

    std::string to_string() const;
};

/// Operator product (concatenation, scalars multiply).
OperatorString operator*(const OperatorString& lhs, const OperatorString& rhs);

/// Exact normally ordered expansion of an operator string.
///
/// Terms are in canonical order (creations sorted, then annihilations sorted),
/// like terms are merged and terms with exactly zero coefficient dropped.
struct NormalForm {
    std::vector<OperatorString> terms;

    std::size_t size() const { return terms.size(); }

    /// Coefficient of the term whose factors equal `factors`, or 0.
    std::complex<double> coefficient(const std::vector<LadderOp>& factors) const;
};

NormalForm normal_order(const OperatorString& s);

/// Expectation value in the product coherent state described by `pulses`,
/// where pulse id p refers to pulses[p]. Each mode is replaced by its
/// dimensionless boson amplitude (alpha_k sqrt(d_omega)) after normal
/// ordering. Throws ConfigError for labels that do not resolve.
std::complex<double> coherent_expectation(const OperatorString& s,
                                          std::span<const CoherentAmplitudes> pulses);

std::complex<double> coherent_expectation(const NormalForm& nf,
                                          std::span<const CoherentAmplitudes> pulses);

/// Operator ordering of a two-time field correlation <E(t') E(t)>.
enum class FieldOrdering {
    minus_plus,  // <E^-(t') E^+(t)>, normally ordered already
    plus_minus,  // <E^+(t') E^-(t)>, picks up the vacuum commutator
};

/// Structure of a two-point field correlation after normal ordering:
/// <..> = product * F(t') G(t) + same_mode_extra * sum_k |g_k|^2 exp(...).
/// Obtained by normal ordering prototype pairs for distinct and equal modes.
struct TwoPointKernel {
    std::complex<double> product{0.0, 0.0};
    std::complex<double> same_mode_extra{0.0, 0.0};
};

TwoPointKernel two_point_kernel(FieldOrdering ordering);

/// Two-time correlation (V^2/m^2) of a single pulse field, assembled by
/// explicitly normal ordering and evaluating each of the M^2 mode pairs.
/// Costs O(M^2); intended for verification on small grids.
std::complex<double> field_correlation(const PulseSpec& pulse,
                                       const CoherentAmplitudes& amps,
                                       FieldOrdering ordering,
                                       double t_prime,
                                       double t);

}  // namespace ppvac

#endif
