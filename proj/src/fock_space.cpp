#include "ppvac/fock_space.hpp"

#include <cmath>
#include <string>

#include "ppvac/errors.hpp"

namespace ppvac {

FockSpace::FockSpace(std::size_t modes, std::size_t cutoff) : modes_(modes), cutoff_(cutoff), dimension_(1)
{
    if (modes == 0) throw PreconditionError("Fock space needs at least one mode");
    for (std::size_t m = 0; m < modes; ++m) dimension_ *= cutoff + 1;
}

std::vector<std::size_t> FockSpace::occupation(std::size_t index) const
{
    std::vector<std::size_t> occ(modes_);
    for (std::size_t m = 0; m < modes_; ++m) {
        occ[m] = index % (cutoff_ + 1);
        index /= cutoff_ + 1;
    }
    return occ;
}

std::size_t FockSpace::index_of(std::span<const std::size_t> occupation) const
{
    std::size_t index = 0;
    for (std::size_t m = modes_; m-- > 0;) index = index * (cutoff_ + 1) + occupation[m];
    return index;
}

bool FockSpace::is_safe(std::size_t index, std::size_t margin) const
{
    for (auto n : occupation(index))
        if (n + margin > cutoff_) return false;
    return true;
}

bool FockSpace::apply(const OperatorString& s,
                      const std::map<ModeLabel, std::size_t>& slots,
                      std::size_t index,
                      std::size_t& out_index,
                      std::complex<double>& out_coeff) const
{
    auto occ = occupation(index);
    std::complex<double> coeff = s.scalar;
    for (auto it = s.factors.rbegin(); it != s.factors.rend(); ++it) {
        const auto slot = slots.find(it->mode);
        if (slot == slots.end() || slot->second >= modes_)
            throw ConfigError("mode label has no slot in the Fock space");
        auto& n = occ[slot->second];
        if (it->kind == Ladder::annihilation) {
            if (n == 0) return false;
            coeff *= std::sqrt(static_cast<double>(n));
            --n;
        } else {
            if (n == cutoff_) return false;
            coeff *= std::sqrt(static_cast<double>(n + 1));
            ++n;
        }
    }
    out_index = index_of(occ);
    out_coeff = coeff;
    return true;
}

Eigen::MatrixXcd FockSpace::matrix(const OperatorString& s, const std::map<ModeLabel, std::size_t>& slots) const
{
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dimension_),
                                                  static_cast<Eigen::Index>(dimension_));
    for (std::size_t col = 0; col < dimension_; ++col) {
        std::size_t row = 0;
        std::complex<double> c;
        if (apply(s, slots, col, row, c))
            out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += c;
    }
    return out;
}

Eigen::MatrixXcd FockSpace::matrix(const NormalForm& nf, const std::map<ModeLabel, std::size_t>& slots) const
{
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dimension_),
                                                  static_cast<Eigen::Index>(dimension_));
    for (const auto& term : nf.terms) out += matrix(term, slots);
    return out;
}

Eigen::VectorXcd FockSpace::coherent_state(std::span<const std::complex<double>> amplitudes) const
{
    if (amplitudes.size() != modes_)
        throw PreconditionError("coherent state needs one amplitude per mode, got "
                                + std::to_string(amplitudes.size()));
    // Per-mode coefficients alpha^n / sqrt(n!), combined as a tensor product.
    std::vector<std::vector<std::complex<double>>> single(modes_);
    for (std::size_t m = 0; m < modes_; ++m) {
        single[m].resize(cutoff_ + 1);
        single[m][0] = 1.0;
        for (std::size_t n = 1; n <= cutoff_; ++n)
            single[m][n] = single[m][n - 1] * amplitudes[m] / std::sqrt(static_cast<double>(n));
    }
    Eigen::VectorXcd psi(static_cast<Eigen::Index>(dimension_));
    for (std::size_t i = 0; i < dimension_; ++i) {
        const auto occ = occupation(i);
        std::complex<double> v = 1.0;
        for (std::size_t m = 0; m < modes_; ++m) v *= single[m][occ[m]];
        psi(static_cast<Eigen::Index>(i)) = v;
    }
    psi.normalize();
    return psi;
}

std::complex<double> FockSpace::expectation(const Eigen::VectorXcd& psi,
                                            const OperatorString& s,
                                            const std::map<ModeLabel, std::size_t>& slots) const
{
    std::complex<double> total{0.0, 0.0};
    for (std::size_t col = 0; col < dimension_; ++col) {
        const auto amp = psi(static_cast<Eigen::Index>(col));
        if (amp == std::complex<double>{0.0, 0.0}) continue;
        std::size_t row = 0;
        std::complex<double> c;
        if (apply(s, slots, col, row, c)) total += std::conj(psi(static_cast<Eigen::Index>(row))) * c * amp;
    }
    return total;
}

}  // namespace ppvac
