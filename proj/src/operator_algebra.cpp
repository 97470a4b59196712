#include "ppvac/operator_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ppvac/errors.hpp"

namespace ppvac {

OperatorString OperatorString::identity(std::complex<double> scalar)
{
    return OperatorString{{}, scalar};
}

OperatorString OperatorString::create(ModeLabel mode)
{
    return OperatorString{{LadderOp{mode, Ladder::creation}}, 1.0};
}

OperatorString OperatorString::annihilate(ModeLabel mode)
{
    return OperatorString{{LadderOp{mode, Ladder::annihilation}}, 1.0};
}

OperatorString OperatorString::adjoint() const
{
    OperatorString out;
    out.scalar = std::conj(scalar);
    out.factors.reserve(factors.size());
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        const Ladder flipped = it->kind == Ladder::creation ? Ladder::annihilation : Ladder::creation;
        out.factors.push_back(LadderOp{it->mode, flipped});
    }
    return out;
}

bool OperatorString::is_normal_ordered() const
{
    bool seen_annihilation = false;
    for (const auto& f : factors) {
        if (f.kind == Ladder::annihilation) seen_annihilation = true;
        else if (seen_annihilation) return false;
    }
    return true;
}

std::string OperatorString::to_string() const
{
    std::ostringstream os;
    os << '(' << scalar.real() << (scalar.imag() < 0 ? "-" : "+") << std::abs(scalar.imag()) << "i)";
    for (const auto& f : factors) {
        os << " a" << (f.kind == Ladder::creation ? "+" : "") << '[' << f.mode.pulse << ',' << f.mode.index << ']';
    }
    return os.str();
}

OperatorString operator*(const OperatorString& lhs, const OperatorString& rhs)
{
    OperatorString out;
    out.scalar = lhs.scalar * rhs.scalar;
    out.factors = lhs.factors;
    out.factors.insert(out.factors.end(), rhs.factors.begin(), rhs.factors.end());
    return out;
}

std::complex<double> NormalForm::coefficient(const std::vector<LadderOp>& factors) const
{
    for (const auto& t : terms)
        if (t.factors == factors) return t.scalar;
    return {0.0, 0.0};
}

namespace {

// Creations and annihilations each commute among themselves, so a normally
// ordered product has a unique sorted representative.
void canonicalize(std::vector<LadderOp>& factors)
{
    auto split = std::stable_partition(factors.begin(), factors.end(),
                                       [](const LadderOp& f) { return f.kind == Ladder::creation; });
    std::sort(factors.begin(), split);
    std::sort(split, factors.end());
}

}  // namespace

NormalForm normal_order(const OperatorString& s)
{
    std::map<std::vector<LadderOp>, std::complex<double>> collected;
    std::vector<OperatorString> pending{s};

    while (!pending.empty()) {
        OperatorString cur = std::move(pending.back());
        pending.pop_back();

        std::size_t i = 0;
        const std::size_t n = cur.factors.size();
        while (i + 1 < n && !(cur.factors[i].kind == Ladder::annihilation
                               && cur.factors[i + 1].kind == Ladder::creation))
            ++i;

        if (i + 1 >= n) {
            canonicalize(cur.factors);
            collected[cur.factors] += cur.scalar;
            continue;
        }

        // a_l a_k^+ = a_k^+ a_l + delta_{lk}
        if (cur.factors[i].mode == cur.factors[i + 1].mode) {
            OperatorString contracted;
            contracted.scalar = cur.scalar;
            contracted.factors.reserve(n - 2);
            contracted.factors.insert(contracted.factors.end(), cur.factors.begin(), cur.factors.begin() + i);
            contracted.factors.insert(contracted.factors.end(), cur.factors.begin() + i + 2, cur.factors.end());
            pending.push_back(std::move(contracted));
        }
        std::swap(cur.factors[i], cur.factors[i + 1]);
        pending.push_back(std::move(cur));
    }

    NormalForm out;
    for (auto& [factors, coeff] : collected) {
        if (coeff == std::complex<double>{0.0, 0.0}) continue;
        out.terms.push_back(OperatorString{factors, coeff});
    }
    return out;
}

namespace {

std::complex<double> amplitude_of(const ModeLabel& m, std::span<const CoherentAmplitudes> pulses)
{
    if (m.pulse < 0 || static_cast<std::size_t>(m.pulse) >= pulses.size())
        throw ConfigError("operator references unknown pulse id " + std::to_string(m.pulse));
    const auto& amps = pulses[static_cast<std::size_t>(m.pulse)];
    if (m.index < 0 || static_cast<std::size_t>(m.index) >= amps.size())
        throw ConfigError("operator references mode " + std::to_string(m.index) + " outside the grid of pulse "
                          + std::to_string(m.pulse));
    return amps.boson_amplitude(static_cast<std::size_t>(m.index));
}

}  // namespace

std::complex<double> coherent_expectation(const NormalForm& nf, std::span<const CoherentAmplitudes> pulses)
{
    std::complex<double> total{0.0, 0.0};
    for (const auto& term : nf.terms) {
        std::complex<double> value = term.scalar;
        for (const auto& f : term.factors) {
            const auto a = amplitude_of(f.mode, pulses);
            value *= f.kind == Ladder::creation ? std::conj(a) : a;
        }
        total += value;
    }
    return total;
}

std::complex<double> coherent_expectation(const OperatorString& s, std::span<const CoherentAmplitudes> pulses)
{
    return coherent_expectation(normal_order(s), pulses);
}

TwoPointKernel two_point_kernel(FieldOrdering ordering)
{
    // Prototype pairs over two distinct labels and one repeated label.
    const ModeLabel l{0, 0};
    const ModeLabel k{0, 1};
    const auto pair = [&](ModeLabel first, ModeLabel second) {
        return ordering == FieldOrdering::minus_plus
                   ? OperatorString::create(first) * OperatorString::annihilate(second)
                   : OperatorString::annihilate(first) * OperatorString::create(second);
    };

    TwoPointKernel kernel;
    // Distinct modes: the only surviving structure is a^+_k a_l (or a^+_l a_k).
    const NormalForm distinct = normal_order(pair(l, k));
    for (const auto& t : distinct.terms)
        if (t.length() == 2) kernel.product += t.scalar;

    // Equal modes: anything beyond the product term is the commutator remainder.
    const NormalForm same = normal_order(pair(l, l));
    for (const auto& t : same.terms)
        if (t.length() == 0) kernel.same_mode_extra += t.scalar;
    return kernel;
}

std::complex<double> field_correlation(const PulseSpec& pulse,
                                       const CoherentAmplitudes& amps,
                                       FieldOrdering ordering,
                                       double t_prime,
                                       double t)
{
    const double g = mode_field_amplitude(pulse, amps.mode_spacing);
    const std::complex<double> i{0.0, 1.0};
    const auto m = static_cast<int>(amps.size());
    const std::vector<CoherentAmplitudes> pulses{amps};

    // E^+(t) = sum_k i g a_k exp(-i w_k (t - t_j)),  E^- = (E^+)^dagger
    const auto e_plus = [&](int idx, double time) {
        const double w = amps.mode_freqs[static_cast<std::size_t>(idx)];
        return i * g * std::polar(1.0, -w * (time - pulse.arrival_time));
    };

    std::complex<double> total{0.0, 0.0};
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            OperatorString s;
            std::complex<double> prefactor;
            if (ordering == FieldOrdering::minus_plus) {
                s = OperatorString::create({0, a}) * OperatorString::annihilate({0, b});
                prefactor = std::conj(e_plus(a, t_prime)) * e_plus(b, t);
            } else {
                s = OperatorString::annihilate({0, a}) * OperatorString::create({0, b});
                prefactor = e_plus(a, t_prime) * std::conj(e_plus(b, t));
            }
            total += prefactor * coherent_expectation(s, pulses);
        }
    }
    return total;
}

}  // namespace ppvac
