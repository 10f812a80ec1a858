#include "qss/qudit.hpp"

#include <cmath>
#include <numbers>

namespace qss {

QuditSpace::QuditSpace(PrimeModulus d) : d_(d), pow_(d.d()) {
    for (std::uint32_t e = 0; e < d.d(); ++e)
        pow_[e] = std::polar(1.0, 2.0 * std::numbers::pi * e / d.d());
    if (std::abs(std::abs(pow_[1]) - 1.0) > kNormTol)
        throw std::logic_error("root of unity is off the unit circle");
    Cx wd = 1.0;
    for (std::uint32_t e = 0; e < d.d(); ++e) wd *= pow_[1];
    if (std::abs(wd - Cx{1.0, 0.0}) > 1e-9)
        throw std::logic_error("omega^d deviates from 1");
}

StateVector mub_vector(const QuditSpace& space, StateLabel label) {
    if (label.l.modulus() != space.modulus() || label.j.modulus() != space.modulus())
        throw ModulusMismatch{};
    const std::uint32_t d = space.d();
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    StateVector psi(d);
    const std::int64_t l = label.l.value(), j = label.j.value();
    for (std::uint32_t k = 0; k < d; ++k)
        psi[k] = scale * space.omega_pow(k * (l + j * k));
    return psi;
}

StateVector computational_vector(const QuditSpace& space, Fp k) {
    if (k.modulus() != space.modulus()) throw ModulusMismatch{};
    StateVector psi(space.d(), Cx{0.0, 0.0});
    psi[k.value()] = 1.0;
    return psi;
}

StateVector apply_unitary(const QuditSpace& space, UnitaryLabel u, const StateVector& psi) {
    if (psi.size() != space.d())
        throw DimensionMismatch("state has wrong dimension for this space");
    StateVector out(psi.size());
    const std::int64_t x = u.x.value(), y = u.y.value();
    for (std::size_t m = 0; m < psi.size(); ++m)
        out[m] = space.omega_pow(x * std::int64_t(m) + y * std::int64_t(m) * std::int64_t(m)) *
                 psi[m];
    return out;
}

StateLabel shift_label(const QuditSpace& space, UnitaryLabel u, StateLabel label) {
    (void)space;
    return StateLabel{label.l + u.x, label.j + u.y};
}

Cx overlap(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("overlap of different dimensions");
    Cx acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
    return acc;
}

double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(overlap(a, b));
}

double norm(const StateVector& psi) {
    double acc = 0.0;
    for (const Cx& c : psi) acc += std::norm(c);
    return std::sqrt(acc);
}

static MeasureResult measure_in_basis(const std::vector<StateVector>& basis,
                                      const PrimeModulus mod, const StateVector& psi,
                                      RandomStream& rng) {
    const double n = norm(psi);
    if (std::abs(n - 1.0) > kMeasureNormTol) throw NormViolation(n);

    std::vector<double> prob(basis.size());
    for (std::size_t l = 0; l < basis.size(); ++l) {
        prob[l] = fidelity(basis[l], psi);
        if (prob[l] > 1.0 - kFidelityTol)  // already a basis vector: deterministic
            return MeasureResult{Fp(std::int64_t(l), mod), basis[l]};
    }
    const double u = rng.uniform_real();
    double acc = 0.0;
    std::size_t outcome = basis.size() - 1;  // guard against rounding shortfall
    for (std::size_t l = 0; l < basis.size(); ++l) {
        acc += prob[l];
        if (u < acc) {
            outcome = l;
            break;
        }
    }
    return MeasureResult{Fp(std::int64_t(outcome), mod), basis[outcome]};
}

MeasureResult measure(const QuditSpace& space, const StateVector& psi, Fp basis_j,
                      RandomStream& rng) {
    if (basis_j.modulus() != space.modulus()) throw ModulusMismatch{};
    std::vector<StateVector> basis;
    basis.reserve(space.d());
    for (std::uint32_t l = 0; l < space.d(); ++l)
        basis.push_back(mub_vector(space, StateLabel{Fp(l, space.modulus()), basis_j}));
    return measure_in_basis(basis, space.modulus(), psi, rng);
}

MeasureResult measure_computational(const QuditSpace& space, const StateVector& psi,
                                    RandomStream& rng) {
    std::vector<StateVector> basis;
    basis.reserve(space.d());
    for (std::uint32_t k = 0; k < space.d(); ++k)
        basis.push_back(computational_vector(space, Fp(k, space.modulus())));
    return measure_in_basis(basis, space.modulus(), psi, rng);
}

}  // namespace qss
