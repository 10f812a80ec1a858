#pragma once

// d-dimensional qudit states in the mutually unbiased basis family
//   |v_l^(j)> = (1/sqrt d) sum_k w^{k(l+jk)} |k>,   w = e^{2 pi i / d},
// the diagonal unitaries U_{x,y} = X_d^x Y_d^y, and projective measurement.
// States exist in two forms that every protocol step cross-checks: the
// symbolic label (l, j) and the numeric amplitude vector.

#include <complex>
#include <stdexcept>
#include <vector>

#include "qss/field.hpp"
#include "qss/rng.hpp"

namespace qss {

// Numeric conventions, used everywhere: norms are exact to 1e-12, fidelity
// and unbiasedness to 1e-9, and measurement tolerates input norm drift 1e-6.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kFidelityTol = 1e-9;
inline constexpr double kMeasureNormTol = 1e-6;

struct NormViolation : std::runtime_error {
    explicit NormViolation(double norm)
        : std::runtime_error("state norm " + std::to_string(norm) + " is not 1") {}
};

using Cx = std::complex<double>;
using StateVector = std::vector<Cx>;

class QuditSpace {
public:
    explicit QuditSpace(PrimeModulus d);

    PrimeModulus modulus() const noexcept { return d_; }
    std::uint32_t d() const noexcept { return d_.d(); }
    Cx omega() const { return pow_[1]; }
    /// w^e via table lookup; e may be any integer, reduced mod d.
    Cx omega_pow(std::int64_t e) const {
        std::int64_t r = e % d();
        if (r < 0) r += d();
        return pow_[static_cast<std::size_t>(r)];
    }

private:
    PrimeModulus d_;
    std::vector<Cx> pow_;
};

/// (l, j): the l-th vector of the j-th MUB basis.
struct StateLabel {
    Fp l, j;
};

/// (x, y) naming U_{x,y} = X_d^x Y_d^y.
struct UnitaryLabel {
    Fp x, y;
};

StateVector mub_vector(const QuditSpace& space, StateLabel label);

/// Computational basis vector |k>. Not part of the protocol's basis pool
/// (Alice's bases are indexed by j in D); used by tests and the adversary lab.
StateVector computational_vector(const QuditSpace& space, Fp k);

/// Diagonal action amplitude_m *= w^{x m + y m^2}; norm preserved.
StateVector apply_unitary(const QuditSpace& space, UnitaryLabel u, const StateVector& psi);

/// Symbolic twin of apply_unitary: (l, j) -> (l+x, j+y).
StateLabel shift_label(const QuditSpace& space, UnitaryLabel u, StateLabel label);

/// <a|b>.
Cx overlap(const StateVector& a, const StateVector& b);

/// |<a|b>|^2 — state comparison is always phase-blind.
double fidelity(const StateVector& a, const StateVector& b);

double norm(const StateVector& psi);

struct MeasureResult {
    Fp outcome;
    StateVector post_state;
};

/// Projective measurement in the basis_j-th MUB basis with Born sampling from
/// the injected stream. A state that already lies in the basis produces its
/// label deterministically (no randomness consumed).
MeasureResult measure(const QuditSpace& space, const StateVector& psi, Fp basis_j,
                      RandomStream& rng);

/// Same, in the computational basis (test/adversary use only).
MeasureResult measure_computational(const QuditSpace& space, const StateVector& psi,
                                    RandomStream& rng);

}  // namespace qss
