#pragma once

// Executable attack analyses: the entangle-and-measure constraint checker,
// intercept-resend trial statistics, forgery trials, and the collusion
// privacy check. Trials are pure given (seed, index), so batches replay.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qss/protocol.hpp"
#include "qss/qudit.hpp"
#include "qss/rng.hpp"
#include "qss/span_program.hpp"

namespace qss {

struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

struct NotUnauthorized : std::runtime_error {
    explicit NotUnauthorized(const std::string& what) : std::runtime_error(what) {}
};

/// Eve's diagonal entangling attack: U_E |k>|E> = a_k |k>|e_k> with |a_k| = 1
/// and unit ancilla vectors e_k (the residue of the general attack once the
/// off-diagonal coefficients are forced to zero).
struct EntanglingAttack {
    std::uint32_t d = 0;
    std::uint32_t ancilla_dim = 0;
    std::vector<Cx> coeff;              // a_k
    std::vector<StateVector> ancilla;   // e_k

    void validate() const;  // throws InvariantViolation

    static EntanglingAttack identity(std::uint32_t d, std::uint32_t ancilla_dim);
    /// All a_k|e_k> equal: the zero-disturbance family.
    static EntanglingAttack random_aligned(std::uint32_t d, std::uint32_t ancilla_dim,
                                           RandomStream& rng);
    /// Independent random a_k, e_k: pairwise-distinct with probability 1.
    static EntanglingAttack random_unaligned(std::uint32_t d, std::uint32_t ancilla_dim,
                                             RandomStream& rng);
};

struct EntangleAnalysis {
    double max_disturbance;         // worst case over every MUB state and |k>
    double eve_distinguishability;  // max trace distance between conditional
                                    // ancilla states within one basis family
};

/// Builds the post-attack joint state for every MUB state (all l, j) and for
/// the computational basis, then reports the worst disturbance and the most
/// distinguishable pair of Eve's conditional ancilla states.
EntangleAnalysis entangle_attack_analyze(const QuditSpace& space,
                                         const EntanglingAttack& attack);

struct AttackStats {
    std::uint64_t trials = 0;
    double eve_correct_basis_rate = 0.0;
    double eve_secret_success_rate = 0.0;
    double alice_detection_rate = 0.0;        // dealer's r_i / H1 checks fired
    double participant_detection_rate = 0.0;  // H2 check fired on a released run

    /// 3-sigma binomial radius around an observed rate.
    static double radius3(double rate, std::uint64_t trials);
};

/// Eve measures the in-flight qudit at one leg in a uniformly chosen MUB
/// basis, resends the collapsed state, and the run completes. A trial is a
/// sequence of `qudits` runs; eve_secret_success counts trials whose every
/// intercept guessed the basis correctly.
AttackStats intercept_resend_trials(const RunSpec& spec, int intercept_leg,
                                    std::uint64_t n_trials, std::uint32_t qudits,
                                    RandomStream& rng);

enum class TamperKind { Identity, UnitaryOffset, FakeShare };

struct ForgerySpec {
    TamperKind kind = TamperKind::Identity;
    int party = 0;                 // offending participant / fake-share receiver
    std::int64_t dp = 0, dq = 0;   // unitary offset
    std::int64_t delta = 0;        // share perturbation
};

/// Lowers a forgery description onto the protocol's tamper knobs. A fake
/// share marks the dealer dishonest: she releases her expected r_i so the
/// participants' H2 check is the one that can catch her.
TamperSpec make_tamper(const RunSpec& spec, const ForgerySpec& forgery);

/// Runs the protocol under the tamper and records which check fires.
AttackStats forgery_trials(const RunSpec& spec, const ForgerySpec& forgery,
                           std::uint64_t n_trials, RandomStream& rng);

struct CollusionVerdict {
    bool identical;                 // share distributions match across secrets
    std::size_t tuples_per_secret;  // d^(l-1)
};

/// Exhaustively enumerates every rho with rho[0] = sigma and rho[0] = sigma'
/// and compares the multisets of B-restricted share vectors. Throws
/// NotUnauthorized when B spans the target (nothing to check).
CollusionVerdict collusion_check(const Msp& msp, ParticipantSet b, Fp sigma, Fp sigma_prime);

}  // namespace qss
