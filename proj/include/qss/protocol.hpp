#pragma once

// The full scheme: dealer distribution, sequential participant unitaries on a
// single travelling qudit, dealer measurement and checks, and secret recovery
// with hash verification. One run is one sequential state machine; everything
// it does lands in an append-only transcript.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qss/field.hpp"
#include "qss/hash.hpp"
#include "qss/qudit.hpp"
#include "qss/rng.hpp"
#include "qss/span_program.hpp"

namespace qss {

struct StateInconsistency : std::runtime_error {
    explicit StateInconsistency(const std::string& what) : std::runtime_error(what) {}
};

struct DealerSecretState {
    Fp secret;        // s = p_0
    Fp q0;            // private basis offset, known only to the dealer
    FpVector rho;     // rho[0] = S_i
    Fp shared_value;  // S_i
};

/// The travelling qudit plus the sender's classical exponents. Label and
/// vector must agree unless an adversary has touched the message.
struct RoundMessage {
    int sender;  // 0 = dealer, else participant index
    Fp p, q;
    StateLabel label;
    StateVector state;
};

struct DistributionResult {
    DealerSecretState dealer;
    ShareAssignment shares;
    HashCommitment commitments;
    RoundMessage initial;
    RecombinationVector lambda;  // canonical, derivable by every party
};

/// Distribution phase: pick rho (rho[0] = S_i fresh per run), route shares,
/// publish commitments, and dress the uniform state with U_{s, q0}.
/// fixed_rho / fixed_q0 pin the random choices for replay fixtures.
DistributionResult run_distribution(const Msp& msp, const AccessStructure& gamma, Fp secret,
                                    ParticipantSet set, RandomStream& rng,
                                    const std::optional<FpVector>& fixed_rho = std::nullopt,
                                    const std::optional<Fp>& fixed_q0 = std::nullopt);

/// One hop: aggregate (p, q) = (sum lambda_e s_e, sum lambda_e) over the
/// participant's rows, apply U_{p,q}, shift the label to match.
RoundMessage participant_step(const QuditSpace& space, const RoundMessage& in, int participant,
                              const std::vector<std::pair<std::size_t, Fp>>& owned_shares,
                              const RecombinationVector& lambda);

struct FinalizeResult {
    Fp q_i;           // measurement basis q0 + sum of lambda entries
    Fp r_i;           // measured outcome
    bool outcome_pass;   // r_i == s + S_i
    bool h1_pass;     // h(r_i - s) == H1
    bool released;    // r handed to the participants
    Fp released_value;
    std::string reason;  // set when not released
};

/// Dealer's measurement in basis q_i and the two acceptance checks. With
/// release_regardless (a dishonest dealer) the expected value s + S_i is
/// released even when the checks fail; failures stay on record.
FinalizeResult dealer_finalize(const QuditSpace& space, const RoundMessage& final_msg,
                               const DealerSecretState& dealer,
                               const RecombinationVector& lambda,
                               const HashCommitment& commitments, RandomStream& rng,
                               bool release_regardless = false);

struct RecoveryResult {
    Fp recovered;
    bool verified;  // h(recovered) == H2
};

/// S_i from the pooled shares, then s = r_i - S_i and the H2 check.
RecoveryResult participant_recover(Fp r_i, const ShareAssignment& shares,
                                   const RecombinationVector& lambda,
                                   const HashCommitment& commitments);

struct RoundRecord {
    int sender;  // 0 = dealer
    std::uint32_t p, q;
    std::uint32_t label_l, label_j;  // label after this sender's unitary
};

struct RecoveryRecord {
    int participant;
    std::uint32_t recovered;
    bool verified;
};

struct Verdicts {
    bool outcome_pass = false;
    bool h1_pass = false;
    bool released = false;
    bool h2_pass = false;
    bool verified = false;  // all checks green and r released
    std::string reason;
};

struct Transcript {
    std::string scenario_name;
    std::uint32_t d = 0;
    std::vector<std::vector<std::int64_t>> matrix;
    std::vector<int> psi;
    int n = 0;
    ParticipantSet set = 0;
    std::string h1_hex, h2_hex;
    std::vector<RoundRecord> rounds;
    std::optional<std::uint32_t> q_i;
    std::optional<std::uint32_t> r_i;
    std::vector<RecoveryRecord> recovered;
    Verdicts verdicts;
    std::uint64_t seed = 0;
};

/// Adversarial knobs for the lab. Offsets tamper a participant's unitary,
/// share deltas corrupt the share a participant receives (first owned row),
/// dealer_dishonest makes the dealer release despite failed checks.
struct TamperSpec {
    std::map<int, std::pair<std::int64_t, std::int64_t>> unitary_offset;
    std::map<int, std::int64_t> share_delta;
    bool dealer_dishonest = false;
};

/// Channel hook: observes/replaces the in-flight message on each leg.
/// Leg k carries the message just sent by sender #k (0 = dealer, then the
/// set's participants in ascending order).
using ChannelHook = std::function<RoundMessage(int leg, RoundMessage msg)>;

struct RunSpec {
    Msp msp;
    AccessStructure gamma;
    Fp secret;
    ParticipantSet set;
    std::optional<FpVector> fixed_rho;
    std::optional<Fp> fixed_q0;
    std::string scenario_name;
};

/// Composes distribution, the participant chain, finalize and recovery.
/// Protocol failures become transcript verdicts, not exceptions; only
/// NotAuthorized (before any quantum step) and malformed inputs throw.
Transcript run_full_protocol(const RunSpec& spec, RandomStream& rng,
                             const TamperSpec* tamper = nullptr,
                             const ChannelHook& channel = nullptr);

/// Participants of a set in protocol (ascending) order.
std::vector<int> chain_order(ParticipantSet set, int n);

}  // namespace qss
