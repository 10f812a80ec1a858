#pragma once

// Access structures, monotone span programs and the classical linear secret
// sharing layer built on them. Participants are numbered 1..n and sets are
// bitmasks (bit i-1 = participant i); n <= 16 keeps 2^n scans trivial.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qss/field.hpp"

namespace qss {

struct NotAuthorized : std::runtime_error {
    explicit NotAuthorized(const std::string& what) : std::runtime_error(what) {}
};

using ParticipantSet = std::uint32_t;

std::string set_to_string(ParticipantSet set, int n);

/// Monotone family of authorized sets Gamma; the complement Delta is the
/// adversary structure. Construction computes the upward closure.
class AccessStructure {
public:
    AccessStructure(int n, const std::vector<ParticipantSet>& authorized_sets);

    int n() const noexcept { return n_; }

    /// The Boolean membership function f(delta_A).
    bool authorized(ParticipantSet set) const { return member_.at(set); }

    std::vector<ParticipantSet> authorized_sets() const;
    std::vector<ParticipantSet> maximal_unauthorized_sets() const;

private:
    int n_;
    std::vector<bool> member_;  // indexed by bitmask
};

/// Monotone span program (M, psi, xi) over Z_d. psi maps each row of M to a
/// participant (1-based) and must be surjective; xi is the unit vector e_1.
class Msp {
public:
    Msp(PrimeModulus mod, FpMatrix m, std::vector<int> psi);

    PrimeModulus modulus() const noexcept { return mod_; }
    const FpMatrix& matrix() const noexcept { return m_; }
    const std::vector<int>& psi() const noexcept { return psi_; }
    const FpVector& target() const noexcept { return target_; }
    int participants() const noexcept { return n_; }

    /// Row indices owned by the set's members, ascending.
    std::vector<std::size_t> rows_of(ParticipantSet set) const;
    /// Row indices owned by one participant, ascending.
    std::vector<std::size_t> rows_of_participant(int participant) const;

private:
    PrimeModulus mod_;
    FpMatrix m_;
    std::vector<int> psi_;
    FpVector target_;
    int n_;
};

/// Recombination coefficients lambda_A with M_A^T lambda = xi, indexed by the
/// rows of A in ascending order.
struct RecombinationVector {
    ParticipantSet set;
    std::vector<std::size_t> rows;
    FpVector lambda;

    /// Coefficient for a given row of M (which must belong to the set).
    Fp coefficient_for_row(std::size_t row) const;
};

/// Every row's share, routed to its owner: shares[p-1] lists (row, value)
/// pairs for participant p.
struct ShareAssignment {
    std::vector<std::vector<std::pair<std::size_t, Fp>>> shares;

    Fp value_for_row(std::size_t row) const;
};

struct MspReportEntry {
    ParticipantSet set;
    bool in_gamma;       // set's side of the access structure
    bool spans_target;   // a recombination vector exists
    bool has_sweeping;   // a sweeping vector exists
    bool ok;             // condition required by its side holds
};

struct MspReport {
    std::vector<MspReportEntry> entries;  // all of Gamma, then maximal Delta sets
    bool all_ok() const;
};

/// Checks the MSP against an access structure set by set: every authorized
/// set must span xi; every maximal unauthorized set must not span xi and must
/// admit a sweeping vector. Mismatches are report entries, never exceptions.
MspReport verify_msp(const Msp& msp, const AccessStructure& gamma);

/// Canonical lambda_A (deterministic; field_core's free-variable-zero rule).
/// Throws NotAuthorized when the set's rows do not span xi.
RecombinationVector recombination(const Msp& msp, ParticipantSet set);

/// Same, but nullopt instead of throwing.
std::optional<RecombinationVector> try_recombination(const Msp& msp, ParticipantSet set);

/// Canonical sweeping vector for the set's rows, or nullopt.
std::optional<FpVector> sweeping_vector(const Msp& msp, ParticipantSet set);

/// Distribution phase: shares = M rho, routed via psi. rho[0] is the shared
/// classical value.
ShareAssignment distribute(const Msp& msp, const FpVector& rho);

/// Reconstruction phase: s_A^T lambda_A = rho[0].
Fp reconstruct(const ShareAssignment& shares, const RecombinationVector& lambda);

}  // namespace qss
