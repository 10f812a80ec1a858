#include "qss/span_program.hpp"

#include <algorithm>

namespace qss {

std::string set_to_string(ParticipantSet set, int n) {
    std::string out = "{";
    bool first = true;
    for (int p = 1; p <= n; ++p) {
        if (!(set >> (p - 1) & 1u)) continue;
        if (!first) out += ",";
        out += "P" + std::to_string(p);
        first = false;
    }
    return out + "}";
}

AccessStructure::AccessStructure(int n, const std::vector<ParticipantSet>& authorized_sets)
    : n_(n), member_(std::size_t{1} << n, false) {
    if (n < 1 || n > 16)
        throw std::invalid_argument("participant count must be in [1, 16], got " +
                                    std::to_string(n));
    const ParticipantSet all = (ParticipantSet{1} << n) - 1;
    for (ParticipantSet s : authorized_sets) {
        if (s & ~all)
            throw std::invalid_argument("authorized set names a participant beyond n");
        member_[s] = true;
    }
    // Upward closure: a set is authorized if any subset one element smaller is.
    for (ParticipantSet m = 0; m <= all; ++m) {
        if (member_[m]) continue;
        for (int b = 0; b < n; ++b)
            if (m >> b & 1u && member_[m & ~(ParticipantSet{1} << b)]) {
                member_[m] = true;
                break;
            }
    }
}

std::vector<ParticipantSet> AccessStructure::authorized_sets() const {
    std::vector<ParticipantSet> out;
    for (ParticipantSet m = 0; m < member_.size(); ++m)
        if (member_[m]) out.push_back(m);
    return out;
}

std::vector<ParticipantSet> AccessStructure::maximal_unauthorized_sets() const {
    std::vector<ParticipantSet> out;
    const ParticipantSet all = ParticipantSet(member_.size() - 1);
    for (ParticipantSet m = 0; m <= all; ++m) {
        if (member_[m]) continue;
        bool maximal = true;
        for (int b = 0; b < n_ && maximal; ++b)
            if (!(m >> b & 1u) && !member_[m | (ParticipantSet{1} << b)]) maximal = false;
        if (maximal) out.push_back(m);
    }
    return out;
}

Msp::Msp(PrimeModulus mod, FpMatrix m, std::vector<int> psi)
    : mod_(mod), m_(std::move(m)), psi_(std::move(psi)), target_(mod, m_.cols()), n_(0) {
    if (m_.modulus() != mod_) throw ModulusMismatch{};
    if (m_.rows() == 0 || m_.cols() == 0)
        throw std::invalid_argument("MSP matrix must be nonempty");
    if (psi_.size() != m_.rows())
        throw std::invalid_argument("psi must label every row of M exactly once");
    for (int p : psi_) n_ = std::max(n_, p);
    if (n_ < 1 || n_ > 16)
        throw std::invalid_argument("MSP participant count must be in [1, 16]");
    std::vector<bool> seen(n_ + 1, false);
    for (int p : psi_) {
        if (p < 1) throw std::invalid_argument("psi labels are 1-based");
        seen[p] = true;
    }
    for (int p = 1; p <= n_; ++p)
        if (!seen[p])
            throw std::invalid_argument("psi is not surjective: participant " +
                                        std::to_string(p) + " owns no row");
    target_.set(0, Fp(1, mod_));
}

std::vector<std::size_t> Msp::rows_of(ParticipantSet set) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < psi_.size(); ++r)
        if (set >> (psi_[r] - 1) & 1u) out.push_back(r);
    return out;
}

std::vector<std::size_t> Msp::rows_of_participant(int participant) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < psi_.size(); ++r)
        if (psi_[r] == participant) out.push_back(r);
    return out;
}

Fp RecombinationVector::coefficient_for_row(std::size_t row) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i] == row) return lambda.at(i);
    throw std::out_of_range("row " + std::to_string(row) + " is not owned by the set");
}

Fp ShareAssignment::value_for_row(std::size_t row) const {
    for (const auto& list : shares)
        for (const auto& [r, v] : list)
            if (r == row) return v;
    throw std::out_of_range("no share for row " + std::to_string(row));
}

bool MspReport::all_ok() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const MspReportEntry& e) { return e.ok; });
}

static std::optional<FpVector> solve_recombination(const Msp& msp,
                                                   const std::vector<std::size_t>& rows) {
    if (rows.empty()) return std::nullopt;
    const FpMatrix m_a_t = msp.matrix().select_rows(rows).transposed();
    auto lambda = solve_linear(m_a_t, msp.target());
    if (lambda) {
        // Re-substitution guard; canonical solving must never hand back a
        // vector that fails M_A^T lambda = xi.
        if (!(mat_vec_mul(m_a_t, *lambda) == msp.target()))
            throw std::logic_error("recombination re-substitution failed");
    }
    return lambda;
}

std::optional<FpVector> sweeping_vector(const Msp& msp, ParticipantSet set) {
    const auto rows = msp.rows_of(set);
    if (rows.empty()) {
        // No rows constrain h; the canonical choice is e_1.
        FpVector h(msp.modulus(), msp.matrix().cols());
        h.set(0, Fp(1, msp.modulus()));
        return h;
    }
    return kernel_with_unit_first_coord(msp.matrix().select_rows(rows));
}

MspReport verify_msp(const Msp& msp, const AccessStructure& gamma) {
    if (msp.participants() != gamma.n())
        throw std::invalid_argument("MSP and access structure disagree on n");
    MspReport report;
    for (ParticipantSet set : gamma.authorized_sets()) {
        const bool spans = solve_recombination(msp, msp.rows_of(set)).has_value();
        const bool sweep = sweeping_vector(msp, set).has_value();
        report.entries.push_back({set, true, spans, sweep, spans});
    }
    // Monotonicity makes the maximal unauthorized sets sufficient for Delta.
    for (ParticipantSet set : gamma.maximal_unauthorized_sets()) {
        const bool spans = solve_recombination(msp, msp.rows_of(set)).has_value();
        const bool sweep = sweeping_vector(msp, set).has_value();
        report.entries.push_back({set, false, spans, sweep, !spans && sweep});
    }
    return report;
}

std::optional<RecombinationVector> try_recombination(const Msp& msp, ParticipantSet set) {
    auto rows = msp.rows_of(set);
    auto lambda = solve_recombination(msp, rows);
    if (!lambda) return std::nullopt;
    return RecombinationVector{set, std::move(rows), std::move(*lambda)};
}

RecombinationVector recombination(const Msp& msp, ParticipantSet set) {
    auto lambda = try_recombination(msp, set);
    if (!lambda)
        throw NotAuthorized("set " + set_to_string(set, msp.participants()) +
                            " does not span the target vector");
    return std::move(*lambda);
}

ShareAssignment distribute(const Msp& msp, const FpVector& rho) {
    if (rho.size() != msp.matrix().cols())
        throw DimensionMismatch("rho must have " + std::to_string(msp.matrix().cols()) +
                                " entries");
    const FpVector s = mat_vec_mul(msp.matrix(), rho);
    ShareAssignment out;
    out.shares.resize(msp.participants());
    for (std::size_t r = 0; r < s.size(); ++r)
        out.shares[msp.psi()[r] - 1].emplace_back(r, s.at(r));
    return out;
}

Fp reconstruct(const ShareAssignment& shares, const RecombinationVector& lambda) {
    Fp acc(0, lambda.lambda.modulus());
    for (std::size_t i = 0; i < lambda.rows.size(); ++i)
        acc = acc + lambda.lambda.at(i) * shares.value_for_row(lambda.rows[i]);
    return acc;
}

}  // namespace qss
