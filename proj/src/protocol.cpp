#include "qss/protocol.hpp"

namespace qss {

std::vector<int> chain_order(ParticipantSet set, int n) {
    std::vector<int> order;
    for (int p = 1; p <= n; ++p)
        if (set >> (p - 1) & 1u) order.push_back(p);
    return order;
}

DistributionResult run_distribution(const Msp& msp, const AccessStructure& gamma, Fp secret,
                                    ParticipantSet set, RandomStream& rng,
                                    const std::optional<FpVector>& fixed_rho,
                                    const std::optional<Fp>& fixed_q0) {
    const PrimeModulus mod = msp.modulus();
    if (secret.modulus() != mod) throw ModulusMismatch{};
    if (gamma.n() != msp.participants())
        throw std::invalid_argument("MSP and access structure disagree on n");

    // NotAuthorized fires here, before any quantum step.
    RecombinationVector lambda = recombination(msp, set);

    const std::size_t l = msp.matrix().cols();
    FpVector rho(mod, l);
    if (fixed_rho) {
        if (fixed_rho->size() != l)
            throw DimensionMismatch("fixed rho must have " + std::to_string(l) + " entries");
        rho = *fixed_rho;
    } else {
        for (std::size_t i = 0; i < l; ++i) rho.set(i, rng.uniform_fp(mod));
    }
    const Fp shared_value = rho.at(0);  // S_i, fresh per run
    const Fp q0 = fixed_q0 ? *fixed_q0 : rng.uniform_fp(mod);

    DealerSecretState dealer{secret, q0, rho, shared_value};
    ShareAssignment shares = distribute(msp, rho);
    HashCommitment commitments{commit_shared_value(shared_value), commit_secret(secret)};

    QuditSpace space(mod);
    const StateLabel origin{Fp(0, mod), Fp(0, mod)};
    const UnitaryLabel dress{secret, q0};
    RoundMessage initial{0, secret, q0, shift_label(space, dress, origin),
                         apply_unitary(space, dress, mub_vector(space, origin))};
    return DistributionResult{std::move(dealer), std::move(shares), commitments,
                              std::move(initial), std::move(lambda)};
}

RoundMessage participant_step(const QuditSpace& space, const RoundMessage& in, int participant,
                              const std::vector<std::pair<std::size_t, Fp>>& owned_shares,
                              const RecombinationVector& lambda) {
    const double fid = fidelity(mub_vector(space, in.label), in.state);
    if (fid < 1.0 - kMeasureNormTol)
        throw StateInconsistency("carried state disagrees with its label (fidelity " +
                                 std::to_string(fid) + ")");
    const PrimeModulus mod = space.modulus();
    Fp p(0, mod), q(0, mod);
    for (const auto& [row, share] : owned_shares) {
        const Fp coeff = lambda.coefficient_for_row(row);
        p = p + coeff * share;
        q = q + coeff;
    }
    const UnitaryLabel u{p, q};
    return RoundMessage{participant, p, q, shift_label(space, u, in.label),
                        apply_unitary(space, u, in.state)};
}

FinalizeResult dealer_finalize(const QuditSpace& space, const RoundMessage& final_msg,
                               const DealerSecretState& dealer,
                               const RecombinationVector& lambda,
                               const HashCommitment& commitments, RandomStream& rng,
                               bool release_regardless) {
    Fp q_i = dealer.q0;
    for (std::size_t i = 0; i < lambda.lambda.size(); ++i) q_i = q_i + lambda.lambda.at(i);

    const MeasureResult m = measure(space, final_msg.state, q_i, rng);
    const Fp expected = dealer.secret + dealer.shared_value;
    const bool outcome_ok = m.outcome == expected;
    const bool h1 = commit_shared_value(m.outcome - dealer.secret) == commitments.h1;

    FinalizeResult out{q_i, m.outcome, outcome_ok, h1, false, expected, ""};
    if (outcome_ok && h1) {
        out.released = true;
        out.released_value = m.outcome;
    } else if (release_regardless) {
        out.released = true;  // dishonest dealer hands out her expected value
        out.released_value = expected;
        out.reason = "dealer checks failed but release was forced";
    } else {
        out.reason = outcome_ok ? "H1 commitment mismatch"
                          : "measurement result disagrees with s + S_i";
    }
    return out;
}

RecoveryResult participant_recover(Fp r_i, const ShareAssignment& shares,
                                   const RecombinationVector& lambda,
                                   const HashCommitment& commitments) {
    const Fp shared_value = reconstruct(shares, lambda);
    const Fp recovered = r_i - shared_value;
    return RecoveryResult{recovered, commit_secret(recovered) == commitments.h2};
}

Transcript run_full_protocol(const RunSpec& spec, RandomStream& rng, const TamperSpec* tamper,
                             const ChannelHook& channel) {
    const PrimeModulus mod = spec.msp.modulus();
    const QuditSpace space(mod);

    Transcript t;
    t.scenario_name = spec.scenario_name;
    t.d = mod.d();
    t.n = spec.msp.participants();
    t.set = spec.set;
    t.seed = rng.seed();
    for (std::size_t r = 0; r < spec.msp.matrix().rows(); ++r) {
        std::vector<std::int64_t> row;
        for (std::size_t c = 0; c < spec.msp.matrix().cols(); ++c)
            row.push_back(spec.msp.matrix().at(r, c).value());
        t.matrix.push_back(std::move(row));
    }
    t.psi = spec.msp.psi();

    DistributionResult dist = run_distribution(spec.msp, spec.gamma, spec.secret, spec.set,
                                               rng, spec.fixed_rho, spec.fixed_q0);
    t.h1_hex = to_hex(dist.commitments.h1);
    t.h2_hex = to_hex(dist.commitments.h2);

    // Participants see (and later pool) the shares as delivered, tampered or not.
    ShareAssignment delivered = dist.shares;
    if (tamper) {
        for (const auto& [party, delta] : tamper->share_delta) {
            auto& list = delivered.shares.at(party - 1);
            if (list.empty()) throw std::invalid_argument("tampered party owns no rows");
            list.front().second = list.front().second + Fp(delta, mod);
        }
    }

    RoundMessage msg = dist.initial;
    t.rounds.push_back({0, msg.p.value(), msg.q.value(), msg.label.l.value(),
                        msg.label.j.value()});

    const std::vector<int> order = chain_order(spec.set, t.n);
    int leg = 0;
    try {
        if (channel) msg = channel(leg, std::move(msg));
        for (int participant : order) {
            RoundMessage out =
                participant_step(space, msg, participant, delivered.shares[participant - 1],
                                 dist.lambda);
            if (tamper) {
                auto it = tamper->unitary_offset.find(participant);
                if (it != tamper->unitary_offset.end()) {
                    const UnitaryLabel extra{Fp(it->second.first, mod),
                                             Fp(it->second.second, mod)};
                    out.p = out.p + extra.x;
                    out.q = out.q + extra.y;
                    out.label = shift_label(space, extra, out.label);
                    out.state = apply_unitary(space, extra, out.state);
                }
            }
            t.rounds.push_back({participant, out.p.value(), out.q.value(),
                                out.label.l.value(), out.label.j.value()});
            msg = std::move(out);
            ++leg;
            if (channel) msg = channel(leg, std::move(msg));
        }
    } catch (const StateInconsistency& e) {
        t.verdicts.reason = e.what();
        return t;
    }

    const FinalizeResult fin =
        dealer_finalize(space, msg, dist.dealer, dist.lambda, dist.commitments, rng,
                        tamper && tamper->dealer_dishonest);
    t.q_i = fin.q_i.value();
    t.r_i = fin.r_i.value();
    t.verdicts.outcome_pass = fin.outcome_pass;
    t.verdicts.h1_pass = fin.h1_pass;
    t.verdicts.released = fin.released;
    t.verdicts.reason = fin.reason;
    if (!fin.released) return t;

    bool all_verified = true;
    for (int participant : order) {
        const RecoveryResult rec =
            participant_recover(fin.released_value, delivered, dist.lambda, dist.commitments);
        t.recovered.push_back({participant, rec.recovered.value(), rec.verified});
        all_verified = all_verified && rec.verified;
    }
    t.verdicts.h2_pass = all_verified;
    t.verdicts.verified =
        fin.outcome_pass && fin.h1_pass && fin.released && all_verified;
    if (!t.verdicts.verified && t.verdicts.reason.empty())
        t.verdicts.reason = "participant H2 verification failed";
    return t;
}

}  // namespace qss
