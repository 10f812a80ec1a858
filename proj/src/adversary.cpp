#include "qss/adversary.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qss {

namespace {

// One complex standard gaussian (Box-Muller).
Cx complex_gaussian(RandomStream& rng) {
    const double u1 = 1.0 - rng.uniform_real();  // (0, 1]
    const double u2 = rng.uniform_real();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return Cx{r * std::cos(2.0 * std::numbers::pi * u2),
              r * std::sin(2.0 * std::numbers::pi * u2)};
}

StateVector random_unit_vector(std::uint32_t dim, RandomStream& rng) {
    StateVector v(dim);
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (auto& c : v) {
            c = complex_gaussian(rng);
            n2 += std::norm(c);
        }
    } while (n2 < 1e-12);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : v) c *= inv;
    return v;
}

Cx random_phase(RandomStream& rng) {
    return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform_real());
}

Eigen::MatrixXcd conditional_ancilla_state(const std::vector<StateVector>& joint_rows,
                                           std::uint32_t ancilla_dim) {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(ancilla_dim, ancilla_dim);
    for (const StateVector& row : joint_rows)
        for (std::uint32_t a = 0; a < ancilla_dim; ++a)
            for (std::uint32_t b = 0; b < ancilla_dim; ++b)
                rho(a, b) += row[a] * std::conj(row[b]);
    const double tr = rho.trace().real();
    if (tr > 0.0) rho /= tr;
    return rho;
}

double trace_distance(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho - sigma,
                                                       Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

void EntanglingAttack::validate() const {
    if (d < 3 || coeff.size() != d || ancilla.size() != d)
        throw InvariantViolation("attack must carry d coefficients and d ancilla vectors");
    for (const Cx& a : coeff)
        if (std::abs(std::abs(a) - 1.0) > kFidelityTol)
            throw InvariantViolation("diagonal coefficient is not unit modulus");
    for (const StateVector& e : ancilla) {
        if (e.size() != ancilla_dim)
            throw InvariantViolation("ancilla vector has wrong dimension");
        if (std::abs(norm(e) - 1.0) > kFidelityTol)
            throw InvariantViolation("ancilla vector is not unit norm");
    }
}

EntanglingAttack EntanglingAttack::identity(std::uint32_t d, std::uint32_t ancilla_dim) {
    EntanglingAttack attack{d, ancilla_dim, std::vector<Cx>(d, Cx{1.0, 0.0}), {}};
    StateVector e0(ancilla_dim, Cx{0.0, 0.0});
    e0[0] = 1.0;
    attack.ancilla.assign(d, e0);
    return attack;
}

EntanglingAttack EntanglingAttack::random_aligned(std::uint32_t d, std::uint32_t ancilla_dim,
                                                  RandomStream& rng) {
    EntanglingAttack attack{d, ancilla_dim, {}, {}};
    const StateVector common = random_unit_vector(ancilla_dim, rng);
    for (std::uint32_t k = 0; k < d; ++k) {
        const Cx phase = random_phase(rng);
        attack.coeff.push_back(phase);
        StateVector e = common;
        for (auto& c : e) c /= phase;  // a_k e_k stays exactly `common`
        attack.ancilla.push_back(std::move(e));
    }
    return attack;
}

EntanglingAttack EntanglingAttack::random_unaligned(std::uint32_t d, std::uint32_t ancilla_dim,
                                                    RandomStream& rng) {
    EntanglingAttack attack{d, ancilla_dim, {}, {}};
    for (std::uint32_t k = 0; k < d; ++k) {
        attack.coeff.push_back(random_phase(rng));
        attack.ancilla.push_back(random_unit_vector(ancilla_dim, rng));
    }
    return attack;
}

EntangleAnalysis entangle_attack_analyze(const QuditSpace& space,
                                         const EntanglingAttack& attack) {
    attack.validate();
    if (attack.d != space.d())
        throw InvariantViolation("attack dimension disagrees with the qudit space");
    const std::uint32_t d = space.d();
    const std::uint32_t e = attack.ancilla_dim;
    const PrimeModulus mod = space.modulus();

    double max_disturbance = 0.0;
    double max_distinguishability = 0.0;

    // One family per MUB basis index, plus the computational basis.
    for (std::uint32_t family = 0; family <= d; ++family) {
        std::vector<Eigen::MatrixXcd> conditional;
        conditional.reserve(d);
        for (std::uint32_t l = 0; l < d; ++l) {
            const StateVector psi =
                family < d ? mub_vector(space, StateLabel{Fp(l, mod), Fp(family, mod)})
                           : computational_vector(space, Fp(l, mod));
            // Joint state after the attack: sum_k psi_k a_k |k>|e_k>.
            std::vector<StateVector> joint(d);
            for (std::uint32_t k = 0; k < d; ++k) {
                joint[k].resize(e);
                const Cx w = psi[k] * attack.coeff[k];
                for (std::uint32_t a = 0; a < e; ++a) joint[k][a] = w * attack.ancilla[k][a];
            }
            // Probability the system register still yields l in this basis.
            StateVector projected(e, Cx{0.0, 0.0});
            for (std::uint32_t k = 0; k < d; ++k) {
                const Cx c = std::conj(psi[k]);
                for (std::uint32_t a = 0; a < e; ++a) projected[a] += c * joint[k][a];
            }
            double keep = 0.0;
            for (const Cx& c : projected) keep += std::norm(c);
            max_disturbance = std::max(max_disturbance, 1.0 - keep);

            conditional.push_back(conditional_ancilla_state(joint, e));
        }
        for (std::uint32_t l = 0; l < d; ++l)
            for (std::uint32_t lp = l + 1; lp < d; ++lp)
                max_distinguishability = std::max(
                    max_distinguishability, trace_distance(conditional[l], conditional[lp]));
    }
    return EntangleAnalysis{max_disturbance, max_distinguishability};
}

double AttackStats::radius3(double rate, std::uint64_t trials) {
    if (trials == 0) return 1.0;
    return 3.0 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}

AttackStats intercept_resend_trials(const RunSpec& spec, int intercept_leg,
                                    std::uint64_t n_trials, std::uint32_t qudits,
                                    RandomStream& rng) {
    const int m = static_cast<int>(chain_order(spec.set, spec.msp.participants()).size());
    if (intercept_leg < 0 || intercept_leg > m)
        throw std::invalid_argument("intercept position must be in [0, " +
                                    std::to_string(m) + "]");
    if (qudits == 0) throw std::invalid_argument("qudit sequence length must be positive");

    const QuditSpace space(spec.msp.modulus());
    const PrimeModulus mod = spec.msp.modulus();

    std::uint64_t intercepts = 0, correct_basis = 0, aborted_runs = 0, total_runs = 0;
    std::uint64_t all_correct_trials = 0;

    for (std::uint64_t trial = 0; trial < n_trials; ++trial) {
        RandomStream stream = rng.derive(trial);
        bool all_correct = true;
        for (std::uint32_t q = 0; q < qudits; ++q) {
            bool correct = false;
            ChannelHook eve = [&](int leg, RoundMessage msg) {
                if (leg != intercept_leg) return msg;
                const Fp guess_basis(std::int64_t(stream.uniform_below(mod.d())), mod);
                correct = guess_basis == msg.label.j;
                const MeasureResult m = measure(space, msg.state, guess_basis, stream);
                ++intercepts;
                if (correct) ++correct_basis;
                msg.label = StateLabel{m.outcome, guess_basis};
                msg.state = m.post_state;
                return msg;
            };
            const Transcript t = run_full_protocol(spec, stream, nullptr, eve);
            ++total_runs;
            if (!t.verdicts.verified) ++aborted_runs;
            all_correct = all_correct && correct;
        }
        if (all_correct) ++all_correct_trials;
    }

    AttackStats stats;
    stats.trials = n_trials;
    stats.eve_correct_basis_rate = double(correct_basis) / double(intercepts);
    stats.eve_secret_success_rate = double(all_correct_trials) / double(n_trials);
    stats.alice_detection_rate = double(aborted_runs) / double(total_runs);
    return stats;
}

TamperSpec make_tamper(const RunSpec& spec, const ForgerySpec& forgery) {
    TamperSpec tamper;
    switch (forgery.kind) {
        case TamperKind::Identity:
            break;
        case TamperKind::UnitaryOffset:
            if (forgery.party < 1 || !(spec.set >> (forgery.party - 1) & 1u))
                throw std::invalid_argument("tampering participant is not in the run set");
            tamper.unitary_offset[forgery.party] = {forgery.dp, forgery.dq};
            break;
        case TamperKind::FakeShare:
            if (forgery.party < 1 || forgery.party > spec.msp.participants())
                throw std::invalid_argument("fake-share receiver is not a participant");
            tamper.share_delta[forgery.party] = forgery.delta;
            tamper.dealer_dishonest = true;
            break;
    }
    return tamper;
}

AttackStats forgery_trials(const RunSpec& spec, const ForgerySpec& forgery,
                           std::uint64_t n_trials, RandomStream& rng) {
    const TamperSpec tamper = make_tamper(spec, forgery);
    std::uint64_t alice_fired = 0, participant_fired = 0;
    for (std::uint64_t trial = 0; trial < n_trials; ++trial) {
        RandomStream stream = rng.derive(trial);
        const Transcript t = run_full_protocol(spec, stream, &tamper);
        if (!(t.verdicts.outcome_pass && t.verdicts.h1_pass)) ++alice_fired;
        if (t.verdicts.released && !t.verdicts.h2_pass) ++participant_fired;
    }

    AttackStats stats;
    stats.trials = n_trials;
    stats.alice_detection_rate = double(alice_fired) / double(n_trials);
    stats.participant_detection_rate = double(participant_fired) / double(n_trials);
    return stats;
}

CollusionVerdict collusion_check(const Msp& msp, ParticipantSet b, Fp sigma, Fp sigma_prime) {
    if (try_recombination(msp, b))
        throw NotUnauthorized("set " + set_to_string(b, msp.participants()) +
                              " spans the target vector");
    if (!sweeping_vector(msp, b))
        throw InvariantViolation("unauthorized set lacks a sweeping vector");

    const PrimeModulus mod = msp.modulus();
    const std::size_t l = msp.matrix().cols();
    const std::uint32_t d = mod.d();
    double count = 1.0;
    for (std::size_t i = 1; i < l; ++i) count *= d;
    if (count > double(1 << 22))
        throw std::invalid_argument("rho enumeration too large (d^(l-1) > 2^22)");
    const std::size_t tails = static_cast<std::size_t>(count);

    const FpMatrix restricted = msp.matrix().select_rows(msp.rows_of(b));

    auto restricted_shares = [&](Fp first) {
        std::vector<std::vector<std::uint32_t>> out;
        out.reserve(tails);
        FpVector rho(mod, l);
        rho.set(0, first);
        std::vector<std::uint32_t> odometer(l > 0 ? l - 1 : 0, 0);
        for (std::size_t t = 0; t < tails; ++t) {
            for (std::size_t i = 0; i + 1 < l; ++i)
                rho.set(i + 1, Fp(odometer[i], mod));
            out.push_back(mat_vec_mul(restricted, rho).raw());
            for (std::size_t i = 0; i < odometer.size(); ++i) {
                if (++odometer[i] < d) break;
                odometer[i] = 0;
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    const bool identical = restricted_shares(sigma) == restricted_shares(sigma_prime);
    return CollusionVerdict{identical, tails};
}

}  // namespace qss
