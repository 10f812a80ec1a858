// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exits nonzero if any criterion fails or overruns its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qss/adversary.hpp"
#include "qss/scenario.hpp"

using namespace qss;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, double seconds_limit,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > seconds_limit) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("overran ") +
                  std::to_string(seconds_limit) + "s budget";
    }
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
                title.c_str(), elapsed, detail.empty() ? "" : " - ", detail.c_str());
    if (!ok) ++failures;
}

Msp example_msp(std::uint32_t d = 5) {
    const PrimeModulus mod(d);
    return Msp(mod,
               FpMatrix::from_ints(mod, {{1, 0, 3, 4}, {0, 0, 2, 1}, {3, 4, 1, 0}, {1, 2, 4, 0}}),
               {1, 2, 3, 4});
}

AccessStructure example_gamma() { return AccessStructure(4, {0b0111, 0b1011}); }

RunSpec fixture_run_spec() {
    const PrimeModulus d5(5);
    return RunSpec{example_msp(), example_gamma(), Fp(3, d5), 0b0111,
                   FpVector(d5, {4, 1, 0, 2}), Fp(2, d5), "acceptance"};
}

RunSpec random_run_spec(std::uint32_t d = 5) {
    const PrimeModulus mod(d);
    return RunSpec{example_msp(d), example_gamma(), Fp(3, mod), 0b0111,
                   std::nullopt, std::nullopt, "acceptance"};
}

bool example3_end_to_end(std::string& detail) {
    RandomStream rng(1);
    const Transcript t = run_full_protocol(fixture_run_spec(), rng);

    const Msp msp = example_msp();
    const PrimeModulus d5(5);
    const ShareAssignment shares = distribute(msp, FpVector(d5, {4, 1, 0, 2}));
    for (std::size_t r = 0; r < 4; ++r) {
        const std::uint32_t expect[] = {2, 2, 1, 1};
        if (shares.value_for_row(r).value() != expect[r]) {
            detail = "share mismatch at row " + std::to_string(r);
            return false;
        }
    }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> chain = {
        {3, 2}, {0, 3}, {2, 4}, {2, 4}};
    if (t.rounds.size() != chain.size()) {
        detail = "round count " + std::to_string(t.rounds.size());
        return false;
    }
    for (std::size_t i = 0; i < chain.size(); ++i)
        if (t.rounds[i].label_l != chain[i].first || t.rounds[i].label_j != chain[i].second) {
            detail = "label chain diverges at round " + std::to_string(i);
            return false;
        }
    if (t.q_i != 4 || t.r_i != 2) {
        detail = "q_i/r_i mismatch";
        return false;
    }
    for (const auto& rec : t.recovered)
        if (rec.recovered != 3 || !rec.verified) {
            detail = "recovery mismatch";
            return false;
        }
    if (!t.verdicts.outcome_pass || !t.verdicts.h1_pass || !t.verdicts.h2_pass ||
        !t.verdicts.verified) {
        detail = "verdicts not all green";
        return false;
    }
    detail = "shares (2,2,1,1), labels (3,2)->(0,3)->(2,4)->(2,4), q_i=4, r=2, s=3";
    return true;
}

bool example2_recombination(std::string& detail) {
    const Msp msp = example_msp();
    const PrimeModulus d5(5);

    const FpVector l1 = recombination(msp, 0b0111).lambda;
    const FpVector l2 = recombination(msp, 0b1011).lambda;
    if (!(l1 == FpVector(d5, {1, 1, 0})) || !(l2 == FpVector(d5, {1, 1, 0}))) {
        detail = "lambda_{A1}/lambda_{A2} differ from (1,1,0)";
        return false;
    }
    for (ParticipantSet set : {ParticipantSet{0b0111}, ParticipantSet{0b1011}}) {
        const RecombinationVector rv = recombination(msp, set);
        const FpMatrix mt = msp.matrix().select_rows(rv.rows).transposed();
        if (!(mat_vec_mul(mt, rv.lambda) == msp.target())) {
            detail = "re-substitution failed";
            return false;
        }
    }
    // a wrong full-set candidate must fail re-substitution
    const FpMatrix mt = msp.matrix().transposed();
    if (mat_vec_mul(mt, FpVector(d5, {1, 1, 3, 4})) == msp.target()) {
        detail = "(1,1,3,4) unexpectedly validates";
        return false;
    }
    const RecombinationVector replacement = recombination(msp, 0b1111);
    if (!(mat_vec_mul(mt, replacement.lambda) == msp.target())) {
        detail = "replacement fails re-substitution";
        return false;
    }
    if (!(replacement.lambda == FpVector(d5, {1, 1, 0, 0}))) {
        detail = "replacement is not the canonical (1,1,0,0)";
        return false;
    }
    detail = "(1,1,0) twice; (1,1,3,4) rejected; replacement (1,1,0,0) validates";
    return true;
}

bool mub_unbiasedness(std::string& detail) {
    std::size_t pairs = 0;
    for (std::uint32_t d : {3u, 5u, 7u}) {
        const QuditSpace space{PrimeModulus(d)};
        const PrimeModulus mod = space.modulus();
        const double expect = 1.0 / std::sqrt(double(d));
        for (std::uint32_t j = 0; j < d; ++j)
            for (std::uint32_t jp = 0; jp < d; ++jp) {
                if (j == jp) continue;
                for (std::uint32_t l = 0; l < d; ++l)
                    for (std::uint32_t lp = 0; lp < d; ++lp) {
                        const double mag = std::abs(
                            overlap(mub_vector(space, StateLabel{Fp(l, mod), Fp(j, mod)}),
                                    mub_vector(space, StateLabel{Fp(lp, mod), Fp(jp, mod)})));
                        ++pairs;
                        if (std::abs(mag - expect) > 1e-9) {
                            detail = "overlap off at d=" + std::to_string(d);
                            return false;
                        }
                    }
            }
    }
    detail = std::to_string(pairs) + " cross-basis pairs within 1e-9 of 1/sqrt(d)";
    return true;
}

bool shift_law(std::string& detail) {
    std::size_t cases = 0;
    for (std::uint32_t d : {3u, 5u, 7u}) {
        const QuditSpace space{PrimeModulus(d)};
        const PrimeModulus mod = space.modulus();
        for (std::uint32_t x = 0; x < d; ++x)
            for (std::uint32_t y = 0; y < d; ++y)
                for (std::uint32_t l = 0; l < d; ++l)
                    for (std::uint32_t j = 0; j < d; ++j) {
                        const UnitaryLabel u{Fp(x, mod), Fp(y, mod)};
                        const StateLabel in{Fp(l, mod), Fp(j, mod)};
                        const double fid =
                            fidelity(apply_unitary(space, u, mub_vector(space, in)),
                                     mub_vector(space, shift_label(space, u, in)));
                        ++cases;
                        if (fid < 1.0 - 1e-9) {
                            detail = "fidelity drop at d=" + std::to_string(d);
                            return false;
                        }
                    }
    }
    detail = std::to_string(cases) + " (x,y,l,j) cases at fidelity >= 1-1e-9";
    return true;
}

bool lss_completeness_privacy(std::string& detail) {
    const Msp msp = example_msp();
    const PrimeModulus d5(5);

    std::vector<std::optional<RecombinationVector>> lambdas(16);
    std::vector<std::vector<std::size_t>> rows(16);
    for (ParticipantSet set = 0; set < 16; ++set) {
        lambdas[set] = try_recombination(msp, set);
        rows[set] = msp.rows_of(set);
        if (lambdas[set].has_value() == sweeping_vector(msp, set).has_value()) {
            detail = "span/sweep duality broken for set " + std::to_string(set);
            return false;
        }
    }

    std::map<std::pair<ParticipantSet, std::uint32_t>,
             std::vector<std::vector<std::uint32_t>>> buckets;
    FpVector rho(d5, 4);
    for (std::uint32_t packed = 0; packed < 625; ++packed) {
        std::uint32_t v = packed;
        for (std::size_t i = 0; i < 4; ++i) {
            rho.set(i, Fp(v % 5, d5));
            v /= 5;
        }
        const ShareAssignment shares = distribute(msp, rho);
        for (ParticipantSet set = 0; set < 16; ++set) {
            if (lambdas[set]) {
                if (!(reconstruct(shares, *lambdas[set]) == rho.at(0))) {
                    detail = "reconstruction failed";
                    return false;
                }
            } else {
                std::vector<std::uint32_t> tuple;
                for (std::size_t r : rows[set])
                    tuple.push_back(shares.value_for_row(r).value());
                buckets[{set, rho.at(0).value()}].push_back(std::move(tuple));
            }
        }
    }
    for (ParticipantSet set = 0; set < 16; ++set) {
        if (lambdas[set]) continue;
        auto reference = buckets[{set, 0}];
        std::sort(reference.begin(), reference.end());
        for (std::uint32_t secret = 1; secret < 5; ++secret) {
            auto other = buckets[{set, secret}];
            std::sort(other.begin(), other.end());
            if (reference != other) {
                detail = "share distributions differ for set " + std::to_string(set);
                return false;
            }
        }
    }
    detail = "625 rho: all spanning sets reconstruct, all others exactly blind";
    return true;
}

bool intercept_resend(std::string& detail) {
    RandomStream rng(20250101);
    const AttackStats one = intercept_resend_trials(random_run_spec(), 1, 100000, 1, rng);
    if (std::abs(one.eve_correct_basis_rate - 0.200) > 0.004) {
        detail = "correct-basis rate " + std::to_string(one.eve_correct_basis_rate);
        return false;
    }
    const double acceptance = 1.0 - one.alice_detection_rate;
    if (std::abs(acceptance - 0.360) > 0.005) {
        detail = "acceptance rate " + std::to_string(acceptance);
        return false;
    }
    RandomStream rng3(20250102);
    const AttackStats seq = intercept_resend_trials(random_run_spec(), 1, 100000, 3, rng3);
    const double expect = 1.0 / 125.0;
    const double radius = AttackStats::radius3(expect, seq.trials);
    if (std::abs(seq.eve_secret_success_rate - expect) > radius) {
        detail = "3-qudit success " + std::to_string(seq.eve_secret_success_rate);
        return false;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "basis %.4f (1/5 +- 0.004), acceptance %.4f (9/25 +- 0.005), "
                  "3-qudit %.5f (1/125 +- %.5f)",
                  one.eve_correct_basis_rate, acceptance, seq.eve_secret_success_rate,
                  radius);
    detail = buf;
    return true;
}

bool entangle_measure(std::string& detail) {
    const QuditSpace space{PrimeModulus(5)};
    RandomStream rng(777);
    double worst_aligned = 0.0, worst_info = 0.0, least_unaligned = 1.0;
    for (int i = 0; i < 100; ++i) {
        RandomStream stream = rng.derive(i);
        const auto aligned = entangle_attack_analyze(
            space, EntanglingAttack::random_aligned(5, 5, stream));
        worst_aligned = std::max(worst_aligned, aligned.max_disturbance);
        worst_info = std::max(worst_info, aligned.eve_distinguishability);
        const auto unaligned = entangle_attack_analyze(
            space, EntanglingAttack::random_unaligned(5, 5, stream));
        least_unaligned = std::min(least_unaligned, unaligned.max_disturbance);
    }
    if (worst_aligned >= 1e-9 || worst_info >= 1e-9) {
        detail = "a constraint-satisfying attack disturbed or leaked";
        return false;
    }
    if (least_unaligned <= 1e-6) {
        detail = "a constraint-violating attack stayed below 1e-6 disturbance";
        return false;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "aligned: disturb<=%.1e info<=%.1e; violating: disturb>=%.3f",
                  worst_aligned, worst_info, least_unaligned);
    detail = buf;
    return true;
}

bool forgery(std::string& detail) {
    const PrimeModulus d5(5);
    const Msp msp = example_msp();
    const AccessStructure gamma = example_gamma();
    const std::vector<ParticipantSet> sets = {0b0111, 0b1011, 0b1111};

    RandomStream rng(808);
    for (int fixture = 0; fixture < 1000; ++fixture) {
        RandomStream stream = rng.derive(fixture);
        const ParticipantSet set = sets[stream.uniform_below(3)];
        const std::vector<int> members = chain_order(set, 4);
        const int party = members[stream.uniform_below(std::uint32_t(members.size()))];
        const std::int64_t dp = 1 + stream.uniform_below(4);  // dp != 0, dq = 0
        RunSpec spec{msp, gamma, stream.uniform_fp(d5), set, std::nullopt, std::nullopt,
                     "forgery"};
        const ForgerySpec forgery{TamperKind::UnitaryOffset, party, dp, 0, 0};
        const AttackStats stats = forgery_trials(spec, forgery, 1, stream);
        if (stats.alice_detection_rate + stats.participant_detection_rate == 0.0) {
            detail = "an offset tamper escaped both checks";
            return false;
        }
    }

    RandomStream idrng(809);
    const ForgerySpec identity{TamperKind::Identity, 0, 0, 0, 0};
    const AttackStats id_stats = forgery_trials(random_run_spec(), identity, 1000, idrng);
    if (id_stats.alice_detection_rate != 0.0 || id_stats.participant_detection_rate != 0.0) {
        detail = "identity tampers tripped a check";
        return false;
    }
    detail = "1000/1000 dp!=0 tampers caught; 1000/1000 identity tampers pass";
    return true;
}

bool determinism(std::string& detail) {
    // library route
    RandomStream a(999), b(999);
    const std::string ta = transcript_to_string(run_full_protocol(fixture_run_spec(), a));
    const std::string tb = transcript_to_string(run_full_protocol(fixture_run_spec(), b));
    if (ta != tb) {
        detail = "fixture transcripts differ";
        return false;
    }
    // a randomized scenario (no pinned rho/q0), twice
    RandomStream c(31415), e(31415);
    const std::string tc = transcript_to_string(run_full_protocol(random_run_spec(), c));
    const std::string te = transcript_to_string(run_full_protocol(random_run_spec(), e));
    if (tc != te) {
        detail = "randomized-scenario transcripts differ";
        return false;
    }
    detail = "byte-identical transcripts for equal seeds (pinned and random scenarios)";
    return true;
}

}  // namespace

int main() {
    criterion(1, "worked example end-to-end, exact", 1.0, example3_end_to_end);
    criterion(2, "recombination vectors: canonical values, wrong candidate rejected", 1.0,
              example2_recombination);
    criterion(3, "cross-basis overlaps are 1/sqrt(d) for d in {3,5,7}", 5.0,
              mub_unbiasedness);
    criterion(4, "diagonal unitaries shift labels exactly, exhaustively", 10.0, shift_law);
    criterion(5, "linear layer: completeness and perfect privacy over all 625 rho", 10.0,
              lss_completeness_privacy);
    criterion(6, "intercept-resend rates match 1/d, (2d-1)/d^2, (1/d)^3", 30.0,
              intercept_resend);
    criterion(7, "entangling attacks: constraint-satisfying invisible, violating loud",
              30.0, entangle_measure);
    criterion(8, "forgery: every dp tamper caught, identity tampers clean", 10.0, forgery);
    criterion(9, "equal seeds reproduce byte-identical transcripts", 5.0, determinism);

    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all 9 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
