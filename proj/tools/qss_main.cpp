// Command-line front end: run the built-in demo, execute scenario files,
// drive the attack analyses, and check monotone span programs against their
// access structures.
//
// Exit codes: 0 success, 2 validation error, 3 protocol abort / failed
// verification, 4 analysis found an anomaly.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qss/adversary.hpp"
#include "qss/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitAbort = 3;
constexpr int kExitAnomaly = 4;

struct CliError {
    int code;
    std::string category;
    std::string message;
};

void write_or_print(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CliError{kExitValidation, "validation", "cannot write " + out_path};
    out << text;
}

std::string label_chain(const qss::Transcript& t) {
    std::string out;
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
        if (i) out += " -> ";
        out += "(" + std::to_string(t.rounds[i].label_l) + "," +
               std::to_string(t.rounds[i].label_j) + ")";
    }
    return out;
}

void print_summary(const qss::Transcript& t) {
    std::cout << "d = " << t.d << ", set = " << qss::set_to_string(t.set, t.n)
              << ", seed = " << t.seed << "\n";
    std::cout << "labels: " << label_chain(t) << "\n";
    if (t.q_i) std::cout << "q_i = " << *t.q_i << ", r_i = " << *t.r_i << "\n";
    for (const auto& r : t.recovered)
        std::cout << "bob" << r.participant << " recovered " << r.recovered
                  << (r.verified ? " (H2 ok)" : " (H2 MISMATCH)") << "\n";
    std::cout << "verdict: " << (t.verdicts.verified ? "verified" : "REJECTED");
    if (!t.verdicts.verified && !t.verdicts.reason.empty())
        std::cout << " - " << t.verdicts.reason;
    std::cout << "\n";
}

int finish_run(const qss::Transcript& t, bool as_json, const std::string& out_path) {
    const std::string text = qss::transcript_to_string(t);
    if (as_json || !out_path.empty()) write_or_print(text, out_path);
    if (!as_json) print_summary(t);
    if (!t.verdicts.verified)
        throw CliError{kExitAbort, "abort",
                       t.verdicts.reason.empty() ? "run not verified" : t.verdicts.reason};
    return kExitOk;
}

int cmd_demo(std::optional<std::uint64_t> seed, bool as_json, const std::string& out_path) {
    qss::Scenario sc = qss::Scenario::demo();
    if (seed) sc.seed = *seed;
    qss::RandomStream rng(sc.seed);
    const qss::Transcript t = qss::run_full_protocol(sc.build_run_spec(), rng);
    if (!as_json) {
        const qss::Msp msp = sc.build_msp();
        const auto shares = qss::distribute(
            msp, qss::FpVector::from_ints(msp.modulus(), *sc.fixed_rho));
        std::cout << "shares:";
        for (int p = 1; p <= msp.participants(); ++p)
            for (const auto& [row, value] : shares.shares[p - 1])
                std::cout << " bob" << p << "=" << value.value();
        std::cout << "\n";
    }
    return finish_run(t, as_json, out_path);
}

qss::ForgerySpec forgery_from(const qss::AttackSection& at) {
    qss::ForgerySpec fs;
    if (at.tamper == "identity") fs.kind = qss::TamperKind::Identity;
    else if (at.tamper == "unitary-offset") fs.kind = qss::TamperKind::UnitaryOffset;
    else if (at.tamper == "fake-share") fs.kind = qss::TamperKind::FakeShare;
    else throw CliError{kExitValidation, "validation", "unknown tamper: " + at.tamper};
    fs.party = at.party;
    fs.dp = at.dp;
    fs.dq = at.dq;
    fs.delta = at.delta;
    return fs;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, bool as_json,
            const std::string& out_path) {
    qss::Scenario sc = qss::Scenario::from_file(path);
    if (seed) sc.seed = *seed;
    qss::RandomStream rng(sc.seed);
    const qss::RunSpec spec = sc.build_run_spec();
    // a forgery section makes `run` execute the single tampered run; the
    // statistical view of the same tamper lives under `attack`
    std::optional<qss::TamperSpec> tamper;
    if (sc.attack && sc.attack->type == "forgery")
        tamper = qss::make_tamper(spec, forgery_from(*sc.attack));
    const qss::Transcript t =
        qss::run_full_protocol(spec, rng, tamper ? &*tamper : nullptr);
    return finish_run(t, as_json, out_path);
}

qss::AttackSection attack_section(const qss::Scenario& sc, const std::string& type_flag) {
    qss::AttackSection at;
    if (sc.attack) at = *sc.attack;
    if (!type_flag.empty()) at.type = type_flag;
    if (at.type.empty())
        throw CliError{kExitValidation, "validation",
                       "no attack type (use --type or the scenario's attack section)"};
    return at;
}

int cmd_attack(const std::string& path, const std::string& type_flag,
               std::optional<std::uint64_t> trials, std::optional<std::uint64_t> seed,
               bool as_json, const std::string& out_path) {
    qss::Scenario sc = path.empty() ? qss::Scenario::demo() : qss::Scenario::from_file(path);
    if (seed) sc.seed = *seed;
    qss::AttackSection at = attack_section(sc, type_flag);
    if (trials) at.trials = *trials;

    qss::RandomStream rng(sc.seed);
    qss::Json report = qss::attack_envelope(sc, sc.seed);
    qss::Json& ja = report["attack"];
    ja["type"] = at.type;
    int exit_code = kExitOk;

    if (at.type == "intercept-resend") {
        const qss::AttackStats stats = qss::intercept_resend_trials(
            sc.build_run_spec(), at.position, at.trials, at.qudits, rng);
        ja["position"] = at.position;
        ja["qudits"] = at.qudits;
        ja["stats"] = qss::stats_to_json(stats);
        if (!as_json) {
            std::printf("intercept-resend: %llu trials, position %d, %u qudit(s)\n",
                        static_cast<unsigned long long>(stats.trials), at.position,
                        at.qudits);
            std::printf("  eve correct-basis rate    %.4f +- %.4f\n",
                        stats.eve_correct_basis_rate,
                        qss::AttackStats::radius3(stats.eve_correct_basis_rate, stats.trials));
            std::printf("  eve full-sequence success %.4f\n", stats.eve_secret_success_rate);
            std::printf("  alice detection rate      %.4f (acceptance %.4f)\n",
                        stats.alice_detection_rate, 1.0 - stats.alice_detection_rate);
        }
    } else if (at.type == "entangle-measure") {
        const std::uint32_t e = at.ancilla_dim ? at.ancilla_dim : sc.d;
        const qss::QuditSpace space{qss::PrimeModulus(sc.d)};
        std::uint32_t informative_undetectable = 0;
        double worst_aligned_disturbance = 0.0, worst_aligned_info = 0.0;
        double min_unaligned_disturbance = 1.0;
        for (std::uint32_t i = 0; i < at.attacks; ++i) {
            qss::RandomStream stream = rng.derive(i);
            const auto aligned = qss::entangle_attack_analyze(
                space, qss::EntanglingAttack::random_aligned(sc.d, e, stream));
            worst_aligned_disturbance =
                std::max(worst_aligned_disturbance, aligned.max_disturbance);
            worst_aligned_info = std::max(worst_aligned_info, aligned.eve_distinguishability);
            const auto unaligned = qss::entangle_attack_analyze(
                space, qss::EntanglingAttack::random_unaligned(sc.d, e, stream));
            min_unaligned_disturbance =
                std::min(min_unaligned_disturbance, unaligned.max_disturbance);
            for (const auto& analysis : {aligned, unaligned})
                if (analysis.max_disturbance < 1e-9 && analysis.eve_distinguishability > 1e-9)
                    ++informative_undetectable;
        }
        ja["attacks_per_family"] = at.attacks;
        ja["ancilla_dim"] = e;
        ja["worst_aligned_disturbance"] = worst_aligned_disturbance;
        ja["worst_aligned_distinguishability"] = worst_aligned_info;
        ja["min_unaligned_disturbance"] = min_unaligned_disturbance;
        ja["zero_disturbance_informative_attacks"] = informative_undetectable;
        if (!as_json) {
            std::printf("entangle-measure: %u aligned + %u unaligned random attacks\n",
                        at.attacks, at.attacks);
            std::printf("  aligned family:   disturbance <= %.3g, distinguishability <= %.3g\n",
                        worst_aligned_disturbance, worst_aligned_info);
            std::printf("  unaligned family: disturbance >= %.3g\n",
                        min_unaligned_disturbance);
            std::printf("  %u zero-disturbance informative attacks found\n",
                        informative_undetectable);
        }
        if (informative_undetectable > 0) exit_code = kExitAnomaly;
    } else if (at.type == "forgery") {
        const qss::ForgerySpec fs = forgery_from(at);
        const qss::AttackStats stats =
            qss::forgery_trials(sc.build_run_spec(), fs, at.trials, rng);
        ja["tamper"] = at.tamper;
        ja["party"] = at.party;
        ja["dp"] = at.dp;
        ja["dq"] = at.dq;
        ja["delta"] = at.delta;
        ja["stats"] = qss::stats_to_json(stats);
        if (!as_json) {
            std::printf("forgery (%s): %llu trials\n", at.tamper.c_str(),
                        static_cast<unsigned long long>(stats.trials));
            std::printf("  dealer checks fired       %.4f\n", stats.alice_detection_rate);
            std::printf("  participant H2 fired      %.4f\n",
                        stats.participant_detection_rate);
        }
    } else if (at.type == "collusion") {
        const qss::Msp msp = sc.build_msp();
        const qss::PrimeModulus mod = msp.modulus();
        qss::ParticipantSet b = 0;
        for (int p : at.colluders) {
            if (p < 1 || p > msp.participants())
                throw CliError{kExitValidation, "validation", "bad colluder index"};
            b |= qss::ParticipantSet{1} << (p - 1);
        }
        const auto verdict = qss::collusion_check(msp, b, qss::Fp(at.sigma, mod),
                                                  qss::Fp(at.sigma_prime, mod));
        ja["colluders"] = at.colluders;
        ja["sigma"] = at.sigma;
        ja["sigma_prime"] = at.sigma_prime;
        ja["identical_distributions"] = verdict.identical;
        ja["tuples_per_secret"] = verdict.tuples_per_secret;
        if (!as_json) {
            if (verdict.identical)
                std::printf("collusion: perfect privacy: identical distributions "
                            "(%zu share tuples per secret)\n",
                            verdict.tuples_per_secret);
            else
                std::printf("collusion: DISTRIBUTIONS DIFFER - privacy violated\n");
        }
        if (!verdict.identical) exit_code = kExitAnomaly;
    } else {
        throw CliError{kExitValidation, "validation", "unknown attack type: " + at.type};
    }

    if (as_json || !out_path.empty()) write_or_print(report.dump(2) + "\n", out_path);
    if (exit_code == kExitAnomaly)
        throw CliError{kExitAnomaly, "anomaly", "attack analysis found a property violation"};
    return exit_code;
}

int cmd_verify_msp(const std::string& path, bool as_json, const std::string& out_path) {
    qss::Scenario sc = path.empty() ? qss::Scenario::demo() : qss::Scenario::from_file(path);
    const qss::Msp msp = sc.build_msp();
    const qss::AccessStructure gamma = sc.build_gamma();
    const qss::MspReport report = qss::verify_msp(msp, gamma);

    qss::Json j = qss::attack_envelope(sc, sc.seed);
    j.erase("set");
    qss::Json entries = qss::Json::array();
    for (const auto& e : report.entries)
        entries.push_back(qss::Json{{"set", qss::set_to_string(e.set, msp.participants())},
                                    {"side", e.in_gamma ? "gamma" : "delta-maximal"},
                                    {"spans_target", e.spans_target},
                                    {"has_sweeping", e.has_sweeping},
                                    {"ok", e.ok}});
    j["report"] = std::move(entries);
    j["all_ok"] = report.all_ok();

    if (!as_json) {
        std::printf("%-22s %-14s %-6s %-9s %s\n", "set", "side", "spans", "sweeping", "ok");
        for (const auto& e : report.entries)
            std::printf("%-22s %-14s %-6s %-9s %s\n",
                        qss::set_to_string(e.set, msp.participants()).c_str(),
                        e.in_gamma ? "gamma" : "delta-maximal", e.spans_target ? "yes" : "no",
                        e.has_sweeping ? "yes" : "no", e.ok ? "ok" : "MISMATCH");
        std::printf("%s\n", report.all_ok() ? "MSP realizes the access structure"
                                            : "MSP does NOT realize the access structure");
    }
    if (as_json || !out_path.empty()) write_or_print(j.dump(2) + "\n", out_path);
    if (!report.all_ok())
        throw CliError{kExitAnomaly, "anomaly",
                       "MSP does not realize the given access structure"};
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verifiable quantum secret sharing simulator: MSP-based linear secret "
                 "sharing plus a travelling MUB qudit, with an adversary lab."};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    bool as_json = false;
    std::string out_path, scenario_path, attack_type;

    auto add_common = [&](CLI::App* cmd, bool with_file, bool file_required) {
        cmd->add_option("--seed", seed, "Override the scenario seed (u64)");
        cmd->add_flag("--json", as_json, "Emit machine-readable JSON on stdout");
        cmd->add_option("--out", out_path, "Write the JSON report to a file");
        if (with_file) {
            auto* opt = cmd->add_option("scenario", scenario_path, "Scenario JSON file")
                            ->check(CLI::ExistingFile);
            if (file_required) opt->required();
        }
    };

    CLI::App* demo = app.add_subcommand("demo", "Run the built-in worked example");
    add_common(demo, false, false);

    CLI::App* run = app.add_subcommand("run", "Execute a scenario file");
    add_common(run, true, true);

    CLI::App* attack = app.add_subcommand("attack", "Run an adversary analysis");
    add_common(attack, true, false);
    attack->add_option("--type", attack_type,
                       "intercept-resend | entangle-measure | forgery | collusion");
    attack->add_option("--trials", trials, "Trial count override");

    CLI::App* verify =
        app.add_subcommand("verify-msp", "Check the MSP against the access structure");
    add_common(verify, true, false);

    try {
        app.parse(argc, argv);
        if (demo->parsed()) return cmd_demo(seed, as_json, out_path);
        if (run->parsed()) return cmd_run(scenario_path, seed, as_json, out_path);
        if (attack->parsed())
            return cmd_attack(scenario_path, attack_type, trials, seed, as_json, out_path);
        if (verify->parsed()) return cmd_verify_msp(scenario_path, as_json, out_path);
        return kExitValidation;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error[validation]: " << e.what() << "\n";
        return kExitValidation;
    } catch (const CliError& e) {
        std::cerr << "error[" << e.category << "]: " << e.message << "\n";
        return e.code;
    } catch (const qss::NotAuthorized& e) {
        std::cerr << "error[abort]: NotAuthorized: " << e.what() << "\n";
        return kExitAbort;
    } catch (const qss::NotUnauthorized& e) {
        std::cerr << "error[validation]: NotUnauthorized: " << e.what() << "\n";
        return kExitValidation;
    } catch (const qss::ScenarioError& e) {
        std::cerr << "error[validation]: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error[validation]: " << e.what() << "\n";
        return kExitValidation;
    }
}
