#include "qss/scenario.hpp"

#include <fstream>

namespace qss {

namespace {

ParticipantSet mask_from_list(const std::vector<int>& members, int n, const char* what) {
    ParticipantSet mask = 0;
    for (int p : members) {
        if (p < 1 || p > n)
            throw ScenarioError(std::string(what) + " names participant " +
                                std::to_string(p) + " outside 1.." + std::to_string(n));
        mask |= ParticipantSet{1} << (p - 1);
    }
    return mask;
}

std::vector<int> list_from_mask(ParticipantSet mask, int n) {
    std::vector<int> out;
    for (int p = 1; p <= n; ++p)
        if (mask >> (p - 1) & 1u) out.push_back(p);
    return out;
}

}  // namespace

Scenario Scenario::demo() {
    Scenario sc;
    sc.name = "demo";
    sc.d = 5;
    sc.matrix = {{1, 0, 3, 4}, {0, 0, 2, 1}, {3, 4, 1, 0}, {1, 2, 4, 0}};
    sc.psi = {1, 2, 3, 4};
    sc.gamma = {{1, 2, 3}, {1, 2, 4}, {1, 2, 3, 4}};
    sc.secret = 3;
    sc.set = {1, 2, 3};
    sc.seed = 1;
    sc.fixed_rho = std::vector<std::int64_t>{4, 1, 0, 2};
    sc.fixed_q0 = 2;
    return sc;
}

Scenario Scenario::from_json(const Json& j, std::string name) {
    if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
    if (j.value("schema", "") != std::string("qss-scenario/1"))
        throw ScenarioError("missing or unsupported schema (want \"qss-scenario/1\")");

    Scenario sc;
    sc.name = std::move(name);
    try {
        sc.d = j.at("d").get<std::uint32_t>();
        const Json& msp = j.at("msp");
        sc.matrix = msp.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
        sc.psi = msp.at("psi").get<std::vector<int>>();
        sc.gamma = j.at("gamma").get<std::vector<std::vector<int>>>();
        sc.secret = j.at("secret").get<std::int64_t>();
        sc.set = j.at("set").get<std::vector<int>>();
        sc.seed = j.value("seed", std::uint64_t{0});
        if (j.contains("fixed")) {
            const Json& f = j.at("fixed");
            if (f.contains("rho"))
                sc.fixed_rho = f.at("rho").get<std::vector<std::int64_t>>();
            if (f.contains("q0")) sc.fixed_q0 = f.at("q0").get<std::int64_t>();
        }
        if (j.contains("attack")) {
            const Json& a = j.at("attack");
            AttackSection at;
            at.type = a.at("type").get<std::string>();
            at.position = a.value("position", 1);
            at.trials = a.value("trials", std::uint64_t{100000});
            at.qudits = a.value("qudits", std::uint32_t{1});
            at.attacks = a.value("attacks", std::uint32_t{100});
            at.ancilla_dim = a.value("ancilla_dim", std::uint32_t{0});
            at.tamper = a.value("tamper", std::string("unitary-offset"));
            at.party = a.value("party", 0);
            at.dp = a.value("dp", std::int64_t{0});
            at.dq = a.value("dq", std::int64_t{0});
            at.delta = a.value("delta", std::int64_t{0});
            if (a.contains("colluders"))
                at.colluders = a.at("colluders").get<std::vector<int>>();
            at.sigma = a.value("sigma", std::int64_t{0});
            at.sigma_prime = a.value("sigma_prime", std::int64_t{1});
            sc.attack = std::move(at);
        }
    } catch (const Json::exception& e) {
        throw ScenarioError(std::string("malformed scenario: ") + e.what());
    }

    // Construction below re-validates everything against the library types;
    // surface those failures as scenario errors with context.
    try {
        sc.build_run_spec();
    } catch (const NotAuthorized&) {
        // A valid scenario may still name a non-spanning set; the run rejects it.
    } catch (const std::exception& e) {
        throw ScenarioError(std::string("invalid scenario: ") + e.what());
    }
    return sc;
}

Scenario Scenario::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ScenarioError(std::string("scenario JSON parse error: ") + e.what());
    }
    std::string name = path;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos)
        name = name.substr(slash + 1);
    if (const auto dot = name.find_last_of('.'); dot != std::string::npos)
        name = name.substr(0, dot);
    return from_json(j, name);
}

Msp Scenario::build_msp() const {
    const PrimeModulus mod(d);
    return Msp(mod, FpMatrix::from_ints(mod, matrix), psi);
}

AccessStructure Scenario::build_gamma() const {
    int n = 0;
    for (int p : psi) n = std::max(n, p);
    std::vector<ParticipantSet> sets;
    for (const auto& members : gamma) sets.push_back(mask_from_list(members, n, "gamma"));
    return AccessStructure(n, sets);
}

ParticipantSet Scenario::set_mask() const {
    int n = 0;
    for (int p : psi) n = std::max(n, p);
    return mask_from_list(set, n, "run set");
}

RunSpec Scenario::build_run_spec() const {
    Msp msp = build_msp();
    AccessStructure g = build_gamma();
    const PrimeModulus mod = msp.modulus();
    std::optional<FpVector> rho;
    if (fixed_rho) rho = FpVector::from_ints(mod, *fixed_rho);
    std::optional<Fp> q0;
    if (fixed_q0) q0 = Fp(*fixed_q0, mod);
    return RunSpec{std::move(msp), std::move(g), Fp(secret, mod), set_mask(),
                   std::move(rho), std::move(q0), name};
}

Json Scenario::to_json() const {
    Json j;
    j["schema"] = "qss-scenario/1";
    j["d"] = d;
    j["msp"] = Json{{"matrix", matrix}, {"psi", psi}};
    j["gamma"] = gamma;
    j["secret"] = secret;
    j["set"] = set;
    j["seed"] = seed;
    if (fixed_rho || fixed_q0) {
        Json f = Json::object();
        if (fixed_rho) f["rho"] = *fixed_rho;
        if (fixed_q0) f["q0"] = *fixed_q0;
        j["fixed"] = std::move(f);
    }
    if (attack) {
        Json a;
        a["type"] = attack->type;
        if (attack->type == "intercept-resend") {
            a["position"] = attack->position;
            a["trials"] = attack->trials;
            a["qudits"] = attack->qudits;
        } else if (attack->type == "entangle-measure") {
            a["attacks"] = attack->attacks;
            a["ancilla_dim"] = attack->ancilla_dim;
        } else if (attack->type == "forgery") {
            a["tamper"] = attack->tamper;
            a["party"] = attack->party;
            a["dp"] = attack->dp;
            a["dq"] = attack->dq;
            a["delta"] = attack->delta;
            a["trials"] = attack->trials;
        } else if (attack->type == "collusion") {
            a["colluders"] = attack->colluders;
            a["sigma"] = attack->sigma;
            a["sigma_prime"] = attack->sigma_prime;
        }
        j["attack"] = std::move(a);
    }
    return j;
}

Json transcript_to_json(const Transcript& t) {
    Json j;
    j["schema"] = "qss-transcript/1";
    j["scenario"] = t.scenario_name;
    j["d"] = t.d;
    j["msp"] = Json{{"matrix", t.matrix}, {"psi", t.psi}};
    j["set"] = list_from_mask(t.set, t.n);
    j["commitments"] = Json{{"h1", t.h1_hex}, {"h2", t.h2_hex}};
    Json rounds = Json::array();
    for (const RoundRecord& r : t.rounds) {
        Json jr;
        jr["sender"] = r.sender == 0 ? std::string("dealer")
                                     : "bob" + std::to_string(r.sender);
        jr["p"] = r.p;
        jr["q"] = r.q;
        jr["label"] = Json::array({r.label_l, r.label_j});
        rounds.push_back(std::move(jr));
    }
    j["rounds"] = std::move(rounds);
    j["q_i"] = t.q_i ? Json(*t.q_i) : Json(nullptr);
    j["r_i"] = t.r_i ? Json(*t.r_i) : Json(nullptr);
    Json recovered = Json::array();
    for (const RecoveryRecord& r : t.recovered)
        recovered.push_back(Json{{"participant", r.participant},
                                 {"secret", r.recovered},
                                 {"verified", r.verified}});
    j["recovered"] = std::move(recovered);
    j["verdicts"] = Json{{"r_check", t.verdicts.outcome_pass}, {"h1", t.verdicts.h1_pass},
                         {"released", t.verdicts.released}, {"h2", t.verdicts.h2_pass},
                         {"verified", t.verdicts.verified}, {"reason", t.verdicts.reason}};
    j["seed"] = t.seed;
    return j;
}

std::string transcript_to_string(const Transcript& t) {
    return transcript_to_json(t).dump(2) + "\n";
}

Json attack_envelope(const Scenario& sc, std::uint64_t seed) {
    Json j;
    j["schema"] = "qss-attack/1";
    j["scenario"] = sc.name;
    j["d"] = sc.d;
    j["msp"] = Json{{"matrix", sc.matrix}, {"psi", sc.psi}};
    j["set"] = sc.set;
    j["seed"] = seed;
    return j;
}

Json stats_to_json(const AttackStats& stats) {
    Json j;
    j["trials"] = stats.trials;
    j["eve_correct_basis_rate"] = stats.eve_correct_basis_rate;
    j["eve_secret_success_rate"] = stats.eve_secret_success_rate;
    j["alice_detection_rate"] = stats.alice_detection_rate;
    j["participant_detection_rate"] = stats.participant_detection_rate;
    j["radius3_correct_basis"] =
        AttackStats::radius3(stats.eve_correct_basis_rate, stats.trials);
    j["radius3_detection"] = AttackStats::radius3(stats.alice_detection_rate, stats.trials);
    return j;
}

}  // namespace qss
