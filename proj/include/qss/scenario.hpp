#pragma once

// Scenario files (schema "qss-scenario/1") and transcript / attack-report
// JSON. Key order is fixed so equal seeds give byte-identical output.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qss/adversary.hpp"
#include "qss/protocol.hpp"

namespace qss {

using Json = nlohmann::ordered_json;

struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct AttackSection {
    std::string type;  // intercept-resend | entangle-measure | forgery | collusion
    // intercept-resend
    int position = 1;
    std::uint64_t trials = 100000;
    std::uint32_t qudits = 1;
    // entangle-measure
    std::uint32_t attacks = 100;
    std::uint32_t ancilla_dim = 0;  // 0 = use d
    // forgery
    std::string tamper = "unitary-offset";  // or identity | fake-share
    int party = 0;
    std::int64_t dp = 0, dq = 0, delta = 0;
    // collusion
    std::vector<int> colluders;
    std::int64_t sigma = 0, sigma_prime = 1;
};

struct Scenario {
    std::string name = "scenario";
    std::uint32_t d = 0;
    std::vector<std::vector<std::int64_t>> matrix;
    std::vector<int> psi;
    std::vector<std::vector<int>> gamma;  // authorized sets, 1-based members
    std::int64_t secret = 0;
    std::vector<int> set;  // the authorization set to run
    std::uint64_t seed = 0;
    std::optional<std::vector<std::int64_t>> fixed_rho;
    std::optional<std::int64_t> fixed_q0;
    std::optional<AttackSection> attack;

    /// The worked fixture: d=5, the 4x4 program, secret 3, set {P1,P2,P3},
    /// rho = (4,1,0,2), q0 = 2.
    static Scenario demo();

    static Scenario from_json(const Json& j, std::string name);
    static Scenario from_file(const std::string& path);

    Msp build_msp() const;
    AccessStructure build_gamma() const;
    ParticipantSet set_mask() const;
    RunSpec build_run_spec() const;

    Json to_json() const;  // normalized echo for embedding in reports
};

Json transcript_to_json(const Transcript& t);
std::string transcript_to_string(const Transcript& t);

/// Shared envelope for attack reports: scenario identity + an "attack"
/// section the caller fills in.
Json attack_envelope(const Scenario& sc, std::uint64_t seed);

Json stats_to_json(const AttackStats& stats);

}  // namespace qss
