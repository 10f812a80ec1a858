#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "qss/rng.hpp"
#include "qss/span_program.hpp"

using namespace qss;

namespace {

Msp example_msp() {
    const PrimeModulus d5(5);
    return Msp(d5,
               FpMatrix::from_ints(d5, {{1, 0, 3, 4}, {0, 0, 2, 1}, {3, 4, 1, 0}, {1, 2, 4, 0}}),
               {1, 2, 3, 4});
}

// Example access structure: minimal sets {P1,P2,P3} and {P1,P2,P4}.
AccessStructure example_gamma() { return AccessStructure(4, {0b0111, 0b1011}); }

}  // namespace

TEST_CASE("access structure closure and partition") {
    const AccessStructure gamma = example_gamma();
    CHECK(gamma.authorized(0b0111));
    CHECK(gamma.authorized(0b1011));
    CHECK(gamma.authorized(0b1111));  // superset closure
    CHECK_FALSE(gamma.authorized(0b0011));
    CHECK_FALSE(gamma.authorized(0b1101));
    CHECK_FALSE(gamma.authorized(0));

    // Delta is exactly the complement and contains the listed 13 sets.
    std::vector<ParticipantSet> delta;
    for (ParticipantSet m = 0; m < 16; ++m)
        if (!gamma.authorized(m)) delta.push_back(m);
    CHECK(delta.size() == 13);
    CHECK(gamma.authorized_sets().size() == 3);

    const auto maximal = gamma.maximal_unauthorized_sets();
    CHECK(maximal == std::vector<ParticipantSet>{0b0011, 0b1101, 0b1110});
}

TEST_CASE("closing a closed structure changes nothing") {
    RandomStream rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + rng.uniform_below(5);
        std::vector<ParticipantSet> sets;
        const int count = 1 + rng.uniform_below(4);
        for (int i = 0; i < count; ++i)
            sets.push_back(rng.uniform_below(std::uint32_t(1) << n));
        const AccessStructure once(n, sets);
        const AccessStructure twice(n, once.authorized_sets());
        for (ParticipantSet m = 0; m < (ParticipantSet{1} << n); ++m)
            CHECK(once.authorized(m) == twice.authorized(m));
    }
}

TEST_CASE("MSP construction validates psi") {
    const PrimeModulus d5(5);
    const FpMatrix m = FpMatrix::from_ints(d5, {{1, 0}, {0, 1}});
    CHECK_THROWS_AS(Msp(d5, m, {1, 3}), std::invalid_argument);  // P2 unlabeled
    CHECK_THROWS_AS(Msp(d5, m, {1}), std::invalid_argument);     // wrong length
    const Msp msp(d5, m, {1, 1});  // several rows per participant is fine
    CHECK(msp.participants() == 1);
    CHECK(msp.rows_of_participant(1).size() == 2);
    CHECK(msp.target() == FpVector(d5, {1, 0}));
}

TEST_CASE("verify_msp flags an unauthorized set that spans the target") {
    const MspReport report = verify_msp(example_msp(), example_gamma());
    bool flagged_12 = false;
    for (const auto& e : report.entries) {
        if (e.set == 0b0011) {
            flagged_12 = true;
            CHECK_FALSE(e.in_gamma);
            CHECK(e.spans_target);  // unauthorized yet spans the target
            CHECK_FALSE(e.has_sweeping);
            CHECK_FALSE(e.ok);
        } else {
            CHECK(e.ok);
        }
    }
    CHECK(flagged_12);
    CHECK_FALSE(report.all_ok());
}

TEST_CASE("verify_msp all-pass cases") {
    SUBCASE("trivial 1x1 program") {
        const PrimeModulus d5(5);
        const Msp msp(d5, FpMatrix::from_ints(d5, {{1}}), {1});
        const MspReport report = verify_msp(msp, AccessStructure(1, {0b1}));
        CHECK(report.all_ok());
    }
    SUBCASE("closure of {P1,P2} against the example matrix") {
        const MspReport report = verify_msp(example_msp(), AccessStructure(4, {0b0011}));
        CHECK(report.all_ok());
    }
}

TEST_CASE("recombination vectors") {
    const Msp msp = example_msp();
    const PrimeModulus d5(5);

    SUBCASE("minimal sets share the coefficients (1,1,0)") {
        CHECK(recombination(msp, 0b0111).lambda == FpVector(d5, {1, 1, 0}));
        CHECK(recombination(msp, 0b1011).lambda == FpVector(d5, {1, 1, 0}));
    }

    SUBCASE("full set: canonical solution; (1,1,3,4) is not a solution") {
        const RecombinationVector full = recombination(msp, 0b1111);
        CHECK(full.lambda == FpVector(d5, {1, 1, 0, 0}));
        const FpMatrix mt = msp.matrix().transposed();
        CHECK(mat_vec_mul(mt, full.lambda) == msp.target());
        // the residual of the non-solution (1,1,3,4) is (4,0,4,0)
        CHECK(mat_vec_mul(mt, FpVector(d5, {1, 1, 3, 4})) == FpVector(d5, {4, 0, 4, 0}));
    }

    SUBCASE("{P3,P4} is rejected, confirmed exhaustively") {
        CHECK_THROWS_AS(recombination(msp, 0b1100), NotAuthorized);
        const FpMatrix mt = msp.matrix().select_rows({2, 3}).transposed();
        for (std::uint32_t l1 = 0; l1 < 5; ++l1)
            for (std::uint32_t l2 = 0; l2 < 5; ++l2)
                CHECK_FALSE(mat_vec_mul(mt, FpVector(d5, {l1, l2})) == msp.target());
    }
}

TEST_CASE("distribute and reconstruct") {
    const Msp msp = example_msp();
    const PrimeModulus d5(5);

    SUBCASE("worked example shares") {
        const ShareAssignment shares = distribute(msp, FpVector(d5, {4, 1, 0, 2}));
        CHECK(shares.value_for_row(0) == Fp(2, d5));
        CHECK(shares.value_for_row(1) == Fp(2, d5));
        CHECK(shares.value_for_row(2) == Fp(1, d5));
        CHECK(shares.value_for_row(3) == Fp(1, d5));
        // every row lands with exactly one participant
        std::size_t total = 0;
        for (const auto& list : shares.shares) total += list.size();
        CHECK(total == 4);

        const RecombinationVector lambda = recombination(msp, 0b0111);
        CHECK(reconstruct(shares, lambda) == Fp(4, d5));
    }

    SUBCASE("zero rho gives zero shares and zero reconstruction") {
        const ShareAssignment shares = distribute(msp, FpVector(d5, {0, 0, 0, 0}));
        for (std::size_t r = 0; r < 4; ++r) CHECK(shares.value_for_row(r) == Fp(0, d5));
        CHECK(reconstruct(shares, recombination(msp, 0b0111)) == Fp(0, d5));
    }

    SUBCASE("identity matrix routes rho itself") {
        const Msp id(d5, FpMatrix::identity(d5, 4), {1, 2, 3, 4});
        const FpVector rho(d5, {3, 1, 4, 2});
        const ShareAssignment shares = distribute(id, rho);
        for (std::size_t r = 0; r < 4; ++r) CHECK(shares.value_for_row(r) == rho.at(r));
    }

    SUBCASE("200 seeded draws with rho[0] = 3 always reconstruct 3") {
        RandomStream rng(123);
        const RecombinationVector lambda = recombination(msp, 0b0111);
        for (int trial = 0; trial < 200; ++trial) {
            FpVector rho(d5, 4);
            rho.set(0, Fp(3, d5));
            for (std::size_t i = 1; i < 4; ++i) rho.set(i, rng.uniform_fp(d5));
            CHECK(reconstruct(distribute(msp, rho), lambda) == Fp(3, d5));
        }
    }
}

TEST_CASE("completeness and perfect privacy, exhaustive over Z_5^4") {
    const Msp msp = example_msp();
    const PrimeModulus d5(5);

    // Cache per-set recombination vectors / restricted row lists.
    std::vector<std::optional<RecombinationVector>> lambdas(16);
    std::vector<std::vector<std::size_t>> rows(16);
    for (ParticipantSet set = 0; set < 16; ++set) {
        lambdas[set] = try_recombination(msp, set);
        rows[set] = msp.rows_of(set);
        // duality: spans xor sweeping vector, for every subset
        CHECK(lambdas[set].has_value() != sweeping_vector(msp, set).has_value());
    }

    // restricted share tuples per (set, secret): multisets must match across
    // secrets for every non-spanning set
    std::map<std::pair<ParticipantSet, std::uint32_t>,
             std::vector<std::vector<std::uint32_t>>> buckets;

    FpVector rho(d5, 4);
    for (std::uint32_t a = 0; a < 5; ++a)
        for (std::uint32_t b = 0; b < 5; ++b)
            for (std::uint32_t c = 0; c < 5; ++c)
                for (std::uint32_t e = 0; e < 5; ++e) {
                    rho.set(0, Fp(a, d5));
                    rho.set(1, Fp(b, d5));
                    rho.set(2, Fp(c, d5));
                    rho.set(3, Fp(e, d5));
                    const ShareAssignment shares = distribute(msp, rho);
                    for (ParticipantSet set = 0; set < 16; ++set) {
                        if (lambdas[set]) {
                            CHECK(reconstruct(shares, *lambdas[set]) == Fp(a, d5));
                        } else {
                            std::vector<std::uint32_t> tuple;
                            for (std::size_t r : rows[set])
                                tuple.push_back(shares.value_for_row(r).value());
                            buckets[{set, a}].push_back(std::move(tuple));
                        }
                    }
                }

    for (ParticipantSet set = 0; set < 16; ++set) {
        if (lambdas[set]) continue;
        auto reference = buckets[{set, 0}];
        std::sort(reference.begin(), reference.end());
        CHECK(reference.size() == 125);
        for (std::uint32_t secret = 1; secret < 5; ++secret) {
            auto other = buckets[{set, secret}];
            std::sort(other.begin(), other.end());
            CHECK(reference == other);
        }
    }
}
