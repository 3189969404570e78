#include <set>
#include <tuple>

#include "doctest.h"
#include "clq/verify.hpp"

using namespace clq;

namespace {

RootVector R(std::initializer_list<int> v) { return RootVector(v); }

using Key = std::tuple<std::set<RootVector>, std::vector<int>, std::vector<int>, std::multiset<RootVector>>;

Key key_of(const PeriodicIdentity& p) {
    std::multiset<RootVector> prod;
    for (auto& [b, e] : p.product)
        for (int t = 0; t < e; ++t) prod.insert(b);
    return {{p.left, p.right}, p.p_plus, p.p_minus, prod};
}

}  // namespace

TEST_SUITE("verify") {
    TEST_CASE("gamma and beta sequences in A3") {
        auto d = make_dynkin("A3");
        REQUIRE(d.i0() == std::vector<int>{1, 3});
        RootVector th{1, 1, 1};
        std::vector<std::vector<RootVector>> gamma = {
            {R({-1, 0, 0}), R({0, -1, 0}), R({0, 0, -1})}, {R({1, 0, 0}), R({0, -1, 0}), R({0, 0, 1})},
            {R({1, 0, 0}), th, R({0, 0, 1})},                {R({0, 1, 1}), th, R({1, 1, 0})},
            {R({0, 1, 1}), R({0, 1, 0}), R({1, 1, 0})},      {R({0, 0, -1}), R({0, 1, 0}), R({-1, 0, 0})},
            {R({0, 0, -1}), R({0, -1, 0}), R({-1, 0, 0})}};
        std::vector<std::vector<RootVector>> beta = {
            {R({1, 0, 0}), R({0, 1, 0}), R({0, 0, 1})},  {R({1, 1, 0}), R({0, -1, 0}), R({0, 1, 1})},
            {R({0, 1, 1}), R({0, -1, 0}), R({1, 1, 0})}, {R({0, 0, 1}), R({0, 1, 0}), R({1, 0, 0})},
            {R({0, 0, -1}), th, R({-1, 0, 0})},          {R({0, 0, -1}), th, R({-1, 0, 0})},
            {R({0, 0, 1}), R({0, 1, 0}), R({1, 0, 0})}};
        for (int j = 0; j <= 6; ++j)
            for (int i = 0; i < 3; ++i) {
                CHECK(gamma_seq(i, j, d) == gamma[j][i]);
                CHECK(beta_seq(i, j, d) == beta[j][i]);
            }
        // periodicity of period h+2 up to the involution i -> n+1-i
        for (int i = 0; i < 3; ++i)
            for (int j = -4; j <= 4; ++j) {
                auto a = gamma_seq(i, j, d), b = gamma_seq(2 - i, j + 6, d);
                CHECK(a == b);
            }
        CHECK_THROWS_AS(beta_seq(0, -1, d), Error);
    }

    TEST_CASE("periodic system in A3") {
        auto d = make_dynkin("A3");
        auto ids = periodic_identities(d);
        CHECK(ids.size() == 3 * 7);
        for (auto& p : ids) {
            CHECK(p.character_ok);
            CHECK(p.cluster_ok);
        }
        auto dist = distinct_identities(ids);
        CHECK(dist.size() == 9);
        RootVector th{1, 1, 1};
        std::set<Key> expect = {
            {{R({1, 0, 0}), R({-1, 0, 0})}, {1, 0, 0}, {0, 0, 0}, {R({0, -1, 0})}},
            {{R({0, 1, 1}), R({1, 0, 0})}, {0, 0, 1}, {0, 0, 0}, {th}},
            {{R({0, 0, -1}), R({0, 1, 1})}, {0, 1, 0}, {0, 0, 1}, {R({0, 1, 0})}},
            {{R({0, 0, 1}), R({0, 0, -1})}, {0, 0, 1}, {0, 0, 0}, {R({0, -1, 0})}},
            {{R({1, 1, 0}), R({0, 0, 1})}, {1, 0, 0}, {0, 0, 0}, {th}},
            {{R({-1, 0, 0}), R({1, 1, 0})}, {0, 1, 0}, {1, 0, 0}, {R({0, 1, 0})}},
            {{th, R({0, -1, 0})}, {1, 0, 1}, {0, 1, 0}, {R({1, 0, 0}), R({0, 0, 1})}},
            {{R({0, 1, 0}), th}, {0, 1, 0}, {0, 0, 0}, {R({1, 1, 0}), R({0, 1, 1})}},
            {{R({0, -1, 0}), R({0, 1, 0})}, {0, 1, 0}, {0, 0, 0}, {R({-1, 0, 0}), R({0, 0, -1})}}};
        std::set<Key> got;
        for (auto& p : dist) got.insert(key_of(p));
        CHECK(got == expect);
        CHECK(dist[0].str() == "[S(a1)][S(-a1)] = [F1] + [S(-a2)]");

        auto rep = periodic_tsystem_verify(d);
        CHECK(rep.passed());
        CHECK(rep.find("periodic_system")->witness["distinct"] == 9);
        CHECK(rep.find("gamma_coverage")->status == CheckStatus::Pass);
    }

    TEST_CASE("periodic system in other types") {
        for (auto nm : {"A1", "A2", "A4", "D4", "D5"}) {
            auto rep = periodic_tsystem_verify(make_dynkin(nm));
            CHECK_MESSAGE(rep.passed(), nm, rep.to_json().dump());
            CHECK(rep.find("periodic_system")->status == CheckStatus::Pass);
        }
        auto a3b = with_i0(make_dynkin("A3"), {2});
        CHECK(periodic_tsystem_verify(a3b).passed());
        auto e6 = periodic_tsystem_verify(make_dynkin("E6"));
        CHECK(e6.passed());
        CHECK(e6.find("multiplicity_free_identities")->witness["identities"] == 12);
        CHECK(e6.find("periodic_system")->status == CheckStatus::Skipped);
    }

    TEST_CASE("conjecture checks") {
        auto a3 = verify_conjecture_c1(make_dynkin("A3"));
        CHECK_MESSAGE(a3.passed(), a3.to_json().dump());
        CHECK(a3.find("clusters")->witness["clusters"] == 14);
        auto& pw = a3.find("pairs")->witness;
        // 9 diagonal pairs plus one per edge-pair of the 14 clusters
        CHECK(pw["compatible_pairs"].get<int>() == 9 + 21);
        CHECK(pw["exchange_pairs"].get<int>() == 15);
        CHECK(pw["other_incompatible_pairs"].get<int>() == 0);
        CHECK(a3.find("characters")->witness["phiJ_compared"] == 9);
        CHECK(a3.find("primality")->witness["factorizations_ruled_out"].get<int>() > 0);

        auto d4 = verify_conjecture_c1(make_dynkin("D4"));
        CHECK_MESSAGE(d4.passed(), d4.to_json().dump());
        CHECK(d4.find("clusters")->witness["clusters"] == 50);
        CHECK(d4.find("characters")->witness["phiJ_compared"] == 16);
        CHECK(d4.find("pairs")->witness["exchange_pairs"].get<int>() > 0);

        for (auto nm : {"A1", "A2", "A4"}) CHECK(verify_conjecture_c1(make_dynkin(nm)).passed());
        auto e6 = verify_conjecture_c1(make_dynkin("E6"));
        CHECK(e6.checks.size() == 4);
        for (auto& c : e6.checks) CHECK(c.status == CheckStatus::Skipped);
    }

    TEST_CASE("two-restricted characters") {
        auto d = with_i0(make_dynkin("A3"), {2});
        auto rep = two_restricted_check({1, 2, 1}, d);
        CHECK(rep.passed());
        auto& w = rep.checks[0].witness;
        CHECK(rep.checks[0].status == CheckStatus::Pass);
        CHECK(w["terms"] == 8);
        CHECK(w["tau_minus"] == "a1+2a2+a3");
        CHECK(two_restricted_check({0, 1, 0}, d).checks[0].status == CheckStatus::Pass);
        CHECK(two_restricted_check({0, 0, 0}, d).checks[0].status == CheckStatus::Pass);
        auto a4 = make_dynkin("A4");
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; b <= 2; ++b)
                for (int c = 0; c <= 2; ++c)
                    for (int e = 0; e <= 2; ++e) {
                        auto r = two_restricted_check({a, b, c, e}, a4);
                        CHECK(r.passed());
                    }
        CHECK(two_restricted_check({1, 1, 1, 1}, make_dynkin("D4")).checks[0].status == CheckStatus::Skipped);
    }

    TEST_CASE("cluster expansions and reconstruction") {
        for (auto nm : {"A3", "D4"}) {
            auto d = make_dynkin(nm);
            auto rep = expansion_uniqueness(d, 1000, -3, 3, 7);
            CHECK(rep.passed());
            CHECK(rep.checks[0].witness["samples"] == 1000);
            CHECK(reconstruction_check(d).passed());
        }
        CHECK(reconstruction_check(make_dynkin("A4")).passed());
    }

    TEST_CASE("report json") {
        auto rep = verify_all(make_dynkin("A2"), 50);
        auto j = rep.to_json();
        CHECK(j["type"] == "A2");
        CHECK(j["passed"] == true);
        for (auto& c : j["checks"]) {
            CHECK(c.contains("id"));
            CHECK(c.contains("seconds"));
            CHECK((c["status"] == "pass" || c["status"] == "skipped"));
        }
        CHECK(rep.find("nonexistent") == nullptr);
    }
}
