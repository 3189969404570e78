#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "clq/c1chars.hpp"
#include "clq/roots.hpp"

namespace clq {

enum class CheckStatus { Pass, Fail, Skipped };
const char* status_name(CheckStatus s);

struct CheckResult {
    std::string id;
    CheckStatus status = CheckStatus::Pass;
    nlohmann::json witness = nlohmann::json::object();
    double seconds = 0;

    nlohmann::json to_json() const;
};

struct VerificationReport {
    std::string type;
    std::vector<CheckResult> checks;

    bool passed() const;  // no check failed
    const CheckResult* find(const std::string& id) const;
    void append(const VerificationReport& other);
    nlohmann::json to_json() const;
};

VerificationReport verify_conjecture_c1(const DynkinData& d);

// gamma_i(j) for any integer j, beta_i(j) for j >= 0
RootVector gamma_seq(int i, int j, const DynkinData& d);
RootVector beta_seq(int i, int j, const DynkinData& d);

// [S(left)][S(right)] = prod F^p_plus + prod F^p_minus * prod S(beta)^e
struct PeriodicIdentity {
    int i = 0, j = 0;
    RootVector left, right;
    std::vector<int> p_plus, p_minus;
    std::vector<std::pair<RootVector, int>> product;
    bool character_ok = false;
    bool cluster_ok = false;

    std::string str() const;
    nlohmann::json to_json() const;
};

std::vector<PeriodicIdentity> periodic_identities(const DynkinData& d);
// one representative per distinct identity, in order of first appearance
std::vector<PeriodicIdentity> distinct_identities(const std::vector<PeriodicIdentity>& ids);
VerificationReport periodic_tsystem_verify(const DynkinData& d);

VerificationReport two_restricted_check(const RootVector& gamma, const DynkinData& d);

VerificationReport expansion_uniqueness(const DynkinData& d, int samples, int lo, int hi, std::uint64_t seed = 1);
VerificationReport reconstruction_check(const DynkinData& d);

VerificationReport verify_all(const DynkinData& d, int samples = 1000, std::uint64_t seed = 1);

}  // namespace clq
