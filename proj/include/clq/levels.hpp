#pragma once

#include <map>
#include <string>
#include <vector>

#include "clq/cluster.hpp"
#include "clq/qchar.hpp"

namespace clq {

// i 0-based, k in [1, ell+1]
int r_value(const DynkinData& d, int i, int k, int ell);

struct LevelSeed {
    DynkinData d;
    int ell = 1;
    Seed seed;
    std::vector<std::pair<int, int>> vertex;  // row -> (i, k)
    std::vector<YMonomial> kr;                // row -> highest monomial of W^{(i)}_{k, r(i,k)}
    int row(int i, int k) const;
    nlohmann::json to_json() const;
};

LevelSeed build_gamma_ell_seed(const DynkinData& d, int ell);

struct TSystemCheck {
    int i = 0, k = 0;
    YMonomial mutated;  // highest monomial of the new KR module
    bool ok = false;
};
std::vector<TSystemCheck> initial_exchange_checks(const DynkinData& d, int ell);
bool verify_initial_tsystem(const DynkinData& d, int ell);

// q-character of a cluster variable, substituting KR characters at the initial seed
// x evaluated at characters of the initial variables; the division must be exact
YPoly substitute_characters(const LaurentPoly& x, const std::map<VarId, YPoly>& images);
YPoly cluster_variable_qchar(const LaurentPoly& x, const LevelSeed& s);
// dominant monomial of largest weight
YMonomial highest_dominant(const YPoly& p, const DynkinData& d);
mpz_class level_dimension(const LaurentPoly& x, const LevelSeed& s);

struct Diagonal {
    int a = 0, b = 0;
    bool operator==(const Diagonal&) const = default;
};
Diagonal sl2_diagonal_model(int k, int s, int ell);
bool diagonals_cross(const Diagonal& x, const Diagonal& y);
// W_{k,2s} (x) W_{k',2s'} simple iff the diagonals do not cross
bool sl2_tensor_simple(int k1, int s1, int k2, int s2, int ell);
// independent check through sl2 characters: number of simple constituents
int sl2_constituents(int k1, int s1, int k2, int s2);

struct CatalogEntry {
    YMonomial module;
    mpz_class dimension;
    bool frozen = false;
};
struct LevelCatalog {
    int variables = 0;
    int clusters = 0;
    std::vector<CatalogEntry> entries;
    nlohmann::json to_json() const;
};
// enumerate the atlas of Gamma_ell and identify every variable with a simple module
LevelCatalog level_catalog(const DynkinData& d, int ell, const Limits& lim = {});

struct GrassIdentity {
    std::string module;      // e.g. "Y[1,0]*Y[1,2]"
    std::string expression;  // in Pluecker coordinates, e.g. "[1,3,4][2,5,6]-[1,5,6]"
    mpz_class value;
    mpz_class expected;
};
struct GrassReport {
    bool frozen_ok = false;
    mpz_class closing_value;  // [2,3,6][1,4,5] - 1
    std::vector<GrassIdentity> identities;
    bool ok() const;
    nlohmann::json to_json() const;
};
mpz_class pluecker(const std::vector<std::vector<long>>& m, const std::vector<int>& cols);
mpz_class eval_pluecker_expression(const std::string& expr, const std::vector<std::vector<long>>& m);
GrassReport grassmannian_check(int ell = 2, int n = 2);

struct NonRealSignal {
    std::string type;
    YMonomial module;
    std::vector<YMonomial> claimed;  // highest monomials of the displayed constituents
    std::size_t dominant_in_square = 0;
    bool claimed_present = false;
    nlohmann::json to_json() const;
};
std::vector<NonRealSignal> non_real_signals();

}  // namespace clq
