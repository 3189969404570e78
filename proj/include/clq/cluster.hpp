#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clq/laurent.hpp"
#include "clq/roots.hpp"

namespace clq {

// rows x cols integer matrix; the last rows-cols rows are frozen
struct ExchangeMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<int>> b;

    int frozen() const { return rows - cols; }
    bool principal_skew_symmetric() const;
    bool operator==(const ExchangeMatrix&) const = default;
    nlohmann::json to_json() const { return b; }
};

ExchangeMatrix mutate_matrix(const ExchangeMatrix& B, int k);  // k is 0-based

struct Seed {
    ExchangeMatrix B;
    std::vector<LaurentPoly> vars;  // size rows; expressed in the initial variables
    std::vector<VarId> initial;     // initial variable ids, same length

    int rank() const { return B.cols; }
    nlohmann::json to_json() const;
    static Seed from_json(const nlohmann::json& j);
};

// Exchange binomial data of one mutation
struct Exchange {
    int k = 0;
    LaurentPoly old_var;
    LaurentPoly new_var;
    std::vector<std::pair<int, int>> plus;   // (position, exponent) with b_ik > 0
    std::vector<std::pair<int, int>> minus;  // (position, exponent) with b_ik < 0
};

Seed make_seed(const ExchangeMatrix& B, const std::vector<std::string>& names);
Seed mutate_seed(const Seed& s, int k, Exchange* ex = nullptr);
Seed build_c1_seed(const DynkinData& d);
// initial cluster named z_i, f_i: the C1 seed mutated at every vertex of I1 (matrix only)
ExchangeMatrix c1_z_matrix(const DynkinData& d);
// explicit table b^z_ij
ExchangeMatrix bz_table(const DynkinData& d);

struct Limits {
    std::size_t max_seeds = 100000;
    std::size_t max_terms = 1000000;
};

struct Atlas {
    struct Edge {
        int from = 0, to = 0, k = 0;
        int out_var = 0, in_var = 0;
    };
    int rank = 0;
    int total = 0;  // rows
    std::vector<VarId> initial;
    std::vector<LaurentPoly> variables;  // non-frozen, distinct
    std::vector<LaurentPoly> frozen;
    std::vector<std::vector<int>> clusters;  // sorted variable indices
    std::vector<Seed> seeds;                 // one seed per cluster
    std::vector<std::vector<int>> seed_vars; // position -> variable index (non-frozen positions)
    std::vector<Edge> edges;

    // filled by label_by_denominator
    std::vector<RootVector> labels;
    std::map<RootVector, int> by_label;

    int var_index(const LaurentPoly& p) const;
    std::optional<int> find_cluster(std::vector<int> vars) const;
    nlohmann::json to_json() const;

    mutable std::map<int, std::vector<std::vector<mpq_class>>> inverse_cache;
};

Atlas enumerate_atlas(const Seed& s0, const Limits& lim = {});

RootVector denominator_vector(const LaurentPoly& p, const std::vector<VarId>& nonfrozen_initial);
std::map<RootVector, int> label_by_denominator(Atlas& atlas, const DynkinData& d);

bool compatible(const RootVector& a, const RootVector& b, const Atlas& atlas);
std::map<RootVector, int> cluster_expansion(const RootVector& g, const Atlas& atlas);

// cached labelled C1 atlas of d
const Atlas& c1_atlas(const DynkinData& d);
const LaurentPoly& x_of(const Atlas& atlas, const RootVector& a);

}  // namespace clq
