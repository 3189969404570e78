#pragma once

#include <functional>
#include <map>
#include <vector>

#include "clq/fpoly.hpp"
#include "clq/qchar.hpp"

namespace clq {

using Matrix = std::vector<std::vector<int>>;  // rows x cols over F_p

// Dynkin quiver with I1 sources and I0 sinks
struct QuiverRep {
    struct Arrow {
        int src = 0, dst = 0;
        Matrix map;  // dims[dst] x dims[src]
    };
    int p = 2;
    std::vector<int> dims;
    std::vector<Arrow> arrows;

    void validate() const;
    nlohmann::json to_json() const;
};

using RepFamily = std::function<QuiverRep(int p)>;

struct GrassCount {
    RootVector gamma;
    std::map<int, mpz_class> counts;  // prime -> number of F_p-points
    std::vector<mpz_class> poly;      // coefficients in p, lowest first
    mpz_class euler;
    nlohmann::json to_json() const;
};

struct GrassLimits {
    std::size_t max_points = 20000000;  // subspace tuples examined per (gamma, prime)
    int max_total_dim = 10;
};

QuiverRep empty_rep(const DynkinData& d, int p);
QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b);
QuiverRep indecomposable_rep(const RootVector& alpha, const DynkinData& d, int p);
// generic representation of L(m), m in C1: sum of M[tau_-(beta)] along the cluster expansion
QuiverRep generic_rep(const YMonomial& m, const DynkinData& d, int p);

int endomorphism_dimension(const QuiverRep& M);
mpz_class count_subreps(const QuiverRep& M, const RootVector& gamma, const GrassLimits& lim = {});
GrassCount grassmannian_count(const RepFamily& M, const DynkinData& d, const RootVector& gamma,
                              const GrassLimits& lim = {});
mpz_class euler_characteristic(const RepFamily& M, const DynkinData& d, const RootVector& gamma,
                               const GrassLimits& lim = {});
// all gamma <= dims with nonzero Euler characteristic
std::vector<GrassCount> grassmannian_table(const RepFamily& M, const DynkinData& d, const GrassLimits& lim = {});

FPoly geometric_fpoly(const RootVector& alpha, const DynkinData& d, const GrassLimits& lim = {});
// chi_q(L(m))_{<=2} from the generic representation
DecoratedQChar geometric_truncated_char(const YMonomial& m, const DynkinData& d, const GrassLimits& lim = {});

}  // namespace clq
