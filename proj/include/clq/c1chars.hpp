#pragma once

#include <functional>
#include <map>
#include <vector>

#include "clq/cluster.hpp"
#include "clq/qchar.hpp"

namespace clq {

enum class Route { Fpoly, PhiJ };
Route parse_route(const std::string& s);
const char* route_name(Route r);

// m = prod_i (Y_{i,xi} Y_{i,xi+2})^{frozen_i} * Y^gamma
struct C1Label {
    std::vector<int> frozen;
    RootVector gamma;
};

// positive exponents of Y_{i,xi_i}, Y_{i,xi_i+2} only
bool is_c1_monomial(const YMonomial& m, const DynkinData& d);
C1Label c1_label(const YMonomial& m, const DynkinData& d);
YMonomial c1_monomial(const C1Label& l, const DynkinData& d);
// highest monomial of S(beta), beta almost positive
YMonomial y_beta(const RootVector& beta, const DynkinData& d);
YMonomial frozen_monomial(int i, const DynkinData& d);

// truncated character of S(beta)
DecoratedQChar truncated_root_char(const RootVector& beta, const DynkinData& d, Route route);
// truncated character of L(m) for m in C1
DecoratedQChar truncated_char_c1(const YMonomial& m, const DynkinData& d, Route route = Route::Fpoly);
// gamma >= 0 with connected support: phi_J by FM on the support, extended to the neighbours
DecoratedQChar phi_route(const RootVector& gamma, const DynkinData& d);
// multiplicity-free root: sum over admissible 0/1 sequences
DecoratedQChar nu_sequence_char(const RootVector& beta, const DynkinData& d);

using SimpleTable = std::function<DecoratedQChar(const YMonomial&)>;
// simple constituents with multiplicities, by maximal dominant monomial subtraction
std::vector<std::pair<YMonomial, Mult>> decompose_product(const std::vector<DecoratedQChar>& factors,
                                                           const DynkinData& d, const SimpleTable& table);
std::vector<std::pair<YMonomial, Mult>> decompose_product(const std::vector<DecoratedQChar>& factors,
                                                           const DynkinData& d, Route route = Route::Fpoly);

// dim via evaluation of the cluster variable at fundamental and KR dimensions
mpz_class c1_root_dimension(const RootVector& beta, const DynkinData& d);
mpz_class frozen_dimension(int i, const DynkinData& d);
mpz_class c1_dimension(const YMonomial& m, const DynkinData& d);

// FM(m) equals chi_q(L(m)) when its truncation matches the truncated character
bool fm_certified(const YMonomial& m, const DynkinData& d, Route route = Route::Fpoly);

}  // namespace clq
