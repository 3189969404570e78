#pragma once

#include <vector>

#include "clq/cluster.hpp"

namespace clq {

// Polynomial in the placeholders v1..vn
using FPoly = LaurentPoly;
// Laurent monomial in the frozen variables f_i
using TropicalElem = Monomial;

VarId v_var(int i);  // 0-based -> "v{i+1}"

FPoly f_poly_principal(const RootVector& alpha, const DynkinData& d, const Limits& lim = {});
FPoly f_poly_combinatorial(const RootVector& alpha, const DynkinData& d);
// conditions (i)-(iii) for a candidate exponent vector
bool acceptable(const RootVector& c, const RootVector& alpha, const DynkinData& d);
int e_count(const RootVector& c, const RootVector& alpha, const DynkinData& d);
bool two_restricted(const RootVector& alpha);

TropicalElem tropical_eval(const FPoly& F, const std::vector<TropicalElem>& images);

// y_j and yhat_j of the z-seed (names z_i, f_i)
std::vector<Monomial> y_elements(const DynkinData& d);
std::vector<Monomial> yhat_elements(const DynkinData& d);

LaurentPoly reconstruct_cluster_variable(const RootVector& alpha, const DynkinData& d);

// atlas of the z-seed labelled by denominators with respect to z
const Atlas& z_atlas(const DynkinData& d);
// atlas with principal coefficients u_i, v_i at the z-seed matrix
const Atlas& principal_atlas(const DynkinData& d, const Limits& lim = {});

}  // namespace clq
