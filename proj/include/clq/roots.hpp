#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "clq/errors.hpp"

namespace clq {

using RootVector = std::vector<int>;

struct DynkinData {
    char type = 'A';
    int n = 0;
    std::vector<std::vector<int>> cartan;  // 0-based
    std::vector<int> xi;                   // 0 for I0, 1 for I1
    int h = 0;

    int eps(int i) const { return xi[i] == 0 ? 1 : -1; }
    bool in_i0(int i) const { return xi[i] == 0; }
    bool adjacent(int i, int j) const { return i != j && cartan[i][j] == -1; }
    std::vector<int> neighbors(int i) const;
    std::string name() const { return std::string(1, type) + std::to_string(n); }
    // vertices are printed 1-based
    std::vector<int> i0() const;
    std::vector<int> i1() const;
    int trivalent() const;  // -1 if none
    void validate() const;

    nlohmann::json to_json() const;
};

// "A3", "D4", "E6"; default bipartition puts the branch node (or vertex 1) in I0.
DynkinData make_dynkin(const std::string& name);
DynkinData make_dynkin(char type, int n);
// i0 lists 1-based vertices forming I0
DynkinData with_i0(DynkinData d, const std::vector<int>& i0);
DynkinData dynkin_from_json(const nlohmann::json& j);

// Sub-diagram on the given 0-based vertices (kept in order); type tag is copied.
DynkinData subdiagram(const DynkinData& d, const std::vector<int>& verts);

int height(const RootVector& r);
RootVector simple_root(int n, int i, int sign = 1);
RootVector add(const RootVector& a, const RootVector& b);
RootVector scale(const RootVector& a, int k);
std::string root_str(const RootVector& r);  // e.g. "a1+2a2+a3", "-a2"
RootVector parse_root(const std::string& s, int n);  // "1,2,1,1"

std::vector<RootVector> positive_roots(const DynkinData& d);
std::vector<RootVector> almost_positive_roots(const DynkinData& d);
bool is_almost_positive(const RootVector& r, const DynkinData& d);

RootVector sigma(int i, const RootVector& g, const DynkinData& d);
RootVector tau_eps(int eps, const RootVector& g, const DynkinData& d);
RootVector tau_plus(const RootVector& g, const DynkinData& d);
RootVector tau_minus(const RootVector& g, const DynkinData& d);
RootVector tau(const RootVector& g, const DynkinData& d);  // tau_plus o tau_minus
RootVector E_map(const RootVector& g, const DynkinData& d);
RootVector piecewise_linear(const std::string& map, const RootVector& g, const DynkinData& d, int vertex = -1);
RootVector g_vector(const RootVector& a, const DynkinData& d);

}  // namespace clq
