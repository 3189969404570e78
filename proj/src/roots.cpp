#include "clq/roots.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <set>
#include <sstream>

namespace clq {

std::vector<int> DynkinData::neighbors(int i) const {
    std::vector<int> r;
    for (int j = 0; j < n; ++j)
        if (adjacent(i, j)) r.push_back(j);
    return r;
}

std::vector<int> DynkinData::i0() const {
    std::vector<int> r;
    for (int i = 0; i < n; ++i)
        if (xi[i] == 0) r.push_back(i + 1);
    return r;
}

std::vector<int> DynkinData::i1() const {
    std::vector<int> r;
    for (int i = 0; i < n; ++i)
        if (xi[i] == 1) r.push_back(i + 1);
    return r;
}

int DynkinData::trivalent() const {
    for (int i = 0; i < n; ++i)
        if (neighbors(i).size() >= 3) return i;
    return -1;
}

void DynkinData::validate() const {
    if (static_cast<int>(cartan.size()) != n || static_cast<int>(xi.size()) != n)
        throw Error(Err::InvalidArgument, "inconsistent Dynkin data");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int a = cartan[i][j];
            if (a != cartan[j][i]) throw Error(Err::UnsupportedType, "Cartan matrix not symmetric");
            if (i == j && a != 2) throw Error(Err::UnsupportedType, "diagonal entry not 2");
            if (i != j && a != 0 && a != -1) throw Error(Err::UnsupportedType, "off-diagonal entry not in {0,-1}");
            if (i != j && a == -1 && xi[i] == xi[j])
                throw Error(Err::InvalidArgument, "edge inside one part of the bipartition");
        }
}

nlohmann::json DynkinData::to_json() const {
    return {{"type", name()}, {"rank", n}, {"I0", i0()}, {"I1", i1()}, {"coxeter", h}, {"cartan", cartan}};
}

namespace {
void connect(std::vector<std::vector<int>>& c, int i, int j) {
    c[i - 1][j - 1] = -1;
    c[j - 1][i - 1] = -1;
}

// 2-coloring from a root vertex
std::vector<int> color_from(const std::vector<std::vector<int>>& c, int root) {
    int n = static_cast<int>(c.size());
    std::vector<int> col(n, -1);
    std::queue<int> q;
    col[root] = 0;
    q.push(root);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v)
            if (v != u && c[u][v] == -1 && col[v] < 0) {
                col[v] = 1 - col[u];
                q.push(v);
            }
    }
    for (int& x : col)
        if (x < 0) x = 0;
    return col;
}
}  // namespace

DynkinData make_dynkin(char type, int n) {
    type = static_cast<char>(std::toupper(static_cast<unsigned char>(type)));
    DynkinData d;
    d.type = type;
    d.n = n;
    d.cartan.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) d.cartan[i][i] = 2;
    int root = 0;
    if (type == 'A') {
        if (n < 1) throw Error(Err::UnsupportedType, "A_n needs n>=1");
        for (int i = 1; i < n; ++i) connect(d.cartan, i, i + 1);
        d.h = n + 1;
    } else if (type == 'D') {
        if (n < 4) throw Error(Err::UnsupportedType, "D_n needs n>=4");
        for (int i = 1; i < n - 1; ++i) connect(d.cartan, i, i + 1);
        connect(d.cartan, n - 2, n);
        d.h = 2 * n - 2;
        root = n - 3;
    } else if (type == 'E') {
        if (n < 6 || n > 8) throw Error(Err::UnsupportedType, "E_n needs 6<=n<=8");
        connect(d.cartan, 1, 3);
        connect(d.cartan, 3, 4);
        connect(d.cartan, 4, 5);
        connect(d.cartan, 5, 6);
        connect(d.cartan, 2, 4);
        if (n >= 7) connect(d.cartan, 6, 7);
        if (n >= 8) connect(d.cartan, 7, 8);
        d.h = n == 6 ? 12 : (n == 7 ? 18 : 30);
        root = 3;
    } else {
        throw Error(Err::UnsupportedType, std::string("type ") + type);
    }
    d.xi = color_from(d.cartan, root);
    return d;
}

DynkinData make_dynkin(const std::string& name) {
    if (name.size() < 2) throw Error(Err::UnsupportedType, "bad type '" + name + "'");
    int n = 0;
    try {
        n = std::stoi(name.substr(1));
    } catch (...) {
        throw Error(Err::UnsupportedType, "bad type '" + name + "'");
    }
    return make_dynkin(name[0], n);
}

DynkinData with_i0(DynkinData d, const std::vector<int>& i0) {
    for (int i = 0; i < d.n; ++i) d.xi[i] = 1;
    for (int v : i0) {
        if (v < 1 || v > d.n) throw Error(Err::InvalidArgument, "I0 vertex out of range");
        d.xi[v - 1] = 0;
    }
    d.validate();
    return d;
}

DynkinData dynkin_from_json(const nlohmann::json& j) {
    DynkinData d = make_dynkin(j.at("type").get<std::string>());
    if (j.contains("I0")) d = with_i0(d, j["I0"].get<std::vector<int>>());
    return d;
}

DynkinData subdiagram(const DynkinData& d, const std::vector<int>& verts) {
    DynkinData s;
    s.type = d.type;
    s.n = static_cast<int>(verts.size());
    s.cartan.assign(s.n, std::vector<int>(s.n, 0));
    for (int a = 0; a < s.n; ++a)
        for (int b = 0; b < s.n; ++b) s.cartan[a][b] = d.cartan[verts[a]][verts[b]];
    for (int v : verts) s.xi.push_back(d.xi[v]);
    s.h = d.h;
    return s;
}

int height(const RootVector& r) {
    int s = 0;
    for (int x : r) s += x;
    return s;
}

RootVector simple_root(int n, int i, int sign) {
    RootVector r(n, 0);
    r[i] = sign;
    return r;
}

RootVector add(const RootVector& a, const RootVector& b) {
    RootVector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

RootVector scale(const RootVector& a, int k) {
    RootVector r = a;
    for (int& x : r) x *= k;
    return r;
}

std::string root_str(const RootVector& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
        int c = r[i];
        if (c == 0) continue;
        if (c < 0)
            s += "-";
        else if (!s.empty())
            s += "+";
        int a = c < 0 ? -c : c;
        if (a != 1) s += std::to_string(a);
        s += "a" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
}

RootVector parse_root(const std::string& s, int n) {
    RootVector r;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            r.push_back(std::stoi(tok));
        } catch (...) {
            throw Error(Err::ParseError, "bad root coordinate '" + tok + "'");
        }
    }
    if (static_cast<int>(r.size()) != n)
        throw Error(Err::ParseError, "root '" + s + "' needs " + std::to_string(n) + " coordinates");
    return r;
}

std::vector<RootVector> positive_roots(const DynkinData& d) {
    int n = d.n;
    std::set<RootVector> seen;
    std::queue<RootVector> q;
    for (int i = 0; i < n; ++i) {
        auto a = simple_root(n, i);
        seen.insert(a);
        q.push(a);
    }
    while (!q.empty()) {
        RootVector b = q.front();
        q.pop();
        for (int j = 0; j < n; ++j) {
            int pairing = 0;
            for (int i = 0; i < n; ++i) pairing += b[i] * d.cartan[i][j];
            RootVector c = b;
            c[j] -= pairing;
            bool pos = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
            if (pos && height(c) > 0 && !seen.count(c)) {
                seen.insert(c);
                q.push(c);
            }
        }
    }
    std::vector<RootVector> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const RootVector& a, const RootVector& b) {
        int ha = height(a), hb = height(b);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    return out;
}

std::vector<RootVector> almost_positive_roots(const DynkinData& d) {
    if (d.type != 'A' && d.type != 'D' && d.type != 'E') throw Error(Err::UnsupportedType, d.name());
    if (d.n > 8) throw Error(Err::UnsupportedType, "rank above 8");
    std::vector<RootVector> out;
    for (int i = 0; i < d.n; ++i) out.push_back(simple_root(d.n, i, -1));
    auto pos = positive_roots(d);
    out.insert(out.end(), pos.begin(), pos.end());
    return out;
}

bool is_almost_positive(const RootVector& r, const DynkinData& d) {
    for (int i = 0; i < d.n; ++i)
        if (r == simple_root(d.n, i, -1)) return true;
    auto pos = positive_roots(d);
    return std::find(pos.begin(), pos.end(), r) != pos.end();
}

RootVector sigma(int i, const RootVector& g, const DynkinData& d) {
    RootVector r = g;
    int v = -g[i];
    for (int j = 0; j < d.n; ++j)
        if (j != i) v -= d.cartan[i][j] * std::max(0, g[j]);
    r[i] = v;
    return r;
}

RootVector tau_eps(int eps, const RootVector& g, const DynkinData& d) {
    // vertices with the same sign are pairwise non-adjacent, so the sigmas commute
    RootVector r = g;
    for (int i = 0; i < d.n; ++i)
        if (d.eps(i) == eps) r = sigma(i, r, d);
    return r;
}

RootVector tau_plus(const RootVector& g, const DynkinData& d) { return tau_eps(1, g, d); }
RootVector tau_minus(const RootVector& g, const DynkinData& d) { return tau_eps(-1, g, d); }
RootVector tau(const RootVector& g, const DynkinData& d) { return tau_plus(tau_minus(g, d), d); }

RootVector E_map(const RootVector& g, const DynkinData& d) {
    RootVector r = g;
    for (int i = 0; i < d.n; ++i) r[i] = -d.eps(i) * g[i];
    return r;
}

RootVector piecewise_linear(const std::string& map, const RootVector& g, const DynkinData& d, int vertex) {
    if (map == "sigma_i" || map == "sigma") {
        if (vertex < 0 || vertex >= d.n) throw Error(Err::InvalidArgument, "sigma needs a vertex");
        return sigma(vertex, g, d);
    }
    if (map == "tau_plus") return tau_plus(g, d);
    if (map == "tau_minus") return tau_minus(g, d);
    if (map == "tau") return tau(g, d);
    if (map == "E") return E_map(g, d);
    throw Error(Err::InvalidArgument, "unknown map " + map);
}

RootVector g_vector(const RootVector& a, const DynkinData& d) {
    if (!is_almost_positive(a, d)) throw Error(Err::NotAlmostPositive, root_str(a));
    return E_map(tau_minus(a, d), d);
}

}  // namespace clq
