#include "clq/fpoly.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace clq {

VarId v_var(int i) { return var("v" + std::to_string(i + 1)); }

namespace {

using AtlasKey = std::pair<std::string, std::vector<int>>;

const Atlas& cached(std::map<AtlasKey, std::unique_ptr<Atlas>>& cache, std::mutex& mu, const DynkinData& d,
                    const std::function<Atlas()>& build) {
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(d.name(), d.xi);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto a = std::make_unique<Atlas>(build());
    return *cache.emplace(key, std::move(a)).first->second;
}

std::vector<int> support(const RootVector& a) {
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        if (a[i] != 0) s.push_back(i);
    return s;
}

// the unique path between two vertices of a tree
std::vector<int> tree_path(const DynkinData& d, int from, int to) {
    std::vector<int> parent(d.n, -2);
    std::vector<int> stack{from};
    parent[from] = -1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : d.neighbors(u))
            if (parent[w] == -2) {
                parent[w] = u;
                stack.push_back(w);
            }
    }
    std::vector<int> path;
    for (int v = to; v != -1; v = parent[v]) {
        if (v == -2) return {};
        path.push_back(v);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool marked(int i, const RootVector& c, const RootVector& a, const DynkinData& d) {
    return d.in_i0(i) ? c[i] == a[i] - 1 : c[i] == 1;
}

}  // namespace

bool two_restricted(const RootVector& alpha) {
    return height(alpha) > 0 &&
           std::all_of(alpha.begin(), alpha.end(), [](int x) { return x >= 0 && x <= 2; });
}

bool acceptable(const RootVector& c, const RootVector& a, const DynkinData& d) {
    int n = d.n;
    for (int i = 0; i < n; ++i)
        if (c[i] < 0 || c[i] > a[i]) return false;
    for (int i = 0; i < n; ++i) {
        if (d.in_i0(i)) continue;
        for (int j : d.neighbors(i))
            if (d.in_i0(j) && c[i] > 2 - a[j] + c[j]) return false;
    }
    auto supp = support(a);
    for (int s : supp)
        for (int t : supp) {
            if (s == t || a[s] != 1 || a[t] != 1) continue;
            auto path = tree_path(d, s, t);
            if (path.empty()) continue;
            bool bad = std::all_of(path.begin(), path.end(),
                                   [&](int v) { return a[v] != 0 && marked(v, c, a, d); });
            if (bad) return false;
        }
    return true;
}

int e_count(const RootVector& c, const RootVector& a, const DynkinData& d) {
    int n = d.n;
    std::vector<int> comp(n, -1);
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0 || !marked(s, c, a, d)) continue;
        bool inside = true;
        std::vector<int> stack{s};
        comp[s] = s;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            if (a[u] != 2) inside = false;
            for (int w : d.neighbors(u))
                if (comp[w] < 0 && marked(w, c, a, d)) {
                    comp[w] = s;
                    stack.push_back(w);
                }
        }
        if (inside) ++count;
    }
    return count;
}

namespace {
template <class Pred>
FPoly sum_over_box(const RootVector& a, Pred accept, const std::function<mpz_class(const RootVector&)>& weight) {
    int n = static_cast<int>(a.size());
    FPoly F;
    RootVector c(n, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            if (!accept(c)) return;
            std::vector<Monomial::Entry> es;
            for (int k = 0; k < n; ++k)
                if (c[k]) es.push_back({v_var(k), c[k]});
            F.add_term(Monomial::from_entries(es), weight(c));
            return;
        }
        for (int x = 0; x <= a[i]; ++x) {
            c[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
    return F;
}

// multiplicity-free shortcut: (i) and (iv)
FPoly multiplicity_free(const RootVector& a, const DynkinData& d) {
    return sum_over_box(
        a,
        [&](const RootVector& c) {
            for (int i = 0; i < d.n; ++i) {
                if (d.in_i0(i) || a[i] == 0) continue;
                for (int j : d.neighbors(i))
                    if (a[j] != 0 && c[i] > c[j]) return false;
            }
            return true;
        },
        [](const RootVector&) { return mpz_class(1); });
}
}  // namespace

FPoly f_poly_combinatorial(const RootVector& a, const DynkinData& d) {
    if (static_cast<int>(a.size()) != d.n) throw Error(Err::InvalidArgument, "root length");
    if (!two_restricted(a)) throw Error(Err::NotTwoRestricted, root_str(a));
    FPoly F = sum_over_box(
        a, [&](const RootVector& c) { return acceptable(c, a, d); },
        [&](const RootVector& c) {
            mpz_class w = 1;
            w <<= e_count(c, a, d);
            return w;
        });
    if (std::all_of(a.begin(), a.end(), [](int x) { return x <= 1; })) {
        FPoly G = multiplicity_free(a, d);
        if (!(G == F))
            throw Error(Err::MismatchReport, "multiplicity-free shortcut disagrees for " + root_str(a) + ": " +
                                                 F.str() + " vs " + G.str());
    }
    return F;
}

const Atlas& principal_atlas(const DynkinData& d, const Limits& lim) {
    static std::mutex mu;
    static std::map<AtlasKey, std::unique_ptr<Atlas>> cache;
    return cached(cache, mu, d, [&] {
        ExchangeMatrix Bz = bz_table(d);
        int n = d.n;
        ExchangeMatrix B;
        B.rows = 2 * n;
        B.cols = n;
        B.b.assign(2 * n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) B.b[i][j] = Bz.b[i][j];
        for (int i = 0; i < n; ++i) B.b[n + i][i] = 1;
        std::vector<std::string> names;
        for (int i = 1; i <= n; ++i) names.push_back("u" + std::to_string(i));
        for (int i = 1; i <= n; ++i) names.push_back("v" + std::to_string(i));
        Atlas A = enumerate_atlas(make_seed(B, names), lim);
        label_by_denominator(A, d);
        return A;
    });
}

const Atlas& z_atlas(const DynkinData& d) {
    static std::mutex mu;
    static std::map<AtlasKey, std::unique_ptr<Atlas>> cache;
    return cached(cache, mu, d, [&] {
        std::vector<std::string> names;
        for (int i = 1; i <= d.n; ++i) names.push_back("z" + std::to_string(i));
        for (int i = 1; i <= d.n; ++i) names.push_back("f" + std::to_string(i));
        Atlas A = enumerate_atlas(make_seed(c1_z_matrix(d), names));
        label_by_denominator(A, d);
        return A;
    });
}

FPoly f_poly_principal(const RootVector& a, const DynkinData& d, const Limits& lim) {
    if (!is_almost_positive(a, d)) throw Error(Err::NotAlmostPositive, root_str(a));
    const Atlas& A = principal_atlas(d, lim);
    LaurentPoly u = x_of(A, a);
    std::map<VarId, LaurentPoly> one;
    for (int i = 0; i < d.n; ++i) one[A.initial[i]] = LaurentPoly(1);
    // N_alpha = u[alpha] * u^a; then u_i -> 1, which kills the denominator anyway
    return substitute(u, one);
}

TropicalElem tropical_eval(const FPoly& F, const std::vector<TropicalElem>& images) {
    if (F.is_zero()) throw Error(Err::InvalidArgument, "tropical value of 0");
    std::map<VarId, TropicalElem> img;
    for (int i = 0; i < static_cast<int>(images.size()); ++i) img[v_var(i)] = images[i];
    bool first = true;
    std::map<VarId, int> best;
    for (auto& [m, c] : F.terms()) {
        if (c < 0) throw Error(Err::InvalidArgument, "tropical evaluation needs a subtraction-free polynomial");
        Monomial t;
        for (auto& [v, e] : m.entries()) {
            auto it = img.find(v);
            if (it == img.end()) throw Error(Err::InvalidArgument, "no image for " + var_name(v));
            t = t * it->second.pow(e);
        }
        std::map<VarId, int> cur;
        for (auto& [v, e] : t.entries()) cur[v] = e;
        if (first) {
            best = cur;
            first = false;
            continue;
        }
        // componentwise min, absent exponents count as 0
        std::map<VarId, int> nb;
        for (auto& [v, e] : best) nb[v] = std::min(e, cur.count(v) ? cur[v] : 0);
        for (auto& [v, e] : cur)
            if (!best.count(v)) nb[v] = std::min(e, 0);
        best = nb;
    }
    std::vector<Monomial::Entry> es(best.begin(), best.end());
    return Monomial::from_entries(es);
}

std::vector<Monomial> y_elements(const DynkinData& d) {
    ExchangeMatrix Bz = bz_table(d);
    std::vector<Monomial> ys;
    for (int j = 0; j < d.n; ++j) {
        std::vector<Monomial::Entry> es;
        for (int i = 0; i < d.n; ++i) es.push_back({var("f" + std::to_string(i + 1)), Bz.b[i + d.n][j]});
        ys.push_back(Monomial::from_entries(es));
    }
    return ys;
}

std::vector<Monomial> yhat_elements(const DynkinData& d) {
    ExchangeMatrix Bz = bz_table(d);
    auto ys = y_elements(d);
    for (int j = 0; j < d.n; ++j) {
        std::vector<Monomial::Entry> es;
        for (int i = 0; i < d.n; ++i) es.push_back({var("z" + std::to_string(i + 1)), Bz.b[i][j]});
        ys[j] = ys[j] * Monomial::from_entries(es);
    }
    return ys;
}

LaurentPoly reconstruct_cluster_variable(const RootVector& a, const DynkinData& d) {
    FPoly F = f_poly_principal(a, d);
    auto ys = y_elements(d);
    auto yh = yhat_elements(d);
    std::map<VarId, LaurentPoly> img;
    for (int j = 0; j < d.n; ++j) img[v_var(j)] = LaurentPoly(yh[j]);
    LaurentPoly num = substitute(F, img);
    Monomial trop = tropical_eval(F, ys);
    RootVector g = E_map(tau_minus(a, d), d);
    std::vector<Monomial::Entry> zg;
    for (int i = 0; i < d.n; ++i) zg.push_back({var("z" + std::to_string(i + 1)), g[i]});
    return num * LaurentPoly(Monomial::from_entries(zg) * trop.inverse());
}

}  // namespace clq
