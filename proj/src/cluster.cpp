#include "clq/cluster.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>

namespace clq {

bool ExchangeMatrix::principal_skew_symmetric() const {
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < cols; ++j)
            if (b[i][j] != -b[j][i]) return false;
    return true;
}

ExchangeMatrix mutate_matrix(const ExchangeMatrix& B, int k) {
    if (k < 0 || k >= B.cols)
        throw Error(Err::FrozenDirection, "direction " + std::to_string(k + 1) + " is not mutable");
    ExchangeMatrix R = B;
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < B.cols; ++j) {
            if (i == k || j == k) {
                R.b[i][j] = -B.b[i][j];
            } else {
                int bik = B.b[i][k], bkj = B.b[k][j];
                R.b[i][j] = B.b[i][j] + (std::abs(bik) * bkj + bik * std::abs(bkj)) / 2;
            }
        }
    return R;
}

Seed make_seed(const ExchangeMatrix& B, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != B.rows) throw Error(Err::InvalidArgument, "name count mismatch");
    Seed s;
    s.B = B;
    for (auto& nm : names) {
        VarId v = var(nm);
        s.initial.push_back(v);
        s.vars.push_back(LaurentPoly::variable(v));
    }
    return s;
}

Seed mutate_seed(const Seed& s, int k, Exchange* ex) {
    ExchangeMatrix nb = mutate_matrix(s.B, k);
    LaurentPoly plus(1), minus(1);
    std::vector<std::pair<int, int>> pl, mi;
    for (int i = 0; i < s.B.rows; ++i) {
        int b = s.B.b[i][k];
        if (b > 0) {
            plus *= s.vars[i].pow(b);
            pl.push_back({i, b});
        } else if (b < 0) {
            minus *= s.vars[i].pow(-b);
            mi.push_back({i, -b});
        }
    }
    Seed r = s;
    r.B = nb;
    r.vars[k] = divide_exact(plus + minus, s.vars[k]);
    if (ex) {
        ex->k = k;
        ex->old_var = s.vars[k];
        ex->new_var = r.vars[k];
        ex->plus = pl;
        ex->minus = mi;
    }
    return r;
}

nlohmann::json Seed::to_json() const {
    nlohmann::json vs = nlohmann::json::array();
    for (auto& v : vars) vs.push_back(v.to_json());
    std::vector<std::string> names;
    for (VarId v : initial) names.push_back(var_name(v));
    return {{"matrix", B.b}, {"frozen", B.frozen()}, {"vars", vs}, {"initial", names}};
}

Seed Seed::from_json(const nlohmann::json& j) {
    Seed s;
    s.B.b = j.at("matrix").get<std::vector<std::vector<int>>>();
    s.B.rows = static_cast<int>(s.B.b.size());
    int fr = j.at("frozen").get<int>();
    s.B.cols = s.B.rows - fr;
    for (auto& row : s.B.b)
        if (static_cast<int>(row.size()) != s.B.cols) throw Error(Err::ParseError, "matrix shape");
    for (auto& v : j.at("vars")) s.vars.push_back(LaurentPoly::from_json(v));
    if (j.contains("initial"))
        for (auto& nm : j["initial"]) s.initial.push_back(var(nm.get<std::string>()));
    if (static_cast<int>(s.vars.size()) != s.B.rows) throw Error(Err::ParseError, "variable count");
    return s;
}

Seed build_c1_seed(const DynkinData& d) {
    int n = d.n;
    ExchangeMatrix B;
    B.rows = 2 * n;
    B.cols = n;
    B.b.assign(2 * n, std::vector<int>(n, 0));
    auto arrow = [&](int from, int to) {  // 0-based over 2n vertices
        if (from < n) B.b[to][from] += 1;
        if (to < n) B.b[from][to] -= 1;
    };
    for (int i = 0; i < n; ++i) {
        for (int j : d.neighbors(i))
            if (d.in_i0(i)) arrow(i, j);  // I0 vertices are sources
        if (d.in_i0(i))
            arrow(i + n, i);  // i <- i'
        else
            arrow(i, i + n);  // i -> i'
    }
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("f" + std::to_string(i));
    return make_seed(B, names);
}

ExchangeMatrix c1_z_matrix(const DynkinData& d) {
    ExchangeMatrix B = build_c1_seed(d).B;
    for (int k = 0; k < d.n; ++k)
        if (!d.in_i0(k)) B = mutate_matrix(B, k);
    return B;
}

ExchangeMatrix bz_table(const DynkinData& d) {
    int n = d.n;
    ExchangeMatrix B;
    B.rows = 2 * n;
    B.cols = n;
    B.b.assign(2 * n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) B.b[i][j] = d.eps(j) * d.cartan[i][j];
    for (int j = 0; j < n; ++j) {
        B.b[j + n][j] = -1;
        if (d.in_i0(j))
            for (int k = 0; k < n; ++k)
                if (k != j) B.b[k + n][j] = -d.cartan[k][j];
    }
    return B;
}

// ---------------------------------------------------------------- atlas

int Atlas::var_index(const LaurentPoly& p) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == p) return static_cast<int>(i);
    return -1;
}

std::optional<int> Atlas::find_cluster(std::vector<int> vs) const {
    std::sort(vs.begin(), vs.end());
    for (std::size_t c = 0; c < clusters.size(); ++c)
        if (clusters[c] == vs) return static_cast<int>(c);
    return std::nullopt;
}

nlohmann::json Atlas::to_json() const {
    nlohmann::json vs = nlohmann::json::array();
    for (std::size_t i = 0; i < variables.size(); ++i) {
        nlohmann::json e = {{"index", i}, {"poly", variables[i].str()}};
        if (i < labels.size()) e["label"] = labels[i];
        vs.push_back(e);
    }
    nlohmann::json fr = nlohmann::json::array();
    for (auto& f : frozen) fr.push_back(f.str());
    return {{"rank", rank},
            {"clusters", clusters},
            {"cluster_count", clusters.size()},
            {"variable_count", variables.size()},
            {"frozen_count", frozen.size()},
            {"variables", vs},
            {"frozen", fr}};
}

Atlas enumerate_atlas(const Seed& s0, const Limits& lim) {
    Atlas A;
    A.rank = s0.B.cols;
    A.total = s0.B.rows;
    A.initial = s0.initial;
    for (int i = A.rank; i < A.total; ++i) A.frozen.push_back(s0.vars[i]);

    std::map<LaurentPoly, int> var_ids;
    auto intern = [&](const LaurentPoly& p) {
        auto it = var_ids.find(p);
        if (it != var_ids.end()) return it->second;
        if (p.size() > lim.max_terms)
            throw Error(Err::LimitExceeded, "cluster variable with " + std::to_string(p.size()) + " terms");
        int id = static_cast<int>(A.variables.size());
        A.variables.push_back(p);
        var_ids.emplace(p, id);
        return id;
    };
    std::map<std::vector<int>, int> cluster_ids;
    // known[c][k] = target cluster when already discovered from the other side
    std::vector<std::vector<int>> known;

    auto add_seed = [&](const Seed& s) {
        std::vector<int> pv;
        for (int k = 0; k < A.rank; ++k) pv.push_back(intern(s.vars[k]));
        std::vector<int> key = pv;
        std::sort(key.begin(), key.end());
        auto it = cluster_ids.find(key);
        if (it != cluster_ids.end()) return std::make_pair(it->second, false);
        if (A.clusters.size() >= lim.max_seeds)
            throw Error(Err::LimitExceeded, "more than " + std::to_string(lim.max_seeds) + " seeds");
        int id = static_cast<int>(A.clusters.size());
        cluster_ids.emplace(key, id);
        A.clusters.push_back(key);
        A.seeds.push_back(s);
        A.seed_vars.push_back(pv);
        known.push_back(std::vector<int>(A.rank, -1));
        return std::make_pair(id, true);
    };

    std::deque<int> queue;
    queue.push_back(add_seed(s0).first);
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        for (int k = 0; k < A.rank; ++k) {
            if (known[c][k] >= 0) continue;
            Seed nxt = mutate_seed(A.seeds[c], k);
            auto [to, fresh] = add_seed(nxt);
            int out_v = A.seed_vars[c][k];
            int in_v = var_ids.at(nxt.vars[k]);
            A.edges.push_back({c, to, k, out_v, in_v});
            known[c][k] = to;
            // the reverse edge: position of in_v in the target seed
            for (int kk = 0; kk < A.rank; ++kk)
                if (A.seed_vars[to][kk] == in_v && known[to][kk] < 0) {
                    known[to][kk] = c;
                    A.edges.push_back({to, c, kk, in_v, out_v});
                }
            if (fresh) queue.push_back(to);
        }
    }
    return A;
}

RootVector denominator_vector(const LaurentPoly& p, const std::vector<VarId>& nonfrozen_initial) {
    RootVector d;
    for (VarId v : nonfrozen_initial) d.push_back(-p.min_exponent(v));
    return d;
}

std::map<RootVector, int> label_by_denominator(Atlas& atlas, const DynkinData& d) {
    std::vector<VarId> init(atlas.initial.begin(), atlas.initial.begin() + atlas.rank);
    atlas.labels.clear();
    atlas.by_label.clear();
    for (auto& v : atlas.variables) {
        RootVector r = denominator_vector(v, init);
        atlas.labels.push_back(r);
        if (atlas.by_label.count(r)) throw Error(Err::LabelingFailure, "repeated denominator " + root_str(r));
        atlas.by_label[r] = static_cast<int>(atlas.labels.size()) - 1;
    }
    auto phi = almost_positive_roots(d);
    if (phi.size() != atlas.variables.size())
        throw Error(Err::LabelingFailure, std::to_string(atlas.variables.size()) + " variables for " +
                                              std::to_string(phi.size()) + " almost positive roots");
    for (auto& a : phi)
        if (!atlas.by_label.count(a)) throw Error(Err::LabelingFailure, "no variable with denominator " + root_str(a));
    return atlas.by_label;
}

bool compatible(const RootVector& a, const RootVector& b, const Atlas& atlas) {
    auto ia = atlas.by_label.find(a), ib = atlas.by_label.find(b);
    if (ia == atlas.by_label.end() || ib == atlas.by_label.end())
        throw Error(Err::NotAlmostPositive, root_str(a) + " / " + root_str(b));
    for (auto& c : atlas.clusters) {
        bool ha = std::binary_search(c.begin(), c.end(), ia->second);
        bool hb = std::binary_search(c.begin(), c.end(), ib->second);
        if (ha && hb) return true;
    }
    return false;
}

namespace {
using QMat = std::vector<std::vector<mpq_class>>;

// inverse of the matrix whose columns are the given root vectors; empty if singular
QMat invert_columns(const std::vector<RootVector>& cols) {
    int n = static_cast<int>(cols.size());
    QMat a(n, std::vector<mpq_class>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = cols[j][i];
        a[i][n + i] = 1;
    }
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) {
                p = r;
                break;
            }
        if (p < 0) return {};
        std::swap(a[p], a[c]);
        mpq_class piv = a[c][c];
        for (auto& x : a[c]) x /= piv;
        for (int r = 0; r < n; ++r)
            if (r != c && a[r][c] != 0) {
                mpq_class f = a[r][c];
                for (int k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
            }
    }
    QMat inv(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}
}  // namespace

std::map<RootVector, int> cluster_expansion(const RootVector& g, const Atlas& atlas) {
    if (atlas.labels.empty()) throw Error(Err::InvalidArgument, "atlas is not labelled");
    std::set<std::map<RootVector, int>> found;
    int n = static_cast<int>(g.size());
    for (std::size_t c = 0; c < atlas.clusters.size(); ++c) {
        auto& cl = atlas.clusters[c];
        auto it = atlas.inverse_cache.find(static_cast<int>(c));
        if (it == atlas.inverse_cache.end()) {
            std::vector<RootVector> cols;
            for (int v : cl) cols.push_back(atlas.labels[v]);
            it = atlas.inverse_cache.emplace(static_cast<int>(c), invert_columns(cols)).first;
        }
        const QMat& inv = it->second;
        if (inv.empty()) continue;
        std::map<RootVector, int> exp;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            mpq_class s = 0;
            for (int j = 0; j < n; ++j) s += inv[i][j] * g[j];
            s.canonicalize();
            if (s < 0 || s.get_den() != 1) ok = false;
            else if (s > 0) exp[atlas.labels[cl[i]]] = static_cast<int>(s.get_num().get_si());
        }
        if (ok) found.insert(exp);
    }
    if (found.empty()) throw Error(Err::NoExpansion, root_str(g));
    if (found.size() > 1) throw Error(Err::MultipleExpansions, root_str(g));
    return *found.begin();
}

const Atlas& c1_atlas(const DynkinData& d) {
    static std::mutex mu;
    static std::map<std::pair<std::string, std::vector<int>>, std::unique_ptr<Atlas>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(d.name(), d.xi);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto a = std::make_unique<Atlas>(enumerate_atlas(build_c1_seed(d)));
    label_by_denominator(*a, d);
    return *cache.emplace(key, std::move(a)).first->second;
}

const LaurentPoly& x_of(const Atlas& atlas, const RootVector& a) {
    auto it = atlas.by_label.find(a);
    if (it == atlas.by_label.end()) throw Error(Err::NotAlmostPositive, root_str(a));
    return atlas.variables[it->second];
}

}  // namespace clq
