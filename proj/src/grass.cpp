#include "clq/grass.hpp"

#include <algorithm>

#include "clq/c1chars.hpp"

namespace clq {

namespace {

const int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

int md(long x, int p) {
    x %= p;
    return static_cast<int>(x < 0 ? x + p : x);
}

Matrix zeros(int r, int c) { return Matrix(r, std::vector<int>(c, 0)); }

// rank of a matrix over F_p; destroys its argument
int rank_mod(Matrix m, int p) {
    int rows = static_cast<int>(m.size());
    if (!rows) return 0;
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[r]);
        long inv = 1;
        for (long e = p - 2, b = m[r][c]; e; e >>= 1, b = b * b % p)
            if (e & 1) inv = inv * b % p;
        for (int& x : m[r]) x = static_cast<int>(x * inv % p);
        for (int i = 0; i < rows; ++i)
            if (i != r && m[i][c]) {
                long f = m[i][c];
                for (int k = 0; k < cols; ++k) m[i][k] = md(m[i][k] - f * m[r][k], p);
            }
        ++r;
    }
    return r;
}

// subspace of F_p^n in reduced row echelon form
struct Subspace {
    Matrix rows;
    std::vector<int> pivots;
};

std::vector<Subspace> all_subspaces(int n, int k, int p) {
    std::vector<Subspace> out;
    std::vector<int> piv;
    std::function<void(int)> choose = [&](int start) {
        if (static_cast<int>(piv.size()) == k) {
            // free positions: row r, column c > piv[r], c not a pivot
            std::vector<std::pair<int, int>> free;
            for (int r = 0; r < k; ++r)
                for (int c = piv[r] + 1; c < n; ++c)
                    if (!std::count(piv.begin(), piv.end(), c)) free.push_back({r, c});
            std::vector<int> val(free.size(), 0);
            for (;;) {
                Subspace s;
                s.pivots = piv;
                s.rows = zeros(k, n);
                for (int r = 0; r < k; ++r) s.rows[r][piv[r]] = 1;
                for (std::size_t f = 0; f < free.size(); ++f) s.rows[free[f].first][free[f].second] = val[f];
                out.push_back(std::move(s));
                std::size_t f = 0;
                while (f < val.size() && ++val[f] == p) val[f++] = 0;
                if (f == val.size()) break;
            }
            return;
        }
        for (int c = start; c < n; ++c) {
            piv.push_back(c);
            choose(c + 1);
            piv.pop_back();
        }
    };
    choose(0);
    return out;
}

bool contains(const Subspace& s, std::vector<int> v, int p) {
    for (std::size_t r = 0; r < s.rows.size(); ++r) {
        long f = v[s.pivots[r]];
        if (!f) continue;
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = md(v[c] - f * s.rows[r][c], p);
    }
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

std::vector<std::pair<int, int>> quiver_arrows(const DynkinData& d) {
    std::vector<std::pair<int, int>> a;
    for (int i = 0; i < d.n; ++i)
        for (int j = i + 1; j < d.n; ++j)
            if (d.adjacent(i, j)) a.push_back(d.in_i0(i) ? std::pair{j, i} : std::pair{i, j});
    return a;
}

bool box_next(RootVector& g, const std::vector<int>& top) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] < top[i]) {
            ++g[i];
            return true;
        }
        g[i] = 0;
    }
    return false;
}

}  // namespace

void QuiverRep::validate() const {
    for (auto& a : arrows) {
        if (static_cast<int>(a.map.size()) != dims[a.dst]) throw Error(Err::InvalidArgument, "arrow map rows");
        for (auto& row : a.map)
            if (static_cast<int>(row.size()) != dims[a.src]) throw Error(Err::InvalidArgument, "arrow map cols");
    }
}

nlohmann::json QuiverRep::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& a : arrows) arr.push_back({{"from", a.src + 1}, {"to", a.dst + 1}, {"map", a.map}});
    return {{"p", p}, {"dims", dims}, {"arrows", arr}};
}

nlohmann::json GrassCount::to_json() const {
    nlohmann::json c = nlohmann::json::object();
    for (auto& [p, n] : counts) c[std::to_string(p)] = n.get_str();
    std::vector<std::string> co;
    for (auto& x : poly) co.push_back(x.get_str());
    return {{"gamma", gamma}, {"counts", c}, {"poly", co}, {"euler", euler.get_str()}};
}

QuiverRep empty_rep(const DynkinData& d, int p) {
    QuiverRep M;
    M.p = p;
    M.dims.assign(d.n, 0);
    for (auto [s, t] : quiver_arrows(d)) M.arrows.push_back({s, t, {}});
    return M;
}

QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b) {
    if (a.p != b.p || a.dims.size() != b.dims.size() || a.arrows.size() != b.arrows.size())
        throw Error(Err::InvalidArgument, "direct sum of incompatible representations");
    QuiverRep M = a;
    for (std::size_t i = 0; i < a.dims.size(); ++i) M.dims[i] += b.dims[i];
    for (std::size_t k = 0; k < a.arrows.size(); ++k) {
        auto& x = a.arrows[k];
        auto& y = b.arrows[k];
        int s = x.src, t = x.dst;
        Matrix m = zeros(M.dims[t], M.dims[s]);
        for (int r = 0; r < a.dims[t]; ++r)
            for (int c = 0; c < a.dims[s]; ++c) m[r][c] = x.map[r][c];
        for (int r = 0; r < b.dims[t]; ++r)
            for (int c = 0; c < b.dims[s]; ++c) m[a.dims[t] + r][a.dims[s] + c] = y.map[r][c];
        M.arrows[k].map = std::move(m);
    }
    return M;
}

QuiverRep indecomposable_rep(const RootVector& alpha, const DynkinData& d, int p) {
    auto pos = positive_roots(d);
    if (std::find(pos.begin(), pos.end(), alpha) == pos.end())
        throw Error(Err::UnsupportedRoot, root_str(alpha) + " is not a positive root of " + d.name());
    bool thin = std::all_of(alpha.begin(), alpha.end(), [](int x) { return x <= 1; });
    if (d.type != 'A' && !(d.type == 'D' && d.n == 4))
        throw Error(Err::UnsupportedRoot, "no indecomposable construction for " + d.name());
    QuiverRep M = empty_rep(d, p);
    M.dims = alpha;
    if (thin) {
        for (auto& a : M.arrows) {
            a.map = zeros(alpha[a.dst], alpha[a.src]);
            if (alpha[a.dst] && alpha[a.src]) a.map[0][0] = 1;
        }
    } else {
        // D4 highest root: three distinct lines in the plane at the branch node
        int c = d.trivalent();
        const std::vector<int> lines[3] = {{1, 0}, {0, 1}, {1, 1}};
        int leg = 0;
        for (auto& a : M.arrows) {
            const auto& v = lines[leg++];
            if (a.dst == c)
                a.map = {{v[0]}, {v[1]}};
            else
                a.map = {{v[0], v[1]}};
        }
    }
    M.validate();
    return M;
}

QuiverRep generic_rep(const YMonomial& m, const DynkinData& d, int p) {
    C1Label l = c1_label(m, d);
    QuiverRep M = empty_rep(d, p);
    if (std::all_of(l.gamma.begin(), l.gamma.end(), [](int x) { return x == 0; })) return M;
    for (auto& [beta, k] : cluster_expansion(l.gamma, c1_atlas(d))) {
        RootVector t = tau_minus(beta, d);
        if (std::any_of(t.begin(), t.end(), [](int x) { return x < 0; })) continue;
        QuiverRep I = indecomposable_rep(t, d, p);
        for (int r = 0; r < k; ++r) M = direct_sum(M, I);
    }
    return M;
}

int endomorphism_dimension(const QuiverRep& M) {
    int n = static_cast<int>(M.dims.size());
    std::vector<int> off(n + 1, 0);
    for (int i = 0; i < n; ++i) off[i + 1] = off[i] + M.dims[i] * M.dims[i];
    int unknowns = off[n];
    Matrix eq;
    for (auto& a : M.arrows) {
        int s = a.src, t = a.dst, ds = M.dims[s], dt = M.dims[t];
        // (phi_t * map - map * phi_s)[r][c] = 0
        for (int r = 0; r < dt; ++r)
            for (int c = 0; c < ds; ++c) {
                std::vector<int> row(unknowns, 0);
                for (int k = 0; k < dt; ++k) row[off[t] + r * dt + k] = md(row[off[t] + r * dt + k] + a.map[k][c], M.p);
                for (int k = 0; k < ds; ++k) row[off[s] + k * ds + c] = md(row[off[s] + k * ds + c] - a.map[r][k], M.p);
                eq.push_back(std::move(row));
            }
    }
    return unknowns - rank_mod(eq, M.p);
}

mpz_class count_subreps(const QuiverRep& M, const RootVector& gamma, const GrassLimits& lim) {
    int n = static_cast<int>(M.dims.size());
    int total = 0;
    for (int x : M.dims) total += x;
    if (total > lim.max_total_dim) throw Error(Err::ScaleExceeded, "representation of dimension " + std::to_string(total));
    for (int i = 0; i < n; ++i)
        if (gamma[i] < 0 || gamma[i] > M.dims[i]) return 0;
    std::vector<std::vector<Subspace>> subs(n);
    for (int i = 0; i < n; ++i) subs[i] = all_subspaces(M.dims[i], gamma[i], M.p);
    std::vector<const Subspace*> pick(n, nullptr);
    mpz_class count = 0;
    std::size_t visited = 0;
    std::function<void(int)> rec = [&](int v) {
        if (++visited > lim.max_points) throw Error(Err::ScaleExceeded, "too many subspace tuples");
        if (v == n) {
            ++count;
            return;
        }
        for (auto& s : subs[v]) {
            pick[v] = &s;
            bool ok = true;
            for (auto& a : M.arrows) {
                if (std::max(a.src, a.dst) != v) continue;
                for (auto& b : pick[a.src]->rows) {
                    std::vector<int> w(M.dims[a.dst], 0);
                    for (int r = 0; r < M.dims[a.dst]; ++r) {
                        long acc = 0;
                        for (int c = 0; c < M.dims[a.src]; ++c) acc += static_cast<long>(a.map[r][c]) * b[c];
                        w[r] = md(acc, M.p);
                    }
                    if (!contains(*pick[a.dst], w, M.p)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) rec(v + 1);
        }
    };
    rec(0);
    return count;
}

GrassCount grassmannian_count(const RepFamily& fam, const DynkinData& d, const RootVector& gamma,
                              const GrassLimits& lim) {
    GrassCount g;
    g.gamma = gamma;
    QuiverRep M0 = fam(2);
    int D = 0;
    for (int i = 0; i < d.n; ++i) D += std::max(0, gamma[i] * (M0.dims[i] - gamma[i]));
    int npr = std::max(3, D + 2);
    if (npr > static_cast<int>(std::size(kPrimes))) throw Error(Err::ScaleExceeded, "degree bound too large");
    std::vector<mpq_class> xs, ys;
    for (int k = 0; k < npr; ++k) {
        int p = kPrimes[k];
        QuiverRep M = p == 2 ? M0 : fam(p);
        if (M.dims != M0.dims) throw Error(Err::InterpolationMismatch, "dimension vector depends on p");
        g.counts[p] = count_subreps(M, gamma, lim);
        xs.push_back(p);
        ys.push_back(mpq_class(g.counts[p]));
    }
    // Newton interpolation through the first D+1 points
    int m = D + 1;
    std::vector<mpq_class> dd(ys.begin(), ys.begin() + m);
    for (int j = 1; j < m; ++j)
        for (int i = m - 1; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    std::vector<mpq_class> coef(m, 0);  // monomial basis
    for (int i = m - 1; i >= 0; --i) {
        // coef = coef * (x - xs[i]) + dd[i]
        std::vector<mpq_class> nc(m, 0);
        for (int k = 0; k < m; ++k) {
            if (k + 1 < m) nc[k + 1] += coef[k];
            nc[k] -= coef[k] * xs[i];
        }
        nc[0] += dd[i];
        coef = nc;
    }
    for (auto& c : coef) {
        c.canonicalize();
        if (c.get_den() != 1) throw Error(Err::InterpolationMismatch, "non-integral counting polynomial");
        g.poly.push_back(c.get_num());
    }
    while (g.poly.size() > 1 && g.poly.back() == 0) g.poly.pop_back();
    for (int k = m; k < npr; ++k) {
        mpq_class v = 0, pw = 1;
        for (auto& c : g.poly) {
            v += pw * c;
            pw *= xs[k];
        }
        if (v != ys[k]) throw Error(Err::InterpolationMismatch, "point counts do not fit one polynomial");
    }
    g.euler = 0;
    for (auto& c : g.poly) g.euler += c;
    return g;
}

mpz_class euler_characteristic(const RepFamily& M, const DynkinData& d, const RootVector& gamma,
                               const GrassLimits& lim) {
    return grassmannian_count(M, d, gamma, lim).euler;
}

std::vector<GrassCount> grassmannian_table(const RepFamily& fam, const DynkinData& d, const GrassLimits& lim) {
    std::vector<int> top = fam(2).dims;
    std::vector<GrassCount> out;
    RootVector g(d.n, 0);
    do {
        GrassCount c = grassmannian_count(fam, d, g, lim);
        if (c.counts.begin()->second > 0) out.push_back(std::move(c));
    } while (box_next(g, top));
    return out;
}

FPoly geometric_fpoly(const RootVector& alpha, const DynkinData& d, const GrassLimits& lim) {
    auto fam = [&](int p) { return indecomposable_rep(alpha, d, p); };
    FPoly F;
    for (auto& c : grassmannian_table(fam, d, lim)) {
        if (c.euler == 0) continue;
        std::vector<Monomial::Entry> es;
        for (int i = 0; i < d.n; ++i)
            if (c.gamma[i]) es.push_back({v_var(i), c.gamma[i]});
        F.add_term(Monomial::from_entries(es), c.euler);
    }
    return F;
}

DecoratedQChar geometric_truncated_char(const YMonomial& m, const DynkinData& d, const GrassLimits& lim) {
    auto fam = [&](int p) { return generic_rep(m, d, p); };
    DecoratedQChar c;
    c.hw = m;
    for (auto& g : grassmannian_table(fam, d, lim)) {
        if (g.euler == 0) continue;
        AVector a;
        for (int i = 0; i < d.n; ++i)
            if (g.gamma[i]) a.add({i, d.xi[i] + 1}, g.gamma[i]);
        c.terms[a] = g.euler.get_si();
    }
    return c;
}

}  // namespace clq
