#include "clq/levels.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <tuple>

#include "clq/c1chars.hpp"

namespace clq {

namespace {
int ceil_half(int x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }

const YPoly& kr_flat(int i, int k, int r, const DynkinData& d) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, std::vector<int>, int, int, int>, YPoly> cache;
    auto key = std::make_tuple(d.name(), d.xi, i, k, r);
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    YPoly p = k == 0 ? YPoly{{YMonomial(), 1}} : kr_qchar(i, k, r, d).flatten(d);
    std::lock_guard<std::mutex> g(mu);
    return cache.emplace(key, std::move(p)).first->second;
}

LaurentPoly to_laurent(const YPoly& p) {
    LaurentPoly out;
    for (auto& [m, c] : p) {
        std::vector<Monomial::Entry> es;
        for (auto& [k, e] : m.entries())
            es.push_back({var("Y[" + std::to_string(k.i + 1) + "," + std::to_string(k.r) + "]"), e});
        out.add_term(Monomial::from_entries(es), mpz_class(static_cast<long>(c)));
    }
    return out;
}

YPoly from_laurent(const LaurentPoly& p) {
    YPoly out;
    for (auto& [m, c] : p.terms()) {
        if (!c.fits_slong_p()) throw Error(Err::Overflow, "multiplicity too large");
        std::string s = m.is_one() ? "" : m.str();
        out[s.empty() ? YMonomial() : parse_ymonomial(s)] = c.get_si();
    }
    return out;
}

// inverse Cartan matrix times a weight, summed: a linear functional increasing along the dominance order
mpq_class weight_height(const std::vector<int>& w, const DynkinData& d) {
    int n = d.n;
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = d.cartan[i][j];
        a[i][n] = w[i];
    }
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (a[p][c] == 0) ++p;
        std::swap(a[p], a[c]);
        for (int r = 0; r < n; ++r)
            if (r != c && a[r][c] != 0) {
                mpq_class f = a[r][c] / a[c][c];
                for (int k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
            }
    }
    mpq_class h = 0;
    for (int i = 0; i < n; ++i) h += a[i][n] / a[i][i];
    return h;
}
}  // namespace

int r_value(const DynkinData& d, int i, int k, int ell) {
    if (k < 1 || k > ell + 1) throw Error(Err::OutOfRange, "k outside [1, ell+1]");
    return d.in_i0(i) ? 2 * ceil_half(ell - k + 1) : 2 * ceil_half(ell - k + 2) - 1;
}

int LevelSeed::row(int i, int k) const {
    int n = static_cast<int>(vertex.size()) / (ell + 1);
    return (k - 1) * n + i;
}

nlohmann::json LevelSeed::to_json() const {
    nlohmann::json labels = nlohmann::json::array();
    for (std::size_t r = 0; r < vertex.size(); ++r)
        labels.push_back({{"vertex", {vertex[r].first + 1, vertex[r].second}},
                          {"variable", var_name(seed.initial[r])},
                          {"module", kr[r].str()},
                          {"frozen", static_cast<int>(r) >= seed.B.cols}});
    return {{"ell", ell}, {"matrix", seed.B.to_json()}, {"labels", labels}};
}

LevelSeed build_gamma_ell_seed(const DynkinData& d, int ell) {
    if (ell < 0) throw Error(Err::OutOfRange, "ell must be >= 0");
    int n = d.n;
    LevelSeed s;
    s.d = d;
    s.ell = ell;
    ExchangeMatrix B;
    B.rows = n * (ell + 1);
    B.cols = n * ell;
    B.b.assign(B.rows, std::vector<int>(B.cols, 0));
    auto idx = [&](int i, int k) { return (k - 1) * n + i; };
    auto arrow = [&](int from, int to) {
        if (from < B.cols) B.b[to][from] += 1;
        if (to < B.cols) B.b[from][to] -= 1;
    };
    for (int k = 1; k <= ell + 1; ++k)
        for (int i = 0; i < n; ++i) {
            bool special = d.in_i0(i) ? (k % 2 == 1) : (k % 2 == 0);
            if (!special) continue;
            if (k > 1) arrow(idx(i, k - 1), idx(i, k));
            if (k <= ell) arrow(idx(i, k + 1), idx(i, k));
            if (k <= ell)
                for (int j : d.neighbors(i)) arrow(idx(i, k), idx(j, k));
        }
    std::vector<std::string> names;
    for (int k = 1; k <= ell + 1; ++k)
        for (int i = 0; i < n; ++i) {
            names.push_back("w" + std::to_string(i + 1) + "_" + std::to_string(k));
            s.vertex.push_back({i, k});
            s.kr.push_back(kr_monomial(i, k, r_value(d, i, k, ell)));
        }
    s.seed = make_seed(B, names);
    return s;
}

std::vector<TSystemCheck> initial_exchange_checks(const DynkinData& d, int ell) {
    LevelSeed s = build_gamma_ell_seed(d, ell);
    std::vector<TSystemCheck> out;
    auto chi = [&](int row) {
        auto [i, k] = s.vertex[row];
        return kr_flat(i, k, r_value(d, i, k, ell), d);
    };
    for (int c = 0; c < s.seed.B.cols; ++c) {
        Exchange ex;
        mutate_seed(s.seed, c, &ex);
        auto [i, k] = s.vertex[c];
        int r = r_value(d, i, k, ell);
        int r2 = r + 2 * ((k + ell) % 2 == 1 ? 1 : -1) * d.eps(i);
        YPoly lhs = ypoly_mul(kr_flat(i, k, r2, d), chi(c));
        YPoly p1{{YMonomial(), 1}}, p2{{YMonomial(), 1}};
        for (auto [row, e] : ex.plus)
            for (int t = 0; t < e; ++t) p1 = ypoly_mul(p1, chi(row));
        for (auto [row, e] : ex.minus)
            for (int t = 0; t < e; ++t) p2 = ypoly_mul(p2, chi(row));
        TSystemCheck t;
        t.i = i;
        t.k = k;
        t.mutated = kr_monomial(i, k, r2);
        t.ok = ypoly_add(p1, p2) == lhs;
        out.push_back(t);
    }
    return out;
}

bool verify_initial_tsystem(const DynkinData& d, int ell) {
    auto v = initial_exchange_checks(d, ell);
    return std::all_of(v.begin(), v.end(), [](const TSystemCheck& t) { return t.ok; });
}

YPoly substitute_characters(const LaurentPoly& x, const std::map<VarId, YPoly>& images) {
    std::map<VarId, LaurentPoly> im;
    std::vector<Monomial::Entry> de;
    LaurentPoly den_image(1);
    for (auto& [v, q] : images) {
        LaurentPoly c = to_laurent(q);
        int e = x.min_exponent(v);
        if (e < 0) {
            de.push_back({v, -e});
            den_image *= c.pow(-e);
        }
        im.emplace(v, std::move(c));
    }
    LaurentPoly num = x * LaurentPoly(Monomial::from_entries(de));
    return from_laurent(divide_exact(substitute(num, im), den_image));
}

YPoly cluster_variable_qchar(const LaurentPoly& x, const LevelSeed& s) {
    std::map<VarId, YPoly> images;
    for (std::size_t r = 0; r < s.seed.initial.size(); ++r) {
        auto [i, k] = s.vertex[r];
        images[s.seed.initial[r]] = kr_flat(i, k, r_value(s.d, i, k, s.ell), s.d);
    }
    return substitute_characters(x, images);
}

YMonomial highest_dominant(const YPoly& p, const DynkinData& d) {
    const YMonomial* best = nullptr;
    mpq_class bh;
    bool tie = false;
    for (auto& [m, c] : p) {
        if (c <= 0 || !m.dominant()) continue;
        mpq_class h = weight_height(omega_weight(m, d.n), d);
        if (!best || h > bh) {
            best = &m;
            bh = h;
            tie = false;
        } else if (h == bh) {
            tie = true;
        }
    }
    if (!best) throw Error(Err::InvalidArgument, "no dominant monomial");
    if (tie) throw Error(Err::MismatchReport, "several dominant monomials of highest weight");
    return *best;
}

mpz_class level_dimension(const LaurentPoly& x, const LevelSeed& s) {
    std::map<VarId, mpz_class> pt;
    for (std::size_t r = 0; r < s.seed.initial.size(); ++r) {
        auto [i, k] = s.vertex[r];
        pt[s.seed.initial[r]] = ypoly_dimension(kr_flat(i, k, r_value(s.d, i, k, s.ell), s.d));
    }
    return evaluate_integer(x, pt);
}

Diagonal sl2_diagonal_model(int k, int s, int ell) {
    if (k < 1 || k > ell || s < 0 || s > ell - k + 1)
        throw Error(Err::OutOfRange, "W_{k,2s} needs 1<=k<=ell and 0<=s<=ell-k+1");
    return {s + 1, s + k + 2};
}

bool diagonals_cross(const Diagonal& x, const Diagonal& y) {
    return (x.a < y.a && y.a < x.b && x.b < y.b) || (y.a < x.a && x.a < y.b && y.b < x.b);
}

bool sl2_tensor_simple(int k1, int s1, int k2, int s2, int ell) {
    return !diagonals_cross(sl2_diagonal_model(k1, s1, ell), sl2_diagonal_model(k2, s2, ell));
}

int sl2_constituents(int k1, int s1, int k2, int s2) {
    auto a1 = make_dynkin("A1");
    auto table = [](const YMonomial& m) {
        std::vector<int> ms;
        for (auto& [k, e] : m.entries())
            for (int t = 0; t < e; ++t) ms.push_back(k.r);
        return sl2_simple_qchar(ms);
    };
    auto parts = decompose_product({sl2_kr_qchar(k1, 2 * s1), sl2_kr_qchar(k2, 2 * s2)}, a1, table);
    int total = 0;
    for (auto& [m, c] : parts) total += static_cast<int>(c);
    return total;
}

nlohmann::json LevelCatalog::to_json() const {
    nlohmann::json e = nlohmann::json::array();
    for (auto& x : entries)
        e.push_back({{"module", x.module.str()}, {"dimension", x.dimension.get_str()}, {"frozen", x.frozen}});
    return {{"variables", variables}, {"clusters", clusters}, {"entries", e}};
}

LevelCatalog level_catalog(const DynkinData& d, int ell, const Limits& lim) {
    LevelSeed s = build_gamma_ell_seed(d, ell);
    Atlas A = enumerate_atlas(s.seed, lim);
    LevelCatalog cat;
    cat.variables = static_cast<int>(A.variables.size());
    cat.clusters = static_cast<int>(A.clusters.size());
    for (auto& x : A.variables) {
        YPoly q = cluster_variable_qchar(x, s);
        CatalogEntry e;
        e.module = highest_dominant(q, d);
        e.dimension = ypoly_dimension(q);
        if (e.dimension != level_dimension(x, s))
            throw Error(Err::MismatchReport, "dimension evaluation disagrees with the character");
        cat.entries.push_back(e);
    }
    for (int r = s.seed.B.cols; r < s.seed.B.rows; ++r) {
        auto [i, k] = s.vertex[r];
        cat.entries.push_back({s.kr[r], ypoly_dimension(kr_flat(i, k, r_value(d, i, k, ell), d)), true});
    }
    return cat;
}

mpz_class pluecker(const std::vector<std::vector<long>>& m, const std::vector<int>& cols) {
    int n = static_cast<int>(cols.size());
    if (static_cast<int>(m.size()) != n) throw Error(Err::InvalidArgument, "minor size");
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (cols[c] < 1 || cols[c] > static_cast<int>(m[r].size())) throw Error(Err::OutOfRange, "column index");
            a[r][c] = m[r][cols[c] - 1];
        }
    mpq_class det = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            mpq_class f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det.get_num();
}

namespace {
// expr := term {(+|-) term}; term := factor {factor}; factor := integer | [i,j,...] | (expr)
struct PlueckerParser {
    const std::string& s;
    const std::vector<std::vector<long>>& m;
    std::size_t i = 0;
    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw Error(Err::ParseError, what + " at position " + std::to_string(i) + " in '" + s + "'");
    }
    mpz_class expr() {
        ws();
        int sign = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) sign = s[i++] == '-' ? -1 : 1;
        mpz_class v = sign * term();
        for (;;) {
            ws();
            if (i >= s.size() || (s[i] != '+' && s[i] != '-')) return v;
            char op = s[i++];
            mpz_class t = term();
            if (op == '+')
                v += t;
            else
                v -= t;
        }
    }
    mpz_class term() {
        mpz_class v = factor();
        for (;;) {
            ws();
            if (i >= s.size() || !(s[i] == '[' || s[i] == '(' || s[i] == '*' || std::isdigit(static_cast<unsigned char>(s[i]))))
                return v;
            if (s[i] == '*') ++i;
            v *= factor();
        }
    }
    mpz_class factor() {
        ws();
        if (i >= s.size()) fail("unexpected end");
        if (s[i] == '(') {
            ++i;
            mpz_class v = expr();
            ws();
            if (i >= s.size() || s[i] != ')') fail("expected ')'");
            ++i;
            return v;
        }
        if (s[i] == '[') {
            ++i;
            std::vector<int> cols;
            for (;;) {
                ws();
                std::size_t st = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (st == i) fail("expected column index");
                cols.push_back(std::stoi(s.substr(st, i - st)));
                ws();
                if (i < s.size() && s[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < s.size() && s[i] == ']') {
                    ++i;
                    break;
                }
                fail("expected ',' or ']'");
            }
            return pluecker(m, cols);
        }
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            std::size_t st = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            return mpz_class(s.substr(st, i - st));
        }
        fail("unexpected character");
    }
};

const std::vector<std::vector<long>> kGr36 = {{1, 1, 1, 1, 1, 1}, {0, 1, 2, 3, 4, 5}, {0, 0, 1, 3, 6, 10}};

const std::vector<std::pair<const char*, const char*>> kGr36Table = {
    {"Y[1,0]", "[3,4,6]"},
    {"Y[1,2]", "[2,3,5]"},
    {"Y[1,4]", "[1,2,4]"},
    {"Y[2,1]", "[3,5,6]"},
    {"Y[2,3]", "[2,4,5]"},
    {"Y[2,5]", "[1,3,4]"},
    {"Y[1,0]*Y[1,2]", "[2,3,6]"},
    {"Y[1,2]*Y[1,4]", "[1,2,5]"},
    {"Y[1,0]*Y[1,2]*Y[1,4]", "[1,2,6]"},
    {"Y[2,1]*Y[2,3]", "[2,5,6]"},
    {"Y[2,3]*Y[2,5]", "[1,4,5]"},
    {"Y[2,1]*Y[2,3]*Y[2,5]", "[1,5,6]"},
    {"Y[1,0]*Y[2,3]", "[2,4,6]"},
    {"Y[1,2]*Y[2,5]", "[1,3,5]"},
    {"Y[1,4]*Y[2,1]", "[1,3,4][2,5,6]-[1,5,6]"},
    {"Y[1,0]*Y[1,2]*Y[2,5]", "[1,3,6]"},
    {"Y[1,0]*Y[2,3]*Y[2,5]", "[1,4,6]"},
    {"Y[1,0]*Y[1,2]*Y[2,3]*Y[2,5]", "[2,3,6][1,4,5]-1"},
};
}  // namespace

mpz_class eval_pluecker_expression(const std::string& expr, const std::vector<std::vector<long>>& m) {
    PlueckerParser p{expr, m};
    mpz_class v = p.expr();
    p.ws();
    if (p.i != expr.size()) p.fail("trailing input");
    return v;
}

bool GrassReport::ok() const {
    if (!frozen_ok) return false;
    return std::all_of(identities.begin(), identities.end(),
                       [](const GrassIdentity& g) { return g.value == g.expected; });
}

nlohmann::json GrassReport::to_json() const {
    nlohmann::json ids = nlohmann::json::array();
    for (auto& g : identities)
        ids.push_back({{"module", g.module},
                       {"expression", g.expression},
                       {"value", g.value.get_str()},
                       {"expected", g.expected.get_str()},
                       {"ok", g.value == g.expected}});
    return {{"frozen_ok", frozen_ok}, {"closing_value", closing_value.get_str()}, {"identities", ids}, {"ok", ok()}};
}

GrassReport grassmannian_check(int ell, int n) {
    if (ell != 2 || n != 2) throw Error(Err::OutOfRange, "only Gr(3,6), i.e. n=2 and ell=2, has a fixture");
    auto d = with_i0(make_dynkin("A2"), {1});
    LevelCatalog cat = level_catalog(d, ell);
    std::map<YMonomial, mpz_class> dims;
    for (auto& e : cat.entries) dims[e.module] = e.dimension;
    GrassReport rep;
    rep.frozen_ok = true;
    for (auto f : {"[1,2,3]", "[2,3,4]", "[3,4,5]", "[4,5,6]"})
        if (eval_pluecker_expression(f, kGr36) != 1) rep.frozen_ok = false;
    rep.closing_value = eval_pluecker_expression("[2,3,6][1,4,5]-1", kGr36);
    for (auto& [mod, ex] : kGr36Table) {
        GrassIdentity g;
        g.module = mod;
        g.expression = ex;
        g.value = eval_pluecker_expression(ex, kGr36);
        YMonomial m = parse_ymonomial(mod);
        auto it = dims.find(m);
        if (it == dims.end()) throw Error(Err::MismatchReport, std::string(mod) + " is not in the catalog");
        g.expected = it->second;
        rep.identities.push_back(g);
    }
    return rep;
}

nlohmann::json NonRealSignal::to_json() const {
    std::vector<std::string> c;
    for (auto& m : claimed) c.push_back(m.str());
    return {{"type", type},
            {"module", module.str()},
            {"claimed_constituents", c},
            {"dominant_monomials_in_square", dominant_in_square},
            {"claimed_present", claimed_present}};
}

std::vector<NonRealSignal> non_real_signals() {
    struct Fixture {
        const char* type;
        std::vector<int> i0;
        const char* m;
        const char* other;
    };
    const Fixture fx[] = {{"A4", {1, 3}, "Y[1,4]*Y[2,1]*Y[2,7]*Y[3,4]", "Y[2,1]*Y[2,3]*Y[2,5]*Y[2,7]*Y[4,3]*Y[4,5]"},
                          {"A3", {1, 3}, "Y[1,4]*Y[2,1]*Y[2,7]*Y[3,4]", "Y[2,1]*Y[2,3]*Y[2,5]*Y[2,7]"}};
    std::vector<NonRealSignal> out;
    for (auto& f : fx) {
        auto d = with_i0(make_dynkin(f.type), f.i0);
        NonRealSignal s;
        s.type = f.type;
        s.module = parse_ymonomial(f.m);
        s.claimed = {s.module.pow(2), parse_ymonomial(f.other)};
        YPoly sq = ypoly_mul(frenkel_mukhin(s.module, d).flatten(d), frenkel_mukhin(s.module, d).flatten(d));
        s.claimed_present = true;
        for (auto& c : s.claimed)
            if (!sq.count(c)) s.claimed_present = false;
        for (auto& [m, c] : sq)
            if (m.dominant()) ++s.dominant_in_square;
        out.push_back(s);
    }
    return out;
}

}  // namespace clq
