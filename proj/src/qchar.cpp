#include "clq/qchar.hpp"

#include <algorithm>
#include <climits>
#include <mutex>
#include <cstdio>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_map>

namespace clq {

// ---------------------------------------------------------------- IRMono

IRMono IRMono::of(int i, int r, int e) {
    IRMono m;
    if (e != 0) m.e_.push_back({{i, r}, e});
    return m;
}

IRMono IRMono::from_entries(std::vector<Entry> es) {
    std::sort(es.begin(), es.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    IRMono m;
    for (auto& [k, e] : es) {
        if (!m.e_.empty() && m.e_.back().first == k)
            m.e_.back().second += e;
        else
            m.e_.push_back({k, e});
        if (m.e_.back().second == 0) m.e_.pop_back();
    }
    return m;
}

int IRMono::exp(int i, int r) const {
    IR k{i, r};
    auto it = std::lower_bound(e_.begin(), e_.end(), k, [](const Entry& a, const IR& b) { return a.first < b; });
    return (it != e_.end() && it->first == k) ? it->second : 0;
}

int IRMono::degree() const {
    int s = 0;
    for (auto& [k, e] : e_) s += e;
    return s;
}

void IRMono::add(IR k, int e) {
    if (e == 0) return;
    auto it = std::lower_bound(e_.begin(), e_.end(), k, [](const Entry& a, const IR& b) { return a.first < b; });
    if (it != e_.end() && it->first == k) {
        it->second += e;
        if (it->second == 0) e_.erase(it);
    } else {
        e_.insert(it, {k, e});
    }
}

IRMono IRMono::operator*(const IRMono& o) const {
    IRMono r;
    r.e_.reserve(e_.size() + o.e_.size());
    std::size_t a = 0, b = 0;
    while (a < e_.size() || b < o.e_.size()) {
        if (b == o.e_.size() || (a < e_.size() && e_[a].first < o.e_[b].first)) {
            r.e_.push_back(e_[a++]);
        } else if (a == e_.size() || o.e_[b].first < e_[a].first) {
            r.e_.push_back(o.e_[b++]);
        } else {
            int s = e_[a].second + o.e_[b].second;
            if (s != 0) r.e_.push_back({e_[a].first, s});
            ++a;
            ++b;
        }
    }
    return r;
}

IRMono IRMono::inverse() const { return pow(-1); }

IRMono IRMono::pow(int k) const {
    IRMono r;
    if (k == 0) return r;
    r.e_ = e_;
    for (auto& [key, e] : r.e_) e *= k;
    return r;
}

bool IRMono::dominant() const {
    return std::all_of(e_.begin(), e_.end(), [](const Entry& x) { return x.second > 0; });
}

bool IRMono::dominant_at(int i) const {
    for (auto& [k, e] : e_)
        if (k.i == i && e < 0) return false;
    return true;
}

int IRMono::min_r() const {
    int m = INT_MAX;
    for (auto& [k, e] : e_) m = std::min(m, k.r);
    return m;
}

int IRMono::max_r() const {
    int m = INT_MIN;
    for (auto& [k, e] : e_) m = std::max(m, k.r);
    return m;
}

IRMono IRMono::restrict_to(const std::vector<int>& verts) const {
    std::vector<Entry> es;
    for (auto& [k, e] : e_) {
        auto it = std::find(verts.begin(), verts.end(), k.i);
        if (it != verts.end()) es.push_back({{static_cast<int>(it - verts.begin()), k.r}, e});
    }
    return from_entries(es);
}

std::size_t IRMono::hash() const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto& [k, e] : e_) {
        std::size_t x = (static_cast<std::size_t>(static_cast<unsigned>(k.i)) << 40) ^
                        (static_cast<std::size_t>(static_cast<unsigned>(k.r)) << 16) ^
                        static_cast<std::size_t>(static_cast<unsigned>(e));
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::string IRMono::str(char letter) const {
    if (e_.empty()) return "1";
    std::string s;
    for (auto& [k, e] : e_) {
        if (!s.empty()) s += "*";
        s += letter;
        s += "[" + std::to_string(k.i + 1) + "," + std::to_string(k.r) + "]";
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

YMonomial parse_ymonomial(const std::string& s) {
    LaurentPoly p = LaurentPoly::parse(s);
    if (!p.is_monomial() || p.terms().begin()->second != 1)
        throw Error(Err::ParseError, "expected a single Y-monomial: '" + s + "'");
    std::vector<IRMono::Entry> es;
    for (auto& [v, e] : p.terms().begin()->first.entries()) {
        const std::string& nm = var_name(v);
        int i = 0, r = 0;
        int used = -1;
        if (std::sscanf(nm.c_str(), "Y[%d,%d]%n", &i, &r, &used) != 2 || used != static_cast<int>(nm.size()) || i < 1)
            throw Error(Err::ParseError, "not a Y variable: '" + nm + "'");
        es.push_back({{i - 1, r}, e});
    }
    return IRMono::from_entries(es);
}

YMonomial a_monomial(int i, int r, const DynkinData& d) {
    std::vector<IRMono::Entry> es{{{i, r + 1}, 1}, {{i, r - 1}, 1}};
    for (int j : d.neighbors(i)) es.push_back({{j, r}, -1});
    return IRMono::from_entries(es);
}

std::vector<int> omega_weight(const YMonomial& m, int n) {
    std::vector<int> w(n, 0);
    for (auto& [k, e] : m.entries()) {
        if (k.i >= n) throw Error(Err::InvalidArgument, "vertex out of range");
        w[k.i] += e;
    }
    return w;
}

std::vector<int> omega_weight(const YMonomial& m) {
    int n = 0;
    for (auto& [k, e] : m.entries()) n = std::max(n, k.i + 1);
    return omega_weight(m, n);
}

YMonomial a_inverse_product(const AVector& a, const DynkinData& d) {
    YMonomial y;
    for (auto& [k, e] : a.entries()) y = y * a_monomial(k.i, k.r, d).pow(-e);
    return y;
}

Mult checked_add(Mult a, Mult b) {
    Mult r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(Err::Overflow, "multiplicity overflow");
    return r;
}

Mult checked_mul(Mult a, Mult b) {
    Mult r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(Err::Overflow, "multiplicity overflow");
    return r;
}

// ---------------------------------------------------------------- characters

DecoratedQChar DecoratedQChar::unit(const YMonomial& m) {
    DecoratedQChar c;
    c.hw = m;
    c.terms[AVector()] = 1;
    return c;
}

YPoly DecoratedQChar::flatten(const DynkinData& d) const {
    YPoly p;
    std::map<IR, YMonomial> cache;
    for (auto& [a, c] : terms) {
        YMonomial y = hw;
        for (auto& [k, e] : a.entries()) {
            auto it = cache.find(k);
            if (it == cache.end()) it = cache.emplace(k, a_monomial(k.i, k.r, d).inverse()).first;
            y = y * it->second.pow(e);
        }
        Mult& slot = p[y];
        slot = checked_add(slot, c);
        if (slot == 0) p.erase(y);
    }
    return p;
}

Mult DecoratedQChar::dimension() const {
    Mult s = 0;
    for (auto& [a, c] : terms) s = checked_add(s, c);
    return s;
}

nlohmann::json DecoratedQChar::to_json(const DynkinData& d) const {
    nlohmann::json ts = nlohmann::json::array();
    for (auto& [a, c] : terms)
        ts.push_back({{"a_inverse", a.str('A')}, {"mult", std::to_string(c)}, {"monomial", (hw * a_inverse_product(a, d)).str()}});
    return {{"highest", hw.str()}, {"terms", ts}, {"dimension", std::to_string(dimension())}, {"size", terms.size()}};
}

DecoratedQChar multiply(const DecoratedQChar& a, const DecoratedQChar& b) {
    DecoratedQChar r;
    r.hw = a.hw * b.hw;
    for (auto& [x, c] : a.terms)
        for (auto& [y, e] : b.terms) {
            Mult& slot = r.terms[x * y];
            slot = checked_add(slot, checked_mul(c, e));
        }
    return r;
}

DecoratedQChar power(const DecoratedQChar& a, int k) {
    if (k < 0) throw Error(Err::InvalidArgument, "negative power of a character");
    DecoratedQChar r = DecoratedQChar::unit(YMonomial());
    for (int t = 0; t < k; ++t) r = multiply(r, a);
    return r;
}

std::vector<std::pair<YMonomial, Mult>> dominant_terms(const DecoratedQChar& c, const DynkinData& d) {
    std::vector<std::pair<YMonomial, Mult>> out;
    for (auto& [y, m] : c.flatten(d))
        if (y.dominant() && m != 0) out.push_back({y, m});
    return out;
}

YPoly ypoly_mul(const YPoly& a, const YPoly& b) {
    std::unordered_map<YMonomial, Mult, IRMonoHash> acc;
    acc.reserve(a.size() * b.size());
    for (auto& [x, c] : a)
        for (auto& [y, e] : b) {
            Mult& slot = acc[x * y];
            slot = checked_add(slot, checked_mul(c, e));
        }
    YPoly r;
    for (auto& [m, c] : acc)
        if (c != 0) r.emplace(m, c);
    return r;
}

YPoly ypoly_add(const YPoly& a, const YPoly& b, Mult sign) {
    YPoly r = a;
    for (auto& [m, c] : b) {
        Mult& slot = r[m];
        slot = checked_add(slot, checked_mul(sign, c));
        if (slot == 0) r.erase(m);
    }
    return r;
}

Mult ypoly_dimension(const YPoly& p) {
    Mult s = 0;
    for (auto& [m, c] : p) s = checked_add(s, c);
    return s;
}

std::string ypoly_str(const YPoly& p) {
    if (p.empty()) return "0";
    std::string s;
    for (auto& [m, c] : p) {
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        Mult a = c < 0 ? -c : c;
        if (a != 1 || m.empty()) s += std::to_string(a) + (m.empty() ? "" : "*");
        if (!m.empty()) s += m.str();
    }
    return s;
}

// ---------------------------------------------------------------- sl2

std::vector<QSegment> segment_decompose(std::vector<int> ms) {
    std::sort(ms.begin(), ms.end());
    std::vector<QSegment> out;
    std::multiset<int> pool(ms.begin(), ms.end());
    while (!pool.empty()) {
        int a = *pool.begin();
        pool.erase(pool.begin());
        int len = 1, cur = a;
        for (;;) {
            auto it = pool.find(cur + 2);
            if (it == pool.end()) break;
            pool.erase(it);
            cur += 2;
            ++len;
        }
        out.push_back({a, len});
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool general_position(const QSegment& a, const QSegment& b) {
    int ae = a.origin + 2 * (a.length - 1), be = b.origin + 2 * (b.length - 1);
    if ((a.origin - b.origin) % 2 != 0) return true;
    bool a_in_b = b.origin <= a.origin && ae <= be;
    bool b_in_a = a.origin <= b.origin && be <= ae;
    if (a_in_b || b_in_a) return true;
    bool union_segment = b.origin <= ae + 2 && a.origin <= be + 2;
    return !union_segment;
}

DecoratedQChar sl2_kr_qchar(int k, int a) {
    DecoratedQChar c;
    std::vector<IRMono::Entry> hw;
    for (int t = 0; t < k; ++t) hw.push_back({{0, a + 2 * t}, 1});
    c.hw = IRMono::from_entries(hw);
    AVector cur;
    c.terms[cur] = 1;
    for (int t = 0; t < k; ++t) {
        cur.add({0, a + 2 * k - 1 - 2 * t}, 1);
        c.terms[cur] = 1;
    }
    return c;
}

DecoratedQChar sl2_simple_qchar(const std::vector<int>& ms) {
    DecoratedQChar c = DecoratedQChar::unit(YMonomial());
    for (auto& s : segment_decompose(ms)) c = multiply(c, sl2_kr_qchar(s.length, s.origin));
    return c;
}

// ---------------------------------------------------------------- Frenkel-Mukhin

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Node {
    AVector a;
    YMonomial y;
    std::int64_t key = 0;
    std::vector<Mult> si;
};

}  // namespace

DecoratedQChar frenkel_mukhin(const YMonomial& m, const DynkinData& d, const FMOptions& opt) {
    if (!m.dominant()) throw Error(Err::InvalidArgument, "FM needs a dominant monomial, got " + m.str());
    int n = d.n;
    for (auto& [k, e] : m.entries())
        if (k.i < 0 || k.i >= n) throw Error(Err::InvalidArgument, "vertex out of range in " + m.str());
    int margin = opt.spectral_margin >= 0 ? opt.spectral_margin : 2 * std::max(d.h, 2);
    int lo = m.empty() ? 0 : m.min_r() - margin;
    int hi = m.empty() ? 0 : m.max_r() + margin;

    auto weight = [&](IR k) -> std::int64_t {
        if (opt.order_seed == 0) return 1;
        std::uint64_t h = splitmix(opt.order_seed ^ splitmix((static_cast<std::uint64_t>(k.i) << 32) ^
                                                             static_cast<std::uint32_t>(k.r)));
        return 1 + static_cast<std::int64_t>(h % 997);
    };

    std::vector<Node> nodes;
    std::unordered_map<AVector, int, IRMonoHash> index;
    std::map<IR, YMonomial> ainv;
    auto a_inv = [&](IR k) -> const YMonomial& {
        auto it = ainv.find(k);
        if (it == ainv.end()) it = ainv.emplace(k, a_monomial(k.i, k.r, d).inverse()).first;
        return it->second;
    };
    auto cmp = [&](int x, int y) {  // priority_queue pops the largest; we want smallest key first
        if (nodes[x].key != nodes[y].key) return nodes[x].key > nodes[y].key;
        return nodes[x].a > nodes[y].a;
    };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> pq(cmp);

    auto intern = [&](AVector a, YMonomial y, std::int64_t key) {
        auto it = index.find(a);
        if (it != index.end()) return it->second;
        if (nodes.size() >= opt.max_monomials)
            throw Error(Err::CapExceeded, "more than " + std::to_string(opt.max_monomials) + " monomials in D_m");
        int id = static_cast<int>(nodes.size());
        nodes.push_back({std::move(a), std::move(y), key, std::vector<Mult>(n, 0)});
        index.emplace(nodes.back().a, id);
        pq.push(id);
        return id;
    };

    std::map<std::vector<int>, DecoratedQChar> sl2_cache;
    DecoratedQChar out;
    out.hw = m;
    intern(AVector(), m, 0);
    bool first = true;
    while (!pq.empty()) {
        int t = pq.top();
        pq.pop();
        Mult s = 0;
        if (first) {
            s = 1;
            first = false;
        } else {
            for (Mult x : nodes[t].si) s = std::max(s, x);
        }
        if (s == 0) continue;
        out.terms[nodes[t].a] = s;
        for (int i = 0; i < n; ++i) {
            Mult c = s - nodes[t].si[i];
            if (c == 0) continue;
            const YMonomial& y = nodes[t].y;
            if (!y.dominant_at(i)) continue;
            std::vector<int> ms;
            for (auto& [k, e] : y.entries())
                if (k.i == i)
                    for (int z = 0; z < e; ++z) ms.push_back(k.r);
            if (ms.empty()) continue;
            auto it = sl2_cache.find(ms);
            if (it == sl2_cache.end()) it = sl2_cache.emplace(ms, sl2_simple_qchar(ms)).first;
            for (auto& [sa, coef] : it->second.terms) {
                if (sa.empty()) continue;
                bool pruned = false;
                AVector na = nodes[t].a;
                YMonomial ny = nodes[t].y;
                std::int64_t key = nodes[t].key;
                for (auto& [k, e] : sa.entries()) {
                    IR g{i, k.r};
                    if (g.r > opt.prune_above) pruned = true;
                    if (g.r < lo || g.r > hi)
                        throw Error(Err::CapExceeded, "spectral exponent " + std::to_string(g.r) + " outside [" +
                                                          std::to_string(lo) + "," + std::to_string(hi) + "]");
                    na.add(g, e);
                    ny = ny * a_inv(g).pow(e);
                    key += weight(g) * e;
                }
                if (pruned) continue;
                int id = intern(std::move(na), std::move(ny), key);
                Mult& slot = nodes[id].si[i];
                slot = checked_add(slot, checked_mul(c, coef));
            }
        }
    }
    return out;
}

DecoratedQChar phi_restricted(const YMonomial& m, const std::vector<int>& J, const DynkinData& d,
                              const FMOptions& opt) {
    for (int j : J) {
        if (j < 0 || j >= d.n) throw Error(Err::InvalidArgument, "vertex out of range");
        if (!m.dominant_at(j)) throw Error(Err::NotJDominant, m.str() + " at vertex " + std::to_string(j + 1));
    }
    std::vector<int> js = J;
    std::sort(js.begin(), js.end());
    js.erase(std::unique(js.begin(), js.end()), js.end());
    DecoratedQChar out;
    out.hw = m;
    if (js.empty()) {
        out.terms[AVector()] = 1;
        return out;
    }
    DecoratedQChar sub;
    if (js.size() == 1) {
        std::vector<int> ms;
        for (auto& [k, e] : m.entries())
            if (k.i == js[0])
                for (int z = 0; z < e; ++z) ms.push_back(k.r);
        sub = sl2_simple_qchar(ms);
    } else {
        DynkinData sd = subdiagram(d, js);
        sub = frenkel_mukhin(m.restrict_to(js), sd, opt);
    }
    for (auto& [a, c] : sub.terms) {
        std::vector<IRMono::Entry> es;
        for (auto& [k, e] : a.entries()) es.push_back({{js[k.i], k.r}, e});
        out.terms[IRMono::from_entries(es)] = c;
    }
    return out;
}

DecoratedQChar truncate(const DecoratedQChar& c, TruncMode mode, int threshold) {
    DecoratedQChar r;
    r.hw = c.hw;
    for (auto& [a, m] : c.terms) {
        bool keep = true;
        for (auto& [k, e] : a.entries()) {
            if (mode == TruncMode::Le2 && k.r > threshold) keep = false;
            if (mode == TruncMode::Ge3 && k.r <= threshold) keep = false;
        }
        if (keep) r.terms[a] = m;
    }
    return r;
}

// ---------------------------------------------------------------- KR and T-system

YMonomial kr_monomial(int i, int k, int r) {
    std::vector<IRMono::Entry> es;
    for (int t = 0; t < k; ++t) es.push_back({{i, r + 2 * t}, 1});
    return IRMono::from_entries(es);
}

const DecoratedQChar& kr_qchar(int i, int k, int r, const DynkinData& d) {
    static std::mutex mu;
    static std::map<std::tuple<std::vector<std::vector<int>>, int, int, int>, DecoratedQChar> cache;
    auto key = std::make_tuple(d.cartan, i, k, r);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    DecoratedQChar c = k == 0 ? DecoratedQChar::unit(YMonomial()) : frenkel_mukhin(kr_monomial(i, k, r), d);
    std::lock_guard<std::mutex> lk(mu);
    return cache.emplace(key, std::move(c)).first->second;
}

bool t_system_check(int i, int k, int r, const DynkinData& d) {
    if (k < 1) throw Error(Err::InvalidArgument, "T-system needs k >= 1");
    YPoly lhs = ypoly_mul(kr_qchar(i, k, r, d).flatten(d), kr_qchar(i, k, r + 2, d).flatten(d));
    YPoly first = ypoly_mul(kr_qchar(i, k + 1, r, d).flatten(d), kr_qchar(i, k - 1, r + 2, d).flatten(d));
    YPoly second{{YMonomial(), 1}};
    for (int j : d.neighbors(i)) second = ypoly_mul(second, kr_qchar(j, k, r + 1, d).flatten(d));
    return lhs == ypoly_add(first, second);
}

YPoly sl2_kr_determinant(int k, int r) {
    if (k == 0) return YPoly{{YMonomial(), 1}};
    // D_t = W1(r + 2(t-1)) D_{t-1} - D_{t-2}
    YPoly prev{{YMonomial(), 1}};
    YPoly cur = sl2_kr_qchar(1, r).flatten(make_dynkin("A1"));
    DynkinData a1 = make_dynkin("A1");
    for (int t = 2; t <= k; ++t) {
        YPoly w = sl2_kr_qchar(1, r + 2 * (t - 1)).flatten(a1);
        YPoly next = ypoly_add(ypoly_mul(cur, w), prev, -1);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace clq
