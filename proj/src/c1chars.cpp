#include "clq/c1chars.hpp"

#include <algorithm>
#include <mutex>

#include "clq/fpoly.hpp"

namespace clq {

Route parse_route(const std::string& s) {
    if (s == "fpoly") return Route::Fpoly;
    if (s == "phiJ" || s == "phij") return Route::PhiJ;
    throw Error(Err::InvalidArgument, "unknown route '" + s + "'");
}

const char* route_name(Route r) { return r == Route::Fpoly ? "fpoly" : "phiJ"; }

bool is_c1_monomial(const YMonomial& m, const DynkinData& d) {
    for (auto& [k, e] : m.entries()) {
        if (k.i < 0 || k.i >= d.n || e <= 0) return false;
        if (k.r != d.xi[k.i] && k.r != d.xi[k.i] + 2) return false;
    }
    return true;
}

C1Label c1_label(const YMonomial& m, const DynkinData& d) {
    if (!is_c1_monomial(m, d))
        throw Error(Err::InvalidArgument, m.str() + " is not a dominant monomial of the category C1");
    C1Label l;
    l.frozen.assign(d.n, 0);
    l.gamma.assign(d.n, 0);
    for (int i = 0; i < d.n; ++i) {
        int a = m.exp(i, d.xi[i]), b = m.exp(i, d.xi[i] + 2);
        l.frozen[i] = std::min(a, b);
        l.gamma[i] = d.in_i0(i) ? a - b : b - a;
    }
    return l;
}

YMonomial c1_monomial(const C1Label& l, const DynkinData& d) {
    YMonomial m;
    for (int i = 0; i < d.n; ++i) {
        int a = l.frozen[i], b = l.frozen[i];
        int g = l.gamma[i];
        if ((g > 0) == d.in_i0(i))
            a += std::abs(g);
        else
            b += std::abs(g);
        if (a) m.add({i, d.xi[i]}, a);
        if (b) m.add({i, d.xi[i] + 2}, b);
    }
    return m;
}

YMonomial y_beta(const RootVector& beta, const DynkinData& d) {
    if (!is_almost_positive(beta, d)) throw Error(Err::NotAlmostPositive, root_str(beta));
    C1Label l{std::vector<int>(d.n, 0), beta};
    return c1_monomial(l, d);
}

YMonomial frozen_monomial(int i, const DynkinData& d) { return IRMono::of(i, d.xi[i]) * IRMono::of(i, d.xi[i] + 2); }

namespace {

AVector a_at(int i, const DynkinData& d, int e = 1) { return AVector::of(i, d.xi[i] + 1, e); }

bool multiplicity_free(const RootVector& b) {
    return std::all_of(b.begin(), b.end(), [](int x) { return x == 0 || x == 1; });
}

DecoratedQChar negative_simple_char(int i, const DynkinData& d) {
    auto c = DecoratedQChar::unit(y_beta(simple_root(d.n, i, -1), d));
    if (!d.in_i0(i)) c.terms[AVector::of(i, 2)] = 1;
    return c;
}

DecoratedQChar fpoly_char(const RootVector& beta, const DynkinData& d) {
    RootVector t = tau_minus(beta, d);
    auto c = DecoratedQChar::unit(y_beta(beta, d));
    if (std::any_of(t.begin(), t.end(), [](int x) { return x < 0; })) return c;
    if (!two_restricted(t))
        throw Error(Err::OutOfProvedScope, "tau_-(" + root_str(beta) + ") = " + root_str(t) + " is not 2-restricted");
    FPoly F = f_poly_combinatorial(t, d);
    std::map<VarId, int> idx;
    for (int j = 0; j < d.n; ++j) idx[v_var(j)] = j;
    c.terms.clear();
    for (auto& [mono, coef] : F.terms()) {
        AVector a;
        for (auto& [v, e] : mono.entries()) a = a * a_at(idx.at(v), d, e);
        c.terms[a] = coef.get_si();
    }
    return c;
}

DecoratedQChar d4_highest_char(const DynkinData& d) {
    auto c = DecoratedQChar::unit(y_beta({1, 2, 1, 1}, d));
    const int legs[3] = {0, 2, 3};
    AVector v2 = a_at(1, d);
    c.terms[v2] = 2;
    for (int k : legs) c.terms[v2 * a_at(k, d)] = 1;
    for (int mask = 0; mask < 8; ++mask) {
        AVector a = a_at(1, d, 2);
        for (int b = 0; b < 3; ++b)
            if (mask >> b & 1) a = a * a_at(legs[b], d);
        c.terms[a] = 1;
    }
    return c;
}

struct CharKey {
    std::string type;
    std::vector<int> xi;
    RootVector beta;
    int route;
    auto operator<=>(const CharKey&) const = default;
};

}  // namespace

DecoratedQChar phi_route(const RootVector& gamma, const DynkinData& d) {
    std::vector<int> J;
    for (int i = 0; i < d.n; ++i) {
        if (gamma[i] < 0) throw Error(Err::InvalidArgument, "phi route needs gamma >= 0");
        if (gamma[i] > 0) J.push_back(i);
    }
    C1Label l{std::vector<int>(d.n, 0), gamma};
    YMonomial m = c1_monomial(l, d);
    FMOptions opt;
    opt.prune_above = 2;
    DecoratedQChar phi = truncate(phi_restricted(m, J, d, opt), TruncMode::Le2);

    std::vector<std::pair<int, int>> legs;  // (k in K cap I1, j_k)
    for (int k = 0; k < d.n; ++k) {
        if (gamma[k] != 0 || d.in_i0(k)) continue;
        for (int j : J)
            if (d.adjacent(k, j)) legs.push_back({k, j});
    }
    DecoratedQChar out;
    out.hw = m;
    for (auto& [M, mult] : phi.terms) {
        std::map<AVector, Mult> acc{{M, mult}};
        for (auto& [k, j] : legs) {
            int mu = M.exp(j, d.xi[j] + 1);
            std::map<AVector, Mult> next;
            Mult binom = 1;
            for (int t = 0; t <= mu; ++t) {
                for (auto& [a, c] : acc) {
                    AVector b = t ? a * AVector::of(k, 2, t) : a;
                    next[b] = checked_add(next[b], checked_mul(c, binom));
                }
                binom = binom * (mu - t) / (t + 1);
            }
            acc.swap(next);
        }
        for (auto& [a, c] : acc) out.terms[a] = checked_add(out.terms[a], c);
    }
    return out;
}

DecoratedQChar nu_sequence_char(const RootVector& beta, const DynkinData& d) {
    if (!multiplicity_free(beta) || height(beta) <= 0) throw Error(Err::InvalidArgument, "needs a multiplicity-free root");
    auto c = DecoratedQChar::unit(y_beta(beta, d));
    c.terms.clear();
    for (unsigned mask = 0; mask < (1u << d.n); ++mask) {
        auto nu = [&](int i) { return static_cast<int>(mask >> i & 1); };
        bool ok = true;
        for (int i = 0; i < d.n && ok; ++i) {
            if (d.in_i0(i)) {
                ok = nu(i) <= beta[i];
            } else {
                int s = -beta[i];
                for (int j : d.neighbors(i)) s += nu(j);
                ok = nu(i) <= std::max(0, s);
            }
        }
        if (!ok) continue;
        AVector a;
        for (int i = 0; i < d.n; ++i)
            if (nu(i)) a = a * a_at(i, d);
        c.terms[a] = 1;
    }
    return c;
}

DecoratedQChar truncated_root_char(const RootVector& beta, const DynkinData& d, Route route) {
    if (!is_almost_positive(beta, d)) throw Error(Err::NotAlmostPositive, root_str(beta));
    static std::mutex mu;
    static std::map<CharKey, DecoratedQChar> cache;
    CharKey key{d.name(), d.xi, beta, static_cast<int>(route)};
    {
        std::lock_guard<std::mutex> g(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    DecoratedQChar c;
    if (height(beta) < 0) {
        int i = static_cast<int>(std::find(beta.begin(), beta.end(), -1) - beta.begin());
        c = negative_simple_char(i, d);
    } else if (route == Route::Fpoly) {
        c = fpoly_char(beta, d);
    } else {
        int t = d.trivalent();
        if (t >= 0 && !d.in_i0(t))
            throw Error(Err::OutOfProvedScope, "phiJ route needs the trivalent node in I0");
        if (multiplicity_free(beta)) {
            c = phi_route(beta, d);
            auto nu = nu_sequence_char(beta, d);
            if (c.terms != nu.terms)
                throw Error(Err::MismatchReport, "phi_J route and 0/1 sequences disagree for " + root_str(beta));
        } else if (d.type == 'D' && d.n == 4 && beta == RootVector{1, 2, 1, 1}) {
            c = d4_highest_char(d);
        } else {
            throw Error(Err::OutOfProvedScope, "no phiJ formula for " + root_str(beta) + " in " + d.name());
        }
    }
    std::lock_guard<std::mutex> g(mu);
    cache.emplace(key, c);
    return c;
}

namespace {
std::map<RootVector, int> checked_expansion(const C1Label& l, const DynkinData& d) {
    std::map<RootVector, int> ex;
    if (std::all_of(l.gamma.begin(), l.gamma.end(), [](int x) { return x == 0; })) return ex;
    ex = cluster_expansion(l.gamma, c1_atlas(d));
    bool proved = d.type == 'A' || (d.type == 'D' && d.n == 4);
    if (!proved && !(ex.size() == 1 && ex.begin()->second == 1))
        throw Error(Err::OutOfProvedScope, "products of cluster simples are only established in types A and D4");
    return ex;
}
}  // namespace

DecoratedQChar truncated_char_c1(const YMonomial& m, const DynkinData& d, Route route) {
    C1Label l = c1_label(m, d);
    auto ex = checked_expansion(l, d);
    YMonomial fz;
    for (int i = 0; i < d.n; ++i)
        if (l.frozen[i]) fz = fz * frozen_monomial(i, d).pow(l.frozen[i]);
    DecoratedQChar c = DecoratedQChar::unit(fz);
    for (auto& [beta, k] : ex) c = multiply(c, power(truncated_root_char(beta, d, route), k));
    if (c.hw != m) throw Error(Err::MismatchReport, "highest monomial " + c.hw.str() + " differs from " + m.str());
    return c;
}

std::vector<std::pair<YMonomial, Mult>> decompose_product(const std::vector<DecoratedQChar>& factors,
                                                           const DynkinData& d, const SimpleTable& table) {
    DecoratedQChar prod = DecoratedQChar::unit(YMonomial());
    for (auto& f : factors) prod = multiply(prod, f);
    std::map<AVector, Mult> rem = prod.terms;
    std::vector<std::pair<YMonomial, Mult>> out;
    while (!rem.empty()) {
        const AVector* best = nullptr;
        YMonomial best_y;
        for (auto& [a, c] : rem) {
            if (c < 0) throw Error(Err::NegativeRemainder, "coefficient " + std::to_string(c));
            YMonomial y = prod.hw * a_inverse_product(a, d);
            if (!y.dominant()) continue;
            if (!best || a.degree() < best->degree()) {
                best = &a;
                best_y = y;
            }
        }
        if (!best) throw Error(Err::NegativeRemainder, "remainder without dominant monomial");
        AVector shift = *best;
        Mult c = rem.at(shift);
        DecoratedQChar s = table(best_y);
        if (s.hw != best_y) throw Error(Err::MismatchReport, "table returned the wrong simple for " + best_y.str());
        for (auto& [a, mult] : s.terms) {
            AVector b = shift * a;
            Mult v = checked_add(rem[b], -checked_mul(c, mult));
            if (v < 0)
                throw Error(Err::NegativeRemainder,
                            "subtracting L(" + best_y.str() + ") leaves a negative coefficient");
            if (v == 0)
                rem.erase(b);
            else
                rem[b] = v;
        }
        out.push_back({best_y, c});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<YMonomial, Mult>> decompose_product(const std::vector<DecoratedQChar>& factors,
                                                           const DynkinData& d, Route route) {
    return decompose_product(factors, d, [&](const YMonomial& m) { return truncated_char_c1(m, d, route); });
}

mpz_class frozen_dimension(int i, const DynkinData& d) { return kr_qchar(i, 2, d.xi[i], d).dimension(); }

mpz_class c1_root_dimension(const RootVector& beta, const DynkinData& d) {
    const Atlas& A = c1_atlas(d);
    std::map<VarId, mpz_class> pt;
    for (int i = 0; i < d.n; ++i) {
        YMonomial y = y_beta(simple_root(d.n, i, -1), d);
        pt[A.initial[i]] = kr_qchar(y.entries()[0].first.i, 1, y.entries()[0].first.r, d).dimension();
        pt[A.initial[d.n + i]] = frozen_dimension(i, d);
    }
    return evaluate_integer(x_of(A, beta), pt);
}

mpz_class c1_dimension(const YMonomial& m, const DynkinData& d) {
    C1Label l = c1_label(m, d);
    mpz_class r = 1;
    for (int i = 0; i < d.n; ++i)
        for (int k = 0; k < l.frozen[i]; ++k) r *= frozen_dimension(i, d);
    for (auto& [beta, k] : checked_expansion(l, d))
        for (int t = 0; t < k; ++t) r *= c1_root_dimension(beta, d);
    return r;
}

bool fm_certified(const YMonomial& m, const DynkinData& d, Route route) {
    return truncate(frenkel_mukhin(m, d), TruncMode::Le2).terms == truncated_char_c1(m, d, route).terms;
}

}  // namespace clq
