#include <random>

#include "doctest.h"
#include "clq/fpoly.hpp"

using namespace clq;

namespace {
LaurentPoly P(const std::string& s) { return LaurentPoly::parse(s); }

// value of x[tau_- alpha] at the point where z and f take the given values
mpq_class x_value_from_z(const RootVector& alpha, const DynkinData& d, const std::vector<mpz_class>& z,
                         const std::vector<mpz_class>& f) {
    std::map<VarId, mpq_class> pt;
    for (int i = 0; i < d.n; ++i) {
        pt[var("f" + std::to_string(i + 1))] = f[i];
        if (d.in_i0(i)) {
            pt[var("x" + std::to_string(i + 1))] = z[i];
        } else {
            // x[-a_i] x[a_i] = f_i + prod_{j~i} x[-a_j], with x[-a_j] = z_j for j in I0
            mpq_class prod = 1;
            for (int j : d.neighbors(i)) prod *= z[j];
            pt[var("x" + std::to_string(i + 1))] = (f[i] + prod) / mpq_class(z[i]);
        }
    }
    return evaluate_exact(x_of(c1_atlas(d), tau_minus(alpha, d)), pt);
}
}  // namespace

TEST_SUITE("fpoly") {
    TEST_CASE("simple and negative simple roots") {
        for (auto nm : {"A3", "D4"}) {
            auto d = make_dynkin(nm);
            for (int i = 0; i < d.n; ++i) {
                CHECK(f_poly_principal(simple_root(d.n, i), d) == LaurentPoly(1) + LaurentPoly::variable(v_var(i)));
                CHECK(f_poly_principal(simple_root(d.n, i, -1), d) == LaurentPoly(1));
                CHECK(f_poly_combinatorial(simple_root(d.n, i), d) == LaurentPoly(1) + LaurentPoly::variable(v_var(i)));
            }
        }
    }

    TEST_CASE("A3 list") {
        auto d = make_dynkin("A3");
        CHECK(f_poly_principal({1, 1, 0}, d) == P("1 + v1 + v1*v2"));
        CHECK(f_poly_principal({0, 1, 1}, d) == P("1 + v3 + v2*v3"));
        CHECK(f_poly_principal({1, 1, 1}, d) == P("1 + v1 + v3 + v1*v3 + v1*v2*v3"));
        CHECK(f_poly_combinatorial({1, 1, 1}, d) == P("1 + v1 + v3 + v1*v3 + v1*v2*v3"));
    }

    TEST_CASE("D4 highest root") {
        auto d = make_dynkin("D4");
        auto expected = P("1 + 2*v2 + v2^2 + v1*v2 + v2*v3 + v2*v4 + v1*v2^2 + v2^2*v3 + v2^2*v4 + v1*v2^2*v3 + "
                          "v1*v2^2*v4 + v2^2*v3*v4 + v1*v2^2*v3*v4");
        auto F = f_poly_combinatorial({1, 2, 1, 1}, d);
        CHECK(F == expected);
        CHECK(F.size() == 13);
        CHECK(f_poly_principal({1, 2, 1, 1}, d) == expected);
        CHECK_THROWS_AS(f_poly_combinatorial({1, 3, 1, 1}, d), Error);
    }

    TEST_CASE("principal equals combinatorial on 2-restricted roots") {
        for (auto nm : {"A2", "A3", "A4", "A5", "D4", "D5"}) {
            auto d = make_dynkin(nm);
            for (auto& a : positive_roots(d)) {
                if (!two_restricted(a)) continue;
                CAPTURE(root_str(a));
                CHECK(f_poly_principal(a, d) == f_poly_combinatorial(a, d));
            }
        }
    }

    TEST_CASE("maximal monomial, constant term, positivity") {
        for (auto nm : {"A4", "D4", "D5", "E6"}) {
            auto d = make_dynkin(nm);
            for (auto& a : positive_roots(d)) {
                auto F = f_poly_principal(a, d);
                CHECK(F.constant_term() == 1);
                CHECK(F.all_coefficients_positive());
                std::vector<Monomial::Entry> es;
                for (int i = 0; i < d.n; ++i)
                    if (a[i]) es.push_back({v_var(i), a[i]});
                Monomial top = Monomial::from_entries(es);
                CHECK(F.coeff(top) == 1);
                for (auto& [m, c] : F.terms()) CHECK(m.divides(top));
            }
        }
    }

    TEST_CASE("tropical evaluation") {
        auto f1 = var("f1"), f2 = var("f2");
        CHECK(tropical_eval(P("1 + v1"), {Monomial::from_entries({{f1, -1}, {f2, 1}})}) == Monomial::of(f1, -1));
        CHECK(tropical_eval(LaurentPoly(1), {}).is_one());
        // beta > 0: F_alpha|_P(y) = prod_{i in I0} f_i^{-b_i}
        for (auto nm : {"A3", "A4", "D4"}) {
            auto d = make_dynkin(nm);
            auto ys = y_elements(d);
            for (auto& a : positive_roots(d)) {
                auto b = tau_minus(a, d);
                if (height(b) < 0) continue;
                std::vector<Monomial::Entry> es;
                for (int i = 0; i < d.n; ++i)
                    if (d.in_i0(i)) es.push_back({var("f" + std::to_string(i + 1)), -b[i]});
                CHECK(tropical_eval(f_poly_principal(a, d), ys) == Monomial::from_entries(es));
            }
        }
    }

    TEST_CASE("A3 y and yhat") {
        auto d = make_dynkin("A3");
        auto ys = y_elements(d);
        auto yh = yhat_elements(d);
        auto M = [](const std::string& s) { return LaurentPoly::parse(s).terms().begin()->first; };
        CHECK(ys[0] == M("f1^-1*f2"));
        CHECK(ys[1] == M("f2^-1"));
        CHECK(ys[2] == M("f2*f3^-1"));
        CHECK(yh[0] == M("z2^-1*f1^-1*f2"));
        CHECK(yh[1] == M("z1*z3*f2^-1"));
        CHECK(yh[2] == M("z2^-1*f2*f3^-1"));
    }

    TEST_CASE("reconstruction equals enumerated cluster variables") {
        std::mt19937 rng(9);
        std::uniform_int_distribution<int> val(1, 9);
        for (auto nm : {"A3", "A4", "D4"}) {
            auto d = make_dynkin(nm);
            const Atlas& Z = z_atlas(d);
            for (auto& a : almost_positive_roots(d)) {
                CAPTURE(root_str(a));
                auto r = reconstruct_cluster_variable(a, d);
                CHECK(r == x_of(Z, a));
                std::vector<mpz_class> z(d.n), f(d.n);
                std::map<VarId, mpz_class> pt;
                for (int i = 0; i < d.n; ++i) {
                    z[i] = val(rng);
                    f[i] = val(rng);
                    pt[var("z" + std::to_string(i + 1))] = z[i];
                    pt[var("f" + std::to_string(i + 1))] = f[i];
                }
                CHECK(evaluate_exact(r, pt) == x_value_from_z(a, d, z, f));
            }
            for (int i = 0; i < d.n; ++i)
                CHECK(reconstruct_cluster_variable(simple_root(d.n, i, -1), d) ==
                      LaurentPoly::variable("z" + std::to_string(i + 1)));
        }
    }
}
