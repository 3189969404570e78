#include <random>
#include <set>

#include "doctest.h"
#include "clq/cluster.hpp"

using namespace clq;

namespace {
LaurentPoly P(const std::string& s) { return LaurentPoly::parse(s); }

ExchangeMatrix mat(std::vector<std::vector<int>> b, int cols) {
    ExchangeMatrix B;
    B.rows = static_cast<int>(b.size());
    B.cols = cols;
    B.b = std::move(b);
    return B;
}

ExchangeMatrix random_skew(std::mt19937& rng, int n, int fr) {
    std::uniform_int_distribution<int> e(-2, 2);
    ExchangeMatrix B = mat(std::vector<std::vector<int>>(n + fr, std::vector<int>(n, 0)), n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            B.b[i][j] = e(rng);
            B.b[j][i] = -B.b[i][j];
        }
    for (int i = n; i < n + fr; ++i)
        for (int j = 0; j < n; ++j) B.b[i][j] = e(rng);
    return B;
}
}  // namespace

TEST_SUITE("cluster") {
    TEST_CASE("A3 initial matrix and z-matrix") {
        auto d = make_dynkin("A3");
        auto s = build_c1_seed(d);
        CHECK(s.B.b == std::vector<std::vector<int>>{{0, -1, 0}, {1, 0, 1}, {0, -1, 0}, {-1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
        auto z = mutate_matrix(s.B, 1);
        CHECK(z.b == std::vector<std::vector<int>>{{0, 1, 0}, {-1, 0, -1}, {0, 1, 0}, {-1, 0, 0}, {1, -1, 1}, {0, 0, -1}});
        CHECK(z == c1_z_matrix(d));
        for (auto nm : {"A2", "A3", "A4", "A5", "D4", "D5", "E6"}) {
            auto dd = make_dynkin(nm);
            CHECK(c1_z_matrix(dd) == bz_table(dd));
            CHECK(build_c1_seed(dd).B.principal_skew_symmetric());
        }
        CHECK_THROWS_AS(mutate_matrix(s.B, 3), Error);
    }

    TEST_CASE("mutation is an involution") {
        std::mt19937 rng(42);
        std::uniform_int_distribution<int> nn(1, 5), ff(0, 3);
        for (int it = 0; it < 10000; ++it) {
            int n = nn(rng);
            auto B = random_skew(rng, n, ff(rng));
            int k = static_cast<int>(rng() % n);
            CHECK(mutate_matrix(mutate_matrix(B, k), k) == B);
        }
        auto s = build_c1_seed(make_dynkin("A3"));
        for (int k = 0; k < 3; ++k) {
            auto t = mutate_seed(mutate_seed(s, k), k);
            CHECK(t.vars == s.vars);
            CHECK(t.B == s.B);
        }
    }

    TEST_CASE("A3 atlas") {
        auto d = make_dynkin("A3");
        const Atlas& A = c1_atlas(d);
        CHECK(A.clusters.size() == 14);
        CHECK(A.variables.size() == 9);
        CHECK(A.frozen.size() == 3);
        CHECK(x_of(A, {1, 0, 0}) == P("(x2 + f1)*x1^-1"));
        CHECK(x_of(A, {1, 0, 0}) == P("x2*x1^-1 + f1*x1^-1"));
        CHECK(x_of(A, {0, 1, 0}) == P("x1*x3*x2^-1 + f2*x2^-1"));
        CHECK(x_of(A, {0, 0, 1}) == P("x2*x3^-1 + f3*x3^-1"));
        CHECK(x_of(A, {1, 1, 0}) == divide_exact(P("f2*x2 + f1*x1*x3 + f1*f2"), P("x1*x2")));
        CHECK(x_of(A, {0, 1, 1}) == divide_exact(P("f2*x2 + f3*x1*x3 + f2*f3"), P("x2*x3")));
        CHECK(x_of(A, {1, 1, 1}) ==
              divide_exact(P("f2*x2^2 + f1*f3*x1*x3 + f1*f2*x2 + f2*f3*x2 + f1*f2*f3"), P("x1*x2*x3")));

        // generator identities
        auto X = [&](RootVector r) { return x_of(A, r); };
        CHECK(P("f1") == X({-1, 0, 0}) * X({1, 0, 0}) - X({0, -1, 0}));
        CHECK(P("f2") == X({0, -1, 0}) * X({0, 1, 0}) - X({-1, 0, 0}) * X({0, 0, -1}));
        CHECK(P("f3") == X({0, 0, -1}) * X({0, 0, 1}) - X({0, -1, 0}));
        CHECK(X({1, 1, 0}) == X({1, 0, 0}) * X({0, 1, 0}) - X({0, 0, -1}));
        CHECK(X({0, 1, 1}) == X({0, 1, 0}) * X({0, 0, 1}) - X({-1, 0, 0}));
        CHECK(X({1, 1, 1}) == X({1, 0, 0}) * X({0, 1, 0}) * X({0, 0, 1}) - X({-1, 0, 0}) * X({1, 0, 0}) -
                                  X({0, 0, -1}) * X({0, 0, 1}) + X({0, -1, 0}));

        std::set<std::set<RootVector>> expected = {
            {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}, {{1, 0, 0}, {0, -1, 0}, {0, 0, -1}},
            {{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}},  {{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}},
            {{1, 0, 0}, {0, -1, 0}, {0, 0, 1}},   {{-1, 0, 0}, {0, 1, 0}, {0, 1, 1}},
            {{-1, 0, 0}, {0, 0, 1}, {0, 1, 1}},   {{0, 0, -1}, {0, 1, 0}, {1, 1, 0}},
            {{0, 0, -1}, {1, 0, 0}, {1, 1, 0}},   {{1, 1, 0}, {0, 1, 0}, {0, 1, 1}},
            {{1, 0, 0}, {0, 0, 1}, {1, 1, 1}},    {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}},
            {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}},    {{1, 1, 0}, {0, 1, 1}, {1, 1, 1}}};
        std::set<std::set<RootVector>> got;
        for (auto& c : A.clusters) {
            std::set<RootVector> s;
            for (int v : c) s.insert(A.labels[v]);
            got.insert(s);
        }
        CHECK(got == expected);
    }

    TEST_CASE("atlas sizes") {
        CHECK(c1_atlas(make_dynkin("A2")).clusters.size() == 5);
        CHECK(c1_atlas(make_dynkin("A4")).clusters.size() == 42);
        CHECK(c1_atlas(make_dynkin("D4")).clusters.size() == 50);
        CHECK(c1_atlas(make_dynkin("D4")).variables.size() == 16);
        // every cluster has n neighbours, edges come in pairs
        const Atlas& A = c1_atlas(make_dynkin("D4"));
        CHECK(A.edges.size() == 50 * 4);
        Limits lim;
        lim.max_seeds = 10;
        CHECK_THROWS_AS(enumerate_atlas(build_c1_seed(make_dynkin("A3")), lim), Error);
    }

    TEST_CASE("A2 cluster count by a numeric recurrence") {
        // coefficient-free A2: x_{k+1} x_{k-1} = x_k + 1, period 5
        std::set<std::pair<mpq_class, mpq_class>> seen;
        mpq_class a = 2, b = 7;
        for (int k = 0; k < 20; ++k) {
            seen.insert({std::min(a, b), std::max(a, b)});
            mpq_class c = (b + 1) / a;
            a = b;
            b = c;
        }
        CHECK(seen.size() == 5);
    }

    TEST_CASE("positivity and Laurent phenomenon") {
        for (auto nm : {"A3", "A4", "D4"}) {
            const Atlas& A = c1_atlas(make_dynkin(nm));
            for (auto& v : A.variables) CHECK(v.all_coefficients_positive());
        }
    }

    TEST_CASE("compatibility") {
        auto d = make_dynkin("A3");
        const Atlas& A = c1_atlas(d);
        for (int i = 0; i < 3; ++i) CHECK_FALSE(compatible(simple_root(3, i, -1), simple_root(3, i), A));
        CHECK(compatible({1, 0, 0}, {0, 0, 1}, A));
        CHECK(compatible({1, 1, 0}, {0, 1, 1}, A));
        CHECK_FALSE(compatible({1, 0, 0}, {0, 1, 1}, A));
        CHECK_THROWS_AS(compatible({2, 0, 0}, {1, 0, 0}, A), Error);
    }

    TEST_CASE("cluster expansion") {
        auto d = make_dynkin("A3");
        const Atlas& A = c1_atlas(d);
        auto e = cluster_expansion({2, 2, 1}, A);
        CHECK(e == std::map<RootVector, int>{{{1, 1, 0}, 1}, {{1, 1, 1}, 1}});
        CHECK(cluster_expansion({1, 0, 1}, A) == std::map<RootVector, int>{{{1, 0, 0}, 1}, {{0, 0, 1}, 1}});
        CHECK(cluster_expansion({0, 0, 0}, A).empty());
        CHECK(cluster_expansion({-2, 0, 0}, A) == std::map<RootVector, int>{{{-1, 0, 0}, 2}});
        std::mt19937 rng(1);
        std::uniform_int_distribution<int> c(-3, 3);
        for (auto nm : {"A3", "D4"}) {
            auto dd = make_dynkin(nm);
            const Atlas& AA = c1_atlas(dd);
            for (int it = 0; it < 200; ++it) {
                RootVector g(dd.n);
                for (int& x : g) x = c(rng);
                auto ex = cluster_expansion(g, AA);
                RootVector sum(dd.n, 0);
                std::vector<RootVector> used;
                for (auto& [r, m] : ex) {
                    sum = add(sum, scale(r, m));
                    used.push_back(r);
                }
                CHECK(sum == g);
                for (auto& x : used)
                    for (auto& y : used) CHECK(compatible(x, y, AA));
            }
        }
    }

    TEST_CASE("seed json round trip") {
        auto s = mutate_seed(build_c1_seed(make_dynkin("A3")), 0);
        auto t = Seed::from_json(s.to_json());
        CHECK(t.vars == s.vars);
        CHECK(t.B == s.B);
        CHECK(t.initial == s.initial);
    }
}
