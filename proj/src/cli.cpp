#include "clq/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "clq/api.hpp"
#include "clq/c1chars.hpp"
#include "clq/fpoly.hpp"
#include "clq/grass.hpp"
#include "clq/levels.hpp"
#include "clq/verify.hpp"

namespace clq {

using nlohmann::json;

Limits parse_limits(const std::string& text, Limits base) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw Error(Err::ParseError, "limit '" + item + "' needs key=value");
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        std::size_t v = 0;
        try {
            std::size_t used = 0;
            long long x = std::stoll(val, &used);
            if (used != val.size() || x <= 0) throw std::invalid_argument(val);
            v = static_cast<std::size_t>(x);
        } catch (const std::exception&) {
            throw Error(Err::ParseError, "limit value '" + val + "' is not a positive integer");
        }
        if (key == "seeds")
            base.max_seeds = v;
        else if (key == "terms")
            base.max_terms = v;
        else
            throw Error(Err::ParseError, "unknown limit '" + key + "'");
    }
    return base;
}

Limits default_limits() {
    const char* env = std::getenv("CLQ_LIMITS");
    return env ? parse_limits(env) : Limits{};
}

namespace {

struct VerifyFailed {};

struct Ctx {
    std::ostream& out;
    bool json_out = false;
    std::string limits;
    Limits lim;
};

struct TypeOpts {
    std::string type = "A3";
    std::string i0;
    int ell = 1;
};

void add_type(CLI::App* c, TypeOpts& t, bool with_ell = false) {
    c->add_option("--type,-t", t.type, "Dynkin type, e.g. A3, D4, E6")->capture_default_str();
    c->add_option("--I0", t.i0, "vertices of I0, 1-based, comma separated");
    if (with_ell) c->add_option("--ell,-l", t.ell, "level")->capture_default_str()->check(CLI::Range(1, 10));
}

std::vector<int> int_list(const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ',')) {
        if (t.empty()) continue;
        try {
            v.push_back(std::stoi(t));
        } catch (...) {
            throw Error(Err::ParseError, "bad integer '" + t + "'");
        }
    }
    return v;
}

DynkinData dynkin(const TypeOpts& t) {
    DynkinData d = make_dynkin(t.type);
    if (!t.i0.empty()) d = with_i0(d, int_list(t.i0));
    return d;
}

Seed load_seed(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Err::InvalidArgument, "cannot open seed file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(Err::ParseError, std::string("seed file: ") + e.what());
    }
    return Seed::from_json(j);
}

Seed start_seed(const TypeOpts& t, const std::string& seed_file) {
    if (!seed_file.empty()) return load_seed(seed_file);
    DynkinData d = dynkin(t);
    return t.ell == 1 ? build_c1_seed(d) : build_gamma_ell_seed(d, t.ell).seed;
}

void print_matrix(std::ostream& out, const ExchangeMatrix& B) {
    for (int r = 0; r < B.rows; ++r) {
        out << (r < B.cols ? "  " : "f ");
        for (int c = 0; c < B.cols; ++c) out << (B.b[r][c] >= 0 ? "  " : " ") << B.b[r][c];
        out << "\n";
    }
}

void emit(Ctx& ctx, const json& j, const std::function<void()>& text) {
    if (ctx.json_out)
        ctx.out << j.dump(2) << "\n";
    else
        text();
}

std::string product_text(const Seed& s, const std::vector<std::pair<int, int>>& f) {
    LaurentPoly p(1);
    for (auto [row, e] : f) p *= s.vars[row].pow(e);
    return p.str();
}

// ---- subcommands

void cmd_mutate(Ctx& ctx, const TypeOpts& t, const std::string& seed_file, const std::string& seq) {
    Seed s = start_seed(t, seed_file);
    json fired = json::array();
    for (int k : int_list(seq)) {
        if (k < 1 || k > s.B.rows) throw Error(Err::OutOfRange, "direction " + std::to_string(k) + " out of range");
        if (k > s.B.cols) throw Error(Err::FrozenDirection, "direction " + std::to_string(k) + " is frozen");
        Exchange ex;
        Seed next = mutate_seed(s, k - 1, &ex);
        fired.push_back({{"k", k},
                         {"old", ex.old_var.str()},
                         {"new", ex.new_var.str()},
                         {"plus", product_text(s, ex.plus)},
                         {"minus", product_text(s, ex.minus)}});
        s = std::move(next);
    }
    emit(ctx, {{"seed", s.to_json()}, {"exchanges", fired}}, [&] {
        for (auto& e : fired)
            ctx.out << "mutate " << e["k"].get<int>() << ": (" << e["old"].get<std::string>() << ") * ("
                    << e["new"].get<std::string>() << ") = " << e["plus"].get<std::string>() << " + "
                    << e["minus"].get<std::string>() << "\n";
        ctx.out << "matrix:\n";
        print_matrix(ctx.out, s.B);
        ctx.out << "variables:\n";
        for (int r = 0; r < s.B.rows; ++r)
            ctx.out << (r < s.B.cols ? "  x" : "  f") << (r < s.B.cols ? r + 1 : r - s.B.cols + 1) << " = "
                    << s.vars[r].str() << "\n";
    });
}

void cmd_enumerate(Ctx& ctx, const TypeOpts& t, const std::string& seed_file, bool jsonl) {
    Seed s0 = start_seed(t, seed_file);
    Atlas A = enumerate_atlas(s0, ctx.lim);
    bool labelled = seed_file.empty() && t.ell == 1;
    if (labelled) label_by_denominator(A, dynkin(t));
    if (jsonl) {
        for (std::size_t c = 0; c < A.clusters.size(); ++c) {
            json vars = json::array();
            for (int v : A.clusters[c]) {
                json e = {{"index", v}, {"poly", A.variables[v].str()}};
                if (labelled) e["label"] = root_str(A.labels[v]);
                vars.push_back(e);
            }
            ctx.out << json{{"cluster", c}, {"variables", vars}}.dump() << "\n";
        }
        return;
    }
    json j = {{"rank", A.rank},
              {"clusters", A.clusters.size()},
              {"variables", A.variables.size()},
              {"frozen", A.frozen.size()},
              {"edges", A.edges.size()}};
    if (seed_file.empty()) {
        j["type"] = dynkin(t).name();
        j["I0"] = dynkin(t).i0();
        j["ell"] = t.ell;
    }
    if (labelled) {
        json labels = json::array();
        for (auto& l : A.labels) labels.push_back(root_str(l));
        j["labels"] = labels;
    }
    emit(ctx, j, [&] {
        ctx.out << "clusters: " << A.clusters.size() << "\nvariables: " << A.variables.size()
                << "\nfrozen: " << A.frozen.size() << "\n";
        if (labelled) {
            ctx.out << "labels:";
            for (auto& l : A.labels) ctx.out << " " << root_str(l);
            ctx.out << "\n";
        }
    });
}

void cmd_fpoly(Ctx& ctx, const TypeOpts& t, const std::string& root, const std::string& route) {
    DynkinData d = dynkin(t);
    RootVector a = parse_root(root, d.n);
    std::vector<std::string> routes;
    if (route == "both")
        routes = {"principal", "combinatorial"};
    else if (route == "all")
        routes = {"principal", "combinatorial", "geometric"};
    else
        routes = {route};
    json polys = json::object();
    std::vector<FPoly> got;
    for (auto& r : routes) {
        FPoly F;
        if (r == "principal")
            F = f_poly_principal(a, d, ctx.lim);
        else if (r == "combinatorial")
            F = f_poly_combinatorial(a, d);
        else if (r == "geometric")
            F = geometric_fpoly(a, d);
        else
            throw Error(Err::InvalidArgument, "unknown route '" + r + "'");
        polys[r] = F.str();
        got.push_back(F);
    }
    bool match = std::all_of(got.begin(), got.end(), [&](const FPoly& F) { return F == got.front(); });
    json j = {{"type", d.name()}, {"root", root_str(a)}, {"polynomials", polys},
              {"terms", got.front().terms().size()}, {"value_at_one", got.front().coefficient_sum().get_str()}};
    if (got.size() > 1) j["match"] = match;
    emit(ctx, j, [&] {
        for (auto& r : routes) ctx.out << r << ": " << polys[r].get<std::string>() << "\n";
        ctx.out << "terms: " << got.front().terms().size() << "\n";
        if (got.size() > 1) ctx.out << "verdict: " << (match ? "match" : "MISMATCH") << "\n";
    });
    if (!match) throw VerifyFailed{};
}

void print_char(Ctx& ctx, const DecoratedQChar& c, const DynkinData& d) {
    for (auto& [a, m] : c.terms)
        ctx.out << "  " << (m == 1 ? "" : std::to_string(m) + " ") << (c.hw * a_inverse_product(a, d)).str()
                << "\n";
    ctx.out << "monomials: " << c.size() << "  dimension: " << c.dimension() << "\n";
}

void cmd_qchar_fm(Ctx& ctx, const TypeOpts& t, const std::string& mono, int trunc) {
    DynkinData d = dynkin(t);
    YMonomial m = parse_ymonomial(mono);
    FMOptions opt;
    opt.max_monomials = ctx.lim.max_terms;
    if (trunc > 0) opt.prune_above = trunc;
    DecoratedQChar c = frenkel_mukhin(m, d, opt);
    if (trunc > 0) c = truncate(c, TruncMode::Le2, trunc);
    emit(ctx, c.to_json(d), [&] { print_char(ctx, c, d); });
}

void cmd_qchar_truncated(Ctx& ctx, const TypeOpts& t, const std::string& root, const std::string& mono,
                         const std::string& route) {
    DynkinData d = dynkin(t);
    if (root.empty() == mono.empty()) throw Error(Err::InvalidArgument, "give exactly one of --root and --mono");
    YMonomial m = root.empty() ? parse_ymonomial(mono) : y_beta(parse_root(root, d.n), d);
    std::vector<Route> rs;
    if (route == "both")
        rs = {Route::Fpoly, Route::PhiJ};
    else
        rs = {parse_route(route)};
    std::vector<DecoratedQChar> cs;
    for (Route r : rs) cs.push_back(truncated_char_c1(m, d, r));
    bool match = cs.size() < 2 || cs[0].terms == cs[1].terms;
    json j = cs[0].to_json(d);
    if (cs.size() > 1) j["match"] = match;
    emit(ctx, j, [&] {
        print_char(ctx, cs[0], d);
        if (cs.size() > 1) ctx.out << "verdict: " << (match ? "match" : "MISMATCH") << "\n";
    });
    if (!match) throw VerifyFailed{};
}

void cmd_qchar_decompose(Ctx& ctx, const TypeOpts& t, const std::vector<std::string>& monos) {
    DynkinData d = dynkin(t);
    std::vector<DecoratedQChar> fs;
    for (auto& s : monos) fs.push_back(truncated_char_c1(parse_ymonomial(s), d));
    auto parts = decompose_product(fs, d);
    json arr = json::array();
    for (auto& [m, c] : parts)
        arr.push_back({{"module", m.str()}, {"multiplicity", std::to_string(c)}, {"dimension", c1_dimension(m, d).get_str()}});
    emit(ctx, {{"constituents", arr}, {"simple", parts.size() == 1 && parts[0].second == 1}}, [&] {
        for (auto& [m, c] : parts) ctx.out << "  " << c << " x L(" << m.str() << ")\n";
        ctx.out << (parts.size() == 1 && parts[0].second == 1 ? "simple" : "not simple") << "\n";
    });
}

void cmd_qchar_dim(Ctx& ctx, const TypeOpts& t, const std::string& mono) {
    DynkinData d = dynkin(t);
    YMonomial m = parse_ymonomial(mono);
    mpz_class dim = c1_dimension(m, d);
    emit(ctx, {{"module", m.str()}, {"dimension", dim.get_str()}}, [&] { ctx.out << dim.get_str() << "\n"; });
}

void cmd_grass_euler(Ctx& ctx, const TypeOpts& t, const std::string& root, const std::string& mono) {
    DynkinData d = dynkin(t);
    if (root.empty() == mono.empty()) throw Error(Err::InvalidArgument, "give exactly one of --root and --mono");
    RepFamily fam;
    if (!root.empty()) {
        RootVector a = parse_root(root, d.n);
        fam = [a, d](int p) { return indecomposable_rep(a, d, p); };
    } else {
        YMonomial m = parse_ymonomial(mono);
        fam = [m, d](int p) { return generic_rep(m, d, p); };
    }
    auto table = grassmannian_table(fam, d);
    json arr = json::array();
    for (auto& g : table) arr.push_back(g.to_json());
    emit(ctx, {{"type", d.name()}, {"entries", arr}, {"nonempty", table.size()}}, [&] {
        for (auto& g : table) {
            ctx.out << "  gamma (";
            for (int i = 0; i < d.n; ++i) ctx.out << (i ? "," : "") << g.gamma[i];
            ctx.out << ")  chi = " << g.euler.get_str() << "\n";
        }
        ctx.out << "nonempty: " << table.size() << "\n";
    });
}

void cmd_levels_seed(Ctx& ctx, const TypeOpts& t) {
    LevelSeed s = build_gamma_ell_seed(dynkin(t), t.ell);
    emit(ctx, s.to_json(), [&] {
        print_matrix(ctx.out, s.seed.B);
        for (std::size_t r = 0; r < s.vertex.size(); ++r) {
            auto [i, k] = s.vertex[r];
            ctx.out << "  (" << i + 1 << "," << k << ")  W^(" << i + 1 << ")_{" << k << ","
                    << r_value(s.d, i, k, s.ell) << "}  " << s.kr[r].str() << "\n";
        }
    });
}

void cmd_levels_catalog(Ctx& ctx, const TypeOpts& t) {
    LevelCatalog cat = level_catalog(dynkin(t), t.ell, ctx.lim);
    emit(ctx, cat.to_json(), [&] {
        ctx.out << "variables: " << cat.variables << "  clusters: " << cat.clusters << "\n";
        for (auto& e : cat.entries)
            ctx.out << "  " << (e.frozen ? "frozen " : "") << "L(" << e.module.str() << ")  dim " << e.dimension.get_str()
                    << "\n";
    });
}

void cmd_levels_tsystem(Ctx& ctx, const TypeOpts& t) {
    auto checks = initial_exchange_checks(dynkin(t), t.ell);
    json arr = json::array();
    bool ok = true;
    for (auto& c : checks) {
        arr.push_back({{"vertex", {c.i + 1, c.k}}, {"mutated", c.mutated.str()}, {"ok", c.ok}});
        ok = ok && c.ok;
    }
    emit(ctx, {{"checks", arr}, {"ok", ok}}, [&] {
        for (auto& c : checks)
            ctx.out << "  (" << c.i + 1 << "," << c.k << ") -> L(" << c.mutated.str() << ")  " << (c.ok ? "ok" : "FAIL")
                    << "\n";
    });
    if (!ok) throw VerifyFailed{};
}

void cmd_levels_grass36(Ctx& ctx) {
    GrassReport r = grassmannian_check();
    emit(ctx, r.to_json(), [&] {
        ctx.out << "frozen minors: " << (r.frozen_ok ? "ok" : "FAIL") << "\n";
        ctx.out << "[2,3,6][1,4,5]-1 = " << r.closing_value.get_str() << "\n";
        for (auto& g : r.identities)
            ctx.out << "  L(" << g.module << ") = " << g.expression << " = " << g.value.get_str()
                    << (g.value == g.expected ? "" : "  MISMATCH") << "\n";
    });
    if (!r.ok()) throw VerifyFailed{};
}

void cmd_levels_sl2(Ctx& ctx, int ell) {
    json arr = json::array();
    for (int k = 1; k <= ell; ++k)
        for (int s = 0; s <= ell - k + 1; ++s) {
            Diagonal dg = sl2_diagonal_model(k, s, ell);
            arr.push_back({{"k", k}, {"spectral", 2 * s}, {"diagonal", {dg.a, dg.b}}});
        }
    emit(ctx, {{"ell", ell}, {"diagonals", arr}}, [&] {
        for (auto& e : arr)
            ctx.out << "  W_{" << e["k"] << "," << e["spectral"] << "} -> [" << e["diagonal"][0] << ","
                    << e["diagonal"][1] << "]\n";
    });
}

void cmd_verify(Ctx& ctx, const std::string& what, const TypeOpts& t, const std::string& gamma, int samples,
                std::uint64_t seed) {
    DynkinData d = dynkin(t);
    VerificationReport rep;
    if (what == "all")
        rep = verify_all(d, samples, seed);
    else if (what == "conjecture")
        rep = verify_conjecture_c1(d);
    else if (what == "periodic")
        rep = periodic_tsystem_verify(d);
    else if (what == "expansions")
        rep = expansion_uniqueness(d, samples, -3, 3, seed);
    else if (what == "reconstruction")
        rep = reconstruction_check(d);
    else if (what == "two-restricted") {
        if (gamma.empty()) throw Error(Err::InvalidArgument, "two-restricted needs --gamma");
        rep = two_restricted_check(parse_root(gamma, d.n), d);
    } else
        throw Error(Err::InvalidArgument, "unknown verification '" + what + "'");
    emit(ctx, rep.to_json(), [&] {
        for (auto& c : rep.checks) {
            ctx.out << status_name(c.status) << "  " << c.id;
            ctx.out.precision(3);
            ctx.out << "  (" << c.seconds << " s)";
            if (c.status != CheckStatus::Pass) ctx.out << "  " << c.witness.dump();
            ctx.out << "\n";
        }
        ctx.out << (rep.passed() ? "all checks passed" : "verification FAILED") << "\n";
    });
    if (!rep.passed()) throw VerifyFailed{};
}

int cmd_serve(Ctx& ctx, const std::string& host, int port, const std::string& journal, const std::string& static_dir,
              std::ostream& err) {
    ApiServer srv(ctx.lim, journal);
    std::atomic<bool> done{false};
    std::thread announce([&] {
        while (!srv.running() && !done) std::this_thread::sleep_for(std::chrono::milliseconds(10));
        if (srv.running()) ctx.out << "listening on " << host << ":" << srv.bound_port() << std::endl;
    });
    bool ok = srv.listen(host, port, static_dir);
    done = true;
    announce.join();
    if (!ok) {
        err << "error: cannot listen on " << host << ":" << port << "\n";
        return ExitUsage;
    }
    return ExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact cluster algebra and q-character engine", "clq"};
    app.require_subcommand(1);
    app.fallthrough();
    Ctx ctx{out, false, "", {}};
    app.add_flag("--json", ctx.json_out, "machine-readable output");
    app.add_option("--limits", ctx.limits, "seeds=N,terms=N");

    std::function<int()> action;

    TypeOpts mt;
    std::string m_seed, m_seq;
    auto* mutate = app.add_subcommand("mutate", "mutate a seed along a sequence of directions");
    add_type(mutate, mt, true);
    mutate->add_option("--seed", m_seed, "JSON seed file");
    mutate->add_option("--seq,-k", m_seq, "1-based directions, comma separated")->required();
    mutate->callback([&] { action = [&] { cmd_mutate(ctx, mt, m_seed, m_seq); return 0; }; });

    TypeOpts et;
    std::string e_seed;
    bool e_jsonl = false;
    auto* en = app.add_subcommand("enumerate", "enumerate the clusters of a finite-type seed");
    add_type(en, et, true);
    en->add_option("--seed", e_seed, "JSON seed file");
    en->add_flag("--jsonl", e_jsonl, "dump the atlas as JSON lines");
    en->callback([&] { action = [&] { cmd_enumerate(ctx, et, e_seed, e_jsonl); return 0; }; });

    TypeOpts ft;
    std::string f_root, f_route = "combinatorial";
    auto* fp = app.add_subcommand("fpoly", "F-polynomial of a positive root");
    add_type(fp, ft);
    fp->add_option("--root,-r", f_root, "root coordinates, e.g. 1,2,1,1")->required();
    fp->add_option("--route", f_route, "principal | combinatorial | geometric | both | all")
        ->check(CLI::IsMember({"principal", "combinatorial", "geometric", "both", "all"}))
        ->capture_default_str();
    fp->callback([&] { action = [&] { cmd_fpoly(ctx, ft, f_root, f_route); return 0; }; });

    auto* qc = app.add_subcommand("qchar", "q-characters");
    qc->require_subcommand(1);
    qc->fallthrough();
    TypeOpts qt;
    std::string q_mono, q_root, q_route = "fpoly";
    std::vector<std::string> q_monos;
    int q_trunc = 0;
    auto* qfm = qc->add_subcommand("fm", "Frenkel-Mukhin algorithm");
    add_type(qfm, qt);
    qfm->add_option("--mono,-m", q_mono, "dominant monomial, e.g. \"Y[1,0]^2 Y[2,3]\"")->required();
    qfm->add_option("--truncate", q_trunc, "keep A-inverse factors with spectral parameter <= N");
    qfm->callback([&] { action = [&] { cmd_qchar_fm(ctx, qt, q_mono, q_trunc); return 0; }; });
    auto* qtr = qc->add_subcommand("truncated", "truncated character of a simple object of C1");
    add_type(qtr, qt);
    qtr->add_option("--root,-r", q_root, "almost positive root");
    qtr->add_option("--mono,-m", q_mono, "C1 monomial");
    qtr->add_option("--route", q_route, "fpoly | phiJ | both")
        ->check(CLI::IsMember({"fpoly", "phiJ", "both"}))
        ->capture_default_str();
    qtr->callback([&] { action = [&] { cmd_qchar_truncated(ctx, qt, q_root, q_mono, q_route); return 0; }; });
    auto* qdc = qc->add_subcommand("decompose", "simple constituents of a tensor product in C1");
    add_type(qdc, qt);
    qdc->add_option("--mono,-m", q_monos, "highest monomials of the factors")->required();
    qdc->callback([&] { action = [&] { cmd_qchar_decompose(ctx, qt, q_monos); return 0; }; });
    auto* qdm = qc->add_subcommand("dim", "dimension of a simple object of C1");
    add_type(qdm, qt);
    qdm->add_option("--mono,-m", q_mono, "C1 monomial")->required();
    qdm->callback([&] { action = [&] { cmd_qchar_dim(ctx, qt, q_mono); return 0; }; });

    auto* gr = app.add_subcommand("grass", "quiver Grassmannians");
    gr->require_subcommand(1);
    gr->fallthrough();
    TypeOpts gt;
    std::string g_root, g_mono;
    auto* geu = gr->add_subcommand("euler", "Euler characteristics of all nonempty quiver Grassmannians");
    add_type(geu, gt);
    geu->add_option("--root,-r", g_root, "indecomposable of this dimension vector");
    geu->add_option("--mono,-m", g_mono, "generic representation attached to a C1 monomial");
    geu->callback([&] { action = [&] { cmd_grass_euler(ctx, gt, g_root, g_mono); return 0; }; });

    auto* lv = app.add_subcommand("levels", "general level");
    lv->require_subcommand(1);
    lv->fallthrough();
    TypeOpts lt;
    auto* lseed = lv->add_subcommand("seed", "initial seed of the level-ell cluster algebra");
    add_type(lseed, lt, true);
    lseed->callback([&] { action = [&] { cmd_levels_seed(ctx, lt); return 0; }; });
    auto* lcat = lv->add_subcommand("catalog", "cluster variables with modules and dimensions");
    add_type(lcat, lt, true);
    lcat->callback([&] { action = [&] { cmd_levels_catalog(ctx, lt); return 0; }; });
    auto* lts = lv->add_subcommand("tsystem", "initial exchange relations as T-system relations");
    add_type(lts, lt, true);
    lts->callback([&] { action = [&] { cmd_levels_tsystem(ctx, lt); return 0; }; });
    auto* lg = lv->add_subcommand("grass36", "Pluecker coordinate check on Gr(3,6)");
    lg->callback([&] { action = [&] { cmd_levels_grass36(ctx); return 0; }; });
    int l_ell = 3;
    auto* lsl = lv->add_subcommand("sl2", "diagonal model for sl2");
    lsl->add_option("--ell,-l", l_ell, "level")->capture_default_str()->check(CLI::Range(1, 50));
    lsl->callback([&] { action = [&] { cmd_levels_sl2(ctx, l_ell); return 0; }; });

    TypeOpts vt;
    std::string v_what, v_gamma;
    int v_samples = 1000;
    std::uint64_t v_seed = 1;
    auto* vf = app.add_subcommand("verify", "verification pipelines");
    vf->add_option("what", v_what, "all | conjecture | periodic | expansions | reconstruction | two-restricted")
        ->required()
        ->check(CLI::IsMember({"all", "conjecture", "periodic", "expansions", "reconstruction", "two-restricted"}));
    add_type(vf, vt);
    vf->add_option("--gamma", v_gamma, "element of the root lattice for two-restricted");
    vf->add_option("--samples", v_samples, "random samples for expansions")->capture_default_str();
    vf->add_option("--rng-seed", v_seed, "random seed")->capture_default_str();
    vf->callback([&] { action = [&] { cmd_verify(ctx, v_what, vt, v_gamma, v_samples, v_seed); return 0; }; });

    std::string s_host = "127.0.0.1", s_journal, s_static;
    int s_port = 8080;
    auto* sv = app.add_subcommand("serve", "JSON API server");
    sv->add_option("--host", s_host)->capture_default_str();
    sv->add_option("--port,-p", s_port, "0 picks a free port")->capture_default_str();
    sv->add_option("--journal", s_journal, "append-only session journal");
    sv->add_option("--static", s_static, "directory served under /ui");
    sv->callback([&] { action = [&] { return cmd_serve(ctx, s_host, s_port, s_journal, s_static, err); }; });

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return ExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return ExitUsage;
    }
    try {
        ctx.lim = parse_limits(ctx.limits, default_limits());
        return action ? action() : ExitUsage;
    } catch (const VerifyFailed&) {
        return ExitVerifyFail;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_limit() ? ExitLimit : ExitUsage;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace clq
