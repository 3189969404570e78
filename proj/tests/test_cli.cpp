#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "clq/api.hpp"
#include "clq/c1chars.hpp"
#include "clq/cli.hpp"

using namespace clq;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream o, e;
    int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

Run shell(const std::string& cmd) {
    Run r{0, "", ""};
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string bin() {
    const char* b = std::getenv("CLQ_BIN");
    return b ? b : "";
}

ApiResponse req(ApiServer& s, const std::string& m, const std::string& path, const json& body = nullptr,
                std::map<std::string, std::string> q = {}) {
    return s.handle(m, path, q, body.is_null() ? "" : body.dump());
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("limits") {
        Limits l = parse_limits("seeds=10,terms=20");
        CHECK(l.max_seeds == 10);
        CHECK(l.max_terms == 20);
        CHECK(parse_limits("terms=5", l).max_seeds == 10);
        CHECK_THROWS_AS(parse_limits("seeds=0"), Error);
        CHECK_THROWS_AS(parse_limits("depth=3"), Error);
        CHECK_THROWS_AS(parse_limits("seeds"), Error);
    }

    TEST_CASE("subcommands in process") {
        auto r = cli({"enumerate", "--type", "A3", "--ell", "1", "--json"});
        CHECK(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j["clusters"] == 14);
        CHECK(j["variables"] == 9);
        CHECK(j["frozen"] == 3);

        r = cli({"fpoly", "--type", "D4", "--root", "1,2,1,1", "--route", "both", "--json"});
        CHECK(r.code == 0);
        j = json::parse(r.out);
        CHECK(j["match"] == true);
        CHECK(j["terms"] == 13);
        CHECK(j["value_at_one"] == "14");
        r = cli({"fpoly", "--type", "D4", "--root", "1,2,1,1", "--route", "both"});
        CHECK(r.out.find("verdict: match") != std::string::npos);

        r = cli({"verify", "all", "--type", "A2"});
        CHECK(r.code == 0);
        CHECK(r.out.find("all checks passed") != std::string::npos);

        r = cli({"qchar", "fm", "--type", "A2", "--mono", "Y[1,0]*Y[2,3]", "--json"});
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["size"] == 8);
        r = cli({"qchar", "fm", "--type", "A2", "--mono", "Y[1,0]^2 Y[2,3]", "--truncate", "2", "--json"});
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["highest"] == "Y[1,0]^2*Y[2,3]");

        r = cli({"grass", "euler", "--type", "D4", "--root", "1,2,1,1", "--json"});
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["nonempty"] == 13);

        r = cli({"levels", "seed", "--type", "A3", "--ell", "3", "--json"});
        CHECK(r.code == 0);
        r = cli({"levels", "grass36", "--json"});
        CHECK(r.code == 0);
        r = cli({"levels", "catalog", "--type", "A2", "--I0", "1", "--ell", "2", "--json"});
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["clusters"] == 50);
        r = cli({"levels", "tsystem", "--type", "D4", "--ell", "2"});
        CHECK(r.code == 0);

        r = cli({"qchar", "dim", "--type", "A3", "--mono", "Y[1,0]*Y[2,3]*Y[3,0]"});
        CHECK(r.code == 0);
        CHECK(r.out == "70\n");
        r = cli({"qchar", "decompose", "--type", "A3", "-m", "Y[2,1]", "-m", "Y[2,3]", "--json"});
        CHECK(json::parse(r.out)["constituents"].size() == 2);

        r = cli({"mutate", "--type", "A3", "--seq", "2,2", "--json"});
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["seed"] == build_c1_seed(make_dynkin("A3")).to_json());
    }

    TEST_CASE("exit codes") {
        CHECK(cli({}).code == ExitUsage);
        CHECK(cli({"bogus"}).code == ExitUsage);
        CHECK(cli({"fpoly", "--type", "A3"}).code == ExitUsage);
        CHECK(cli({"fpoly", "--type", "A3", "--root", "1,1"}).code == ExitUsage);
        CHECK(cli({"fpoly", "--type", "Q3", "--root", "1,1,1"}).code == ExitUsage);
        auto fr = cli({"mutate", "--type", "A3", "--seq", "4"});
        CHECK(fr.code == ExitUsage);
        CHECK(fr.err.find("FrozenDirection") != std::string::npos);
        CHECK(cli({"--limits", "seeds=100", "enumerate", "--type", "A3", "--ell", "3"}).code == ExitLimit);
        CHECK(cli({"enumerate", "--type", "A3", "--ell", "3", "--limits", "seeds=100"}).code == ExitLimit);
        CHECK(cli({"--limits", "seeds=x", "enumerate"}).code == ExitUsage);
        CHECK(cli({"verify", "nothing"}).code == ExitUsage);
        CHECK(cli({"--help"}).code == ExitOk);
    }

    TEST_CASE("limits from the environment") {
        setenv("CLQ_LIMITS", "seeds=20", 1);
        CHECK(cli({"enumerate", "--type", "D4"}).code == ExitLimit);
        CHECK(cli({"enumerate", "--type", "D4", "--limits", "seeds=1000"}).code == ExitOk);
        unsetenv("CLQ_LIMITS");
        CHECK(cli({"enumerate", "--type", "D4"}).code == ExitOk);
    }

    TEST_CASE("seed files") {
        auto path = std::filesystem::temp_directory_path() / "clq_test_seed.json";
        {
            std::ofstream f(path);
            f << build_c1_seed(make_dynkin("A2")).to_json().dump();
        }
        auto r = cli({"enumerate", "--seed", path.string(), "--json"});
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["clusters"] == 5);
        r = cli({"enumerate", "--seed", path.string(), "--jsonl"});
        CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
        {
            std::ofstream f(path);
            f << "{not json";
        }
        CHECK(cli({"enumerate", "--seed", path.string()}).code == ExitUsage);
        std::filesystem::remove(path);
        CHECK(cli({"enumerate", "--seed", path.string()}).code == ExitUsage);
    }

    TEST_CASE("binary") {
        if (bin().empty()) return;
        auto r = shell(bin() + " enumerate --type A3 --ell 1 --json");
        CHECK(r.code == 0);
        CHECK(json::parse(r.out)["clusters"] == 14);
        CHECK(shell(bin() + " verify all --type A2").code == 0);
        CHECK(shell(bin() + " mutate --type A3 --seq 4").code == 2);
        CHECK(shell(bin() + " enumerate --type A3 --ell 3 --limits seeds=100").code == 3);

        FILE* p = popen(("timeout 4 " + bin() + " serve --port 0").c_str(), "r");
        REQUIRE(p != nullptr);
        std::array<char, 256> line{};
        REQUIRE(std::fgets(line.data(), line.size(), p) != nullptr);
        std::string l(line.data());
        auto colon = l.rfind(':');
        REQUIRE(colon != std::string::npos);
        int port = std::stoi(l.substr(colon + 1));
        httplib::Client c("127.0.0.1", port);
        auto res = c.Post("/session", R"({"type":"A3"})", "application/json");
        REQUIRE(res);
        CHECK(res->status == 201);
        auto atlas = c.Get("/atlas?type=A3");
        REQUIRE(atlas);
        CHECK(json::parse(atlas->body)["cluster_count"] == 14);
        pclose(p);
    }

    TEST_CASE("api sessions") {
        ApiServer s;
        auto r = req(s, "POST", "/session", {{"type", "A3"}});
        REQUIRE(r.status == 201);
        std::string id = r.body["id"];
        json initial = r.body["seed"];
        CHECK(r.body["rank"] == 3);
        CHECK(r.body["variables"].size() == 6);
        CHECK(r.body["variables"][0]["label"] == "-a1");
        CHECK(r.body["variables"][3]["frozen"] == true);
        CHECK(Seed::from_json(initial).to_json() == initial);

        r = req(s, "POST", "/session/" + id + "/mutate", {{"k", 2}});
        CHECK(r.status == 200);
        CHECK(r.body["exchange"]["k"] == 2);
        r = req(s, "POST", "/session/" + id + "/mutate", {{"k", 2}});
        CHECK(r.body["seed"] == initial);
        CHECK(r.body["history"] == json::array({2, 2}));

        r = req(s, "POST", "/session/" + id + "/mutate", {{"k", 1}});
        const Atlas& A = c1_atlas(make_dynkin("A3"));
        CHECK(r.body["exchange"]["new"] == x_of(A, {1, 0, 0}).str());
        CHECK(LaurentPoly::parse(r.body["exchange"]["new"]) == LaurentPoly::parse("(x2 + f1)*x1^-1"));
        CHECK(r.body["variables"][0]["label"] == "a1");
        CHECK(r.body["variables"][0]["denominator"] == json::array({1, 0, 0}));
        CHECK(Seed::from_json(r.body["seed"]).to_json() == r.body["seed"]);

        r = req(s, "GET", "/session/" + id + "/seed");
        CHECK(r.status == 200);
        CHECK(r.body["history"].size() == 3);
        r = req(s, "POST", "/session/" + id + "/undo");
        CHECK(r.status == 200);
        CHECK(r.body["seed"] == initial);
        CHECK(req(s, "POST", "/session/" + id + "/undo").status == 200);
        CHECK(req(s, "POST", "/session/" + id + "/undo").status == 200);
        CHECK(req(s, "POST", "/session/" + id + "/undo").status == 409);

        CHECK(req(s, "POST", "/session/" + id + "/mutate", {{"k", 4}}).status == 409);
        CHECK(req(s, "POST", "/session/" + id + "/mutate", {{"k", 0}}).status == 400);
        CHECK(req(s, "POST", "/session/" + id + "/mutate", {{"k", 7}}).status == 400);
        CHECK(req(s, "POST", "/session/" + id + "/mutate", {{"kk", 1}}).status == 400);
        CHECK(s.handle("POST", "/session/" + id + "/mutate", {}, "{oops").status == 400);
        CHECK(req(s, "GET", "/session/s999/seed").status == 404);
        CHECK(req(s, "POST", "/session/s999/mutate", {{"k", 1}}).status == 404);
        CHECK(req(s, "GET", "/nowhere").status == 404);
        CHECK(req(s, "POST", "/session", {{"ell", 1}}).status == 400);
        CHECK(req(s, "POST", "/session", {{"type", "Z9"}}).status == 400);
        CHECK(req(s, "GET", "/health").status == 200);
    }

    TEST_CASE("api characters") {
        ApiServer s;
        std::string id = req(s, "POST", "/session", {{"type", "A3"}}).body["id"];
        auto r = req(s, "GET", "/session/" + id + "/char", nullptr, {{"var", "a1"}});
        REQUIRE(r.status == 200);
        CHECK(r.body["character"]["size"] == 3);
        CHECK(r.body["module"] == "Y[1,0]");
        CHECK(r.body["dimension"] == "4");
        json mons = json::array();
        for (auto& t : r.body["character"]["terms"]) mons.push_back(t["monomial"]);
        CHECK(mons == json::array({"Y[1,0]", "Y[1,2]^-1*Y[2,1]", "Y[2,3]^-1*Y[3,2]"}));
        for (auto& t : r.body["character"]["terms"]) CHECK(t["mult"].is_string());
        CHECK(req(s, "GET", "/session/" + id + "/char", nullptr, {{"var", "1,1,1"}}).body["character"]["size"] == 5);
        CHECK(req(s, "GET", "/session/" + id + "/char", nullptr, {{"var", "1"}}).body["root"] == "-a1");
        CHECK(req(s, "GET", "/session/" + id + "/char", nullptr, {{"var", "4"}}).body["frozen"] == 1);
        CHECK(req(s, "GET", "/session/" + id + "/char", nullptr, {{"var", "2a1"}}).status == 422);
        CHECK(req(s, "GET", "/session/" + id + "/char", nullptr, {{"var", "b1"}}).status == 400);
        CHECK(req(s, "GET", "/session/" + id + "/char", nullptr, {{"var", "9"}}).status == 400);
        CHECK(req(s, "GET", "/session/" + id + "/char").status == 400);

        std::string id2 = req(s, "POST", "/session", {{"type", "A2"}, {"ell", 2}, {"I0", {1}}}).body["id"];
        CHECK(req(s, "GET", "/session/" + id2 + "/seed").body["rank"] == 4);
        CHECK(req(s, "GET", "/session/" + id2 + "/char", nullptr, {{"var", "1"}}).status == 422);
    }

    TEST_CASE("api atlas") {
        ApiServer s;
        auto r = req(s, "GET", "/atlas", nullptr, {{"type", "A3"}});
        CHECK(r.status == 200);
        CHECK(r.body["cluster_count"] == 14);
        CHECK(r.body["labels"].size() == 9);
        r = req(s, "GET", "/atlas", nullptr, {{"type", "A2"}, {"I0", "1"}, {"ell", "2"}});
        CHECK(r.body["cluster_count"] == 50);
        CHECK(req(s, "GET", "/atlas").status == 400);
        CHECK(req(s, "GET", "/atlas", nullptr, {{"type", "A3"}, {"ell", "x"}}).status == 400);
        ApiServer small(Limits{100, 1000000});
        CHECK(req(small, "GET", "/atlas", nullptr, {{"type", "A3"}, {"ell", "3"}}).status == 422);
    }

    TEST_CASE("replay and journal") {
        auto path = std::filesystem::temp_directory_path() / "clq_test_journal.jsonl";
        std::filesystem::remove(path);
        json final_seed;
        std::string id;
        {
            ApiServer s(Limits{}, path.string());
            id = req(s, "POST", "/session", {{"type", "D4"}}).body["id"];
            std::mt19937 rng(3);
            for (int t = 0; t < 30; ++t) req(s, "POST", "/session/" + id + "/mutate", {{"k", 1 + static_cast<int>(rng() % 4)}});
            req(s, "POST", "/session/" + id + "/undo");
            final_seed = req(s, "GET", "/session/" + id + "/seed").body;
        }
        ApiServer again(Limits{}, path.string());
        CHECK(again.session_count() == 1);
        CHECK(req(again, "GET", "/session/" + id + "/seed").body == final_seed);
        std::string id2 = req(again, "POST", "/session", {{"type", "A2"}}).body["id"];
        CHECK(id2 != id);
        std::filesystem::remove(path);

        SessionState st;
        st.d = make_dynkin("A4");
        st.initial = build_c1_seed(st.d);
        st.current = st.initial;
        std::mt19937 rng(5);
        for (int t = 0; t < 40; ++t) {
            int k = static_cast<int>(rng() % 4);
            st.current = mutate_seed(st.current, k);
            st.history.push_back(k);
        }
        CHECK(st.replay().to_json() == st.current.to_json());
    }

    TEST_CASE("http transport") {
        ApiServer s;
        std::thread th([&] { s.listen("127.0.0.1", 0); });
        for (int t = 0; t < 500 && !s.running(); ++t) std::this_thread::sleep_for(std::chrono::milliseconds(10));
        REQUIRE(s.running());
        httplib::Client c("127.0.0.1", s.bound_port());
        auto res = c.Post("/session", R"({"type":"A3"})", "application/json");
        REQUIRE(res);
        CHECK(res->status == 201);
        std::string id = json::parse(res->body)["id"];
        auto m = c.Post("/session/" + id + "/mutate", R"({"k":4})", "application/json");
        REQUIRE(m);
        CHECK(m->status == 409);
        auto ch = c.Get("/session/" + id + "/char?var=a1%2Ba2");
        REQUIRE(ch);
        CHECK(ch->status == 200);
        CHECK(json::parse(ch->body)["root"] == "a1+a2");
        auto nf = c.Get("/session/zzz/seed");
        REQUIRE(nf);
        CHECK(nf->status == 404);
        s.stop();
        th.join();
    }
}
