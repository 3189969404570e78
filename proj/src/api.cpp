#include "clq/api.hpp"

#include <fstream>
#include <sstream>

#include "httplib.h"
#include "clq/c1chars.hpp"
#include "clq/levels.hpp"

namespace clq {

using nlohmann::json;

Seed SessionState::replay() const {
    Seed s = initial;
    for (int k : history) s = mutate_seed(s, k);
    return s;
}

namespace {

struct HttpError {
    int status;
    std::string message;
};

int status_for(Err e) {
    switch (e) {
        case Err::ParseError:
        case Err::InvalidArgument:
        case Err::OutOfRange:
        case Err::UnsupportedType: return 400;
        case Err::FrozenDirection: return 409;
        default: return 422;
    }
}

json error_body(int status, const std::string& msg, const std::string& kind = "") {
    json j = {{"status", status}, {"error", msg}};
    if (!kind.empty()) j["kind"] = kind;
    return j;
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::stringstream ss(path);
    std::string p;
    while (std::getline(ss, p, '/'))
        if (!p.empty()) parts.push_back(p);
    return parts;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string t;
    while (std::getline(ss, t, ',')) {
        try {
            out.push_back(std::stoi(t));
        } catch (...) {
            throw Error(Err::ParseError, "bad integer list '" + s + "'");
        }
    }
    return out;
}

// "1,0,1" or "a1+2a2-a3" style
RootVector parse_root_any(const std::string& s, int n) {
    if (s.find(',') != std::string::npos || n == 1) {
        if (std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == ',' || c == '-'; }))
            return parse_root(s, n);
    }
    RootVector r(n, 0);
    std::size_t i = 0;
    bool any = false;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        }
        int c = 0;
        bool has_c = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            c = 10 * c + (s[i++] - '0');
            has_c = true;
        }
        if (i >= s.size() || (s[i] != 'a' && s[i] != 'A')) throw Error(Err::ParseError, "bad root '" + s + "'");
        ++i;
        int v = 0;
        bool has_v = false;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = 10 * v + (s[i++] - '0');
            has_v = true;
        }
        if (!has_v || v < 1 || v > n) throw Error(Err::ParseError, "bad root '" + s + "'");
        r[v - 1] += sign * (has_c ? c : 1);
        any = true;
    }
    if (!any) throw Error(Err::ParseError, "empty root");
    return r;
}

Seed initial_seed(const DynkinData& d, int ell) {
    if (ell == 1) return build_c1_seed(d);
    return build_gamma_ell_seed(d, ell).seed;
}

DynkinData dynkin_from_request(const std::string& type, const std::string& i0) {
    DynkinData d = make_dynkin(type);
    if (!i0.empty()) d = with_i0(d, parse_int_list(i0));
    return d;
}

std::string monomial_product_text(const Seed& s, const std::vector<std::pair<int, int>>& factors) {
    LaurentPoly p(1);
    for (auto [row, e] : factors) p *= s.vars[row].pow(e);
    return p.str();
}

}  // namespace

ApiServer::ApiServer(Limits lim, std::string journal)
    : lim_(lim), journal_(std::move(journal)), server_(std::make_unique<httplib::Server>()) {
    replay_journal();
}

ApiServer::~ApiServer() { stop(); }

std::size_t ApiServer::session_count() const {
    std::shared_lock lk(mu_);
    return sessions_.size();
}

void ApiServer::record(const json& event) {
    if (journal_.empty()) return;
    std::lock_guard lk(journal_mu_);
    std::ofstream out(journal_, std::ios::app);
    out << event.dump() << "\n";
}

void ApiServer::replay_journal() {
    if (journal_.empty()) return;
    std::ifstream in(journal_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json e = json::parse(line);
        std::string op = e.at("op");
        if (op == "create") {
            auto s = create(e.at("request"), false);
            std::unique_lock lk(mu_);
            sessions_.erase(s->id);
            s->id = e.at("id");
            sessions_[s->id] = s;
            next_id_ = std::max(next_id_, std::stoi(s->id.substr(1)) + 1);
        } else if (auto s = find(e.at("id"))) {
            if (op == "mutate") {
                s->history.push_back(e.at("k").get<int>());
                s->current = mutate_seed(s->current, s->history.back());
            } else if (op == "undo" && !s->history.empty()) {
                s->current = mutate_seed(s->current, s->history.back());
                s->history.pop_back();
            }
        }
    }
}

std::shared_ptr<SessionState> ApiServer::create(const json& req, bool rec) {
    if (!req.is_object() || !req.contains("type") || !req["type"].is_string())
        throw HttpError{400, "session request needs a string field 'type'"};
    auto s = std::make_shared<SessionState>();
    s->d = make_dynkin(req["type"].get<std::string>());
    if (req.contains("I0")) s->d = with_i0(s->d, req["I0"].get<std::vector<int>>());
    s->ell = req.value("ell", 1);
    if (s->ell < 1 || s->ell > 10) throw HttpError{400, "ell must lie in [1,10]"};
    s->initial = initial_seed(s->d, s->ell);
    s->current = s->initial;
    {
        std::unique_lock lk(mu_);
        s->id = "s" + std::to_string(next_id_++);
        sessions_[s->id] = s;
    }
    if (rec) record({{"op", "create"}, {"id", s->id}, {"request", req}});
    return s;
}

std::shared_ptr<SessionState> ApiServer::find(const std::string& id) const {
    std::shared_lock lk(mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

json ApiServer::seed_json(const SessionState& s) const {
    const Seed& c = s.current;
    int rank = c.B.cols;
    std::vector<VarId> mutable_init(c.initial.begin(), c.initial.begin() + rank);
    json vars = json::array();
    for (int r = 0; r < c.B.rows; ++r) {
        json v = {{"position", r + 1}, {"text", c.vars[r].str()}, {"frozen", r >= rank}};
        if (r < rank) {
            RootVector den = denominator_vector(c.vars[r], mutable_init);
            v["denominator"] = den;
            if (s.ell == 1) {
                v["root"] = den;
                v["label"] = root_str(den);
            }
        }
        vars.push_back(v);
    }
    std::vector<int> hist;
    for (int k : s.history) hist.push_back(k + 1);
    return {{"id", s.id},        {"type", s.d.name()}, {"I0", s.d.i0()},   {"ell", s.ell},
            {"history", hist},   {"rank", rank},       {"seed", c.to_json()}, {"variables", vars}};
}

ApiResponse ApiServer::handle(const std::string& method, const std::string& path,
                              const std::map<std::string, std::string>& query, const std::string& body) {
    auto parts = split_path(path);
    auto param = [&](const std::string& k) {
        auto it = query.find(k);
        return it == query.end() ? std::string() : it->second;
    };
    auto parse_body = [&]() {
        if (body.empty()) return json::object();
        try {
            return json::parse(body);
        } catch (const json::exception& e) {
            throw HttpError{400, std::string("malformed JSON body: ") + e.what()};
        }
    };
    try {
        if (parts.size() == 1 && parts[0] == "health" && method == "GET") return {200, {{"ok", true}}};
        if (parts.size() == 1 && parts[0] == "session" && method == "POST") {
            auto s = create(parse_body(), true);
            std::lock_guard lk(s->writer);
            return {201, seed_json(*s)};
        }
        if (parts.size() == 1 && parts[0] == "atlas" && method == "GET") {
            std::string type = param("type");
            if (type.empty()) throw HttpError{400, "query parameter 'type' is required"};
            DynkinData d = dynkin_from_request(type, param("I0"));
            int ell = param("ell").empty() ? 1 : std::stoi(param("ell"));
            if (ell < 1 || ell > 10) throw HttpError{400, "ell must lie in [1,10]"};
            static std::mutex cache_mu;
            static std::map<std::tuple<std::string, std::vector<int>, int>, json> cache;
            auto key = std::make_tuple(d.name(), d.xi, ell);
            {
                std::lock_guard lk(cache_mu);
                auto it = cache.find(key);
                if (it != cache.end()) return {200, it->second};
            }
            json j;
            if (ell == 1) {
                j = c1_atlas(d).to_json();
                json labels = json::array();
                for (auto& l : c1_atlas(d).labels) labels.push_back(root_str(l));
                j["labels"] = labels;
            } else {
                j = enumerate_atlas(initial_seed(d, ell), lim_).to_json();
            }
            j["type"] = d.name();
            j["I0"] = d.i0();
            j["ell"] = ell;
            std::lock_guard lk(cache_mu);
            cache[key] = j;
            return {200, j};
        }
        if (parts.size() >= 2 && parts[0] == "session") {
            auto s = find(parts[1]);
            if (!s) return {404, error_body(404, "unknown session '" + parts[1] + "'")};
            std::string op = parts.size() == 3 ? parts[2] : "";
            if (op == "seed" && method == "GET") {
                std::lock_guard lk(s->writer);
                return {200, seed_json(*s)};
            }
            if (op == "mutate" && method == "POST") {
                json req = parse_body();
                if (!req.contains("k") || !req["k"].is_number_integer())
                    throw HttpError{400, "mutation request needs an integer field 'k'"};
                int k = req["k"].get<int>();
                std::lock_guard lk(s->writer);
                if (k < 1 || k > s->current.B.rows) throw HttpError{400, "direction out of range"};
                if (k > s->current.B.cols)
                    return {409, error_body(409, "direction " + std::to_string(k) + " is frozen", "FrozenDirection")};
                Exchange ex;
                Seed before = s->current;
                s->current = mutate_seed(before, k - 1, &ex);
                s->history.push_back(k - 1);
                record({{"op", "mutate"}, {"id", s->id}, {"k", k - 1}});
                json out = seed_json(*s);
                std::string plus = monomial_product_text(before, ex.plus);
                std::string minus = monomial_product_text(before, ex.minus);
                out["exchange"] = {{"k", k},
                                   {"old", ex.old_var.str()},
                                   {"new", ex.new_var.str()},
                                   {"plus", plus},
                                   {"minus", minus},
                                   {"relation", "(" + ex.old_var.str() + ") * (" + ex.new_var.str() + ") = " + plus + " + " + minus}};
                return {200, out};
            }
            if (op == "undo" && method == "POST") {
                std::lock_guard lk(s->writer);
                if (s->history.empty()) return {409, error_body(409, "nothing to undo")};
                s->current = mutate_seed(s->current, s->history.back());
                s->history.pop_back();
                record({{"op", "undo"}, {"id", s->id}});
                return {200, seed_json(*s)};
            }
            if (op == "char" && method == "GET") {
                std::string v = param("var");
                if (v.empty()) throw HttpError{400, "query parameter 'var' is required"};
                std::lock_guard lk(s->writer);
                const DynkinData& d = s->d;
                if (s->ell != 1)
                    return {422, error_body(422, "truncated characters are available for ell = 1 only", "OutOfProvedScope")};
                json out;
                DecoratedQChar ch;
                if (std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                    int p = std::stoi(v);
                    if (p < 1 || p > s->current.B.rows) throw HttpError{400, "variable position out of range"};
                    if (p > s->current.B.cols) {
                        int i = p - s->current.B.cols - 1;
                        ch = truncated_char_c1(frozen_monomial(i, d), d);
                        out["frozen"] = i + 1;
                    } else {
                        std::vector<VarId> init(s->current.initial.begin(), s->current.initial.begin() + d.n);
                        RootVector r = denominator_vector(s->current.vars[p - 1], init);
                        ch = truncated_root_char(r, d, Route::Fpoly);
                        out["root"] = root_str(r);
                    }
                } else {
                    RootVector r = parse_root_any(v, d.n);
                    ch = truncated_root_char(r, d, Route::Fpoly);
                    out["root"] = root_str(r);
                }
                out["module"] = ch.hw.str();
                out["character"] = ch.to_json(d);
                if (d.n <= 6) out["dimension"] = c1_dimension(ch.hw, d).get_str();
                return {200, out};
            }
            return {404, error_body(404, "no route " + method + " " + path)};
        }
        return {404, error_body(404, "no route " + method + " " + path)};
    } catch (const HttpError& e) {
        return {e.status, error_body(e.status, e.message)};
    } catch (const Error& e) {
        int st = status_for(e.kind());
        return {st, error_body(st, e.what(), err_name(e.kind()))};
    } catch (const std::invalid_argument& e) {
        return {400, error_body(400, std::string("bad number: ") + e.what())};
    } catch (const json::exception& e) {
        return {400, error_body(400, e.what())};
    }
}

bool ApiServer::listen(const std::string& host, int port, const std::string& static_dir) {
    if (!static_dir.empty() && !server_->set_mount_point("/ui", static_dir)) return false;
    auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> q;
        for (auto& [k, v] : req.params) q[k] = v;
        ApiResponse r = handle(req.method, req.path, q, req.body);
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    server_->Get(".*", bridge);
    server_->Post(".*", bridge);
    if (port == 0) {
        port_ = server_->bind_to_any_port(host);
        if (port_ <= 0) return false;
    } else {
        if (!server_->bind_to_port(host, port)) return false;
        port_ = port;
    }
    return server_->listen_after_bind();
}

void ApiServer::stop() { server_->stop(); }

bool ApiServer::running() const { return server_->is_running(); }

}  // namespace clq
