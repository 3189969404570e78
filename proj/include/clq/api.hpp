#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "clq/cluster.hpp"
#include "clq/roots.hpp"

namespace httplib {
class Server;
}

namespace clq {

struct SessionState {
    std::string id;
    DynkinData d;
    int ell = 1;
    Seed initial;
    Seed current;
    std::vector<int> history;  // 0-based directions
    std::mutex writer;

    // replaying history from the initial seed
    Seed replay() const;
};

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

// JSON API behind `serve`; handle() is transport-free
class ApiServer {
public:
    explicit ApiServer(Limits lim = {}, std::string journal = "");
    ~ApiServer();

    ApiResponse handle(const std::string& method, const std::string& path,
                       const std::map<std::string, std::string>& query, const std::string& body);

    // blocks until stop(); port 0 picks a free port, reported through bound_port()
    bool listen(const std::string& host, int port, const std::string& static_dir = "");
    int bound_port() const { return port_; }
    void stop();
    bool running() const;

    std::size_t session_count() const;

private:
    std::shared_ptr<SessionState> create(const nlohmann::json& req, bool record);
    std::shared_ptr<SessionState> find(const std::string& id) const;
    nlohmann::json seed_json(const SessionState& s) const;
    void record(const nlohmann::json& event);
    void replay_journal();

    Limits lim_;
    std::string journal_;
    std::mutex journal_mu_;
    mutable std::shared_mutex mu_;
    std::map<std::string, std::shared_ptr<SessionState>> sessions_;
    int next_id_ = 1;
    int port_ = 0;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace clq
