#pragma once

#include <memory>
#include <string>

#include "aladaen/service/query_board.hpp"
#include "aladaen/service/telemetry.hpp"

namespace aladaen::service {

inline constexpr int kDefaultPort = 8423;

struct ServiceOptions {
    std::string host = "127.0.0.1";
    int port = kDefaultPort;  // 0 picks a free port
};

/// JSON API over a query board and telemetry store:
///   GET  /api/state
///   GET  /api/queries
///   POST /api/queries/{query_id}/label   body {"label": "normal" | "anomalous"}
///   GET  /api/ranking?iter=k&limit=n
class OracleService {
public:
    OracleService(QueryBoard& board, const TelemetryStore& telemetry, ServiceOptions options = {});
    ~OracleService();
    OracleService(const OracleService&) = delete;
    OracleService& operator=(const OracleService&) = delete;

    /// Binds and starts serving on a background thread; returns the bound port.
    /// Throws IoError when the address cannot be bound.
    int start();
    void stop();
    [[nodiscard]] int port() const { return port_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int port_ = 0;
};

}  // namespace aladaen::service
