// Copyright 2026 The Photonlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHOTONLAB_SERVE_SERVE_API_H
#define PHOTONLAB_SERVE_SERVE_API_H

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "photonlab/io/detection_log.h"
#include "photonlab/io/json_export.h"
#include "photonlab/io/setup_io.h"

namespace photonlab {

struct ApiRequest {
    std::string method;
    std::string path;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

/// Transport-independent implementation of the serve protocol. Every session owns one board,
/// its latest tree and its latest detection log; sessions never share mutable state.
class ServeApi {
   public:
    ApiResponse handle(const ApiRequest &request);

    size_t session_count() const;

   private:
    struct Session {
        std::mutex mutex;
        SetupDocument doc;
        std::unique_ptr<Engine> engine;
        std::optional<MultiverseTree> tree;
        std::optional<DetectionLog> log;
        std::atomic<bool> cancel{false};

        void reset(SetupDocument next);
        const Engine &ensure_engine();
    };

    std::shared_ptr<Session> find_session(const std::string &id) const;
    Json create_session(const Json &body);
    Json session_call(Session &session, const std::string &action, const Json &body, ApiResponse &response);

    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    uint64_t next_id_ = 1;
};

}  // namespace photonlab

#endif
