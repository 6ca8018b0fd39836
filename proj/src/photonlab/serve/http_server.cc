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

#include "photonlab/serve/http_server.h"

#include <cstdlib>

#include "httplib.h"
#include "photonlab/serve/serve_api.h"

namespace photonlab {

int default_serve_port() {
    const char *env = std::getenv("PHOTONLAB_PORT");
    if (env != nullptr) {
        char *end = nullptr;
        long port = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && port > 0 && port < 65536) {
            return static_cast<int>(port);
        }
    }
    return kDefaultServePort;
}

bool run_http_server(const std::string &host, int port) {
    ServeApi api;
    httplib::Server server;
    auto forward = [&api](const httplib::Request &req, httplib::Response &res) {
        auto response = api.handle({req.method, req.path, req.body});
        res.status = response.status;
        res.set_content(response.body, response.content_type);
    };
    server.Get(".*", forward);
    server.Post(".*", forward);
    server.Delete(".*", forward);
    server.Options(".*", [](const httplib::Request &, httplib::Response &res) {
        res.status = 204;
    });
    server.set_default_headers({
        {"Access-Control-Allow-Origin", "*"},
        {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
        {"Access-Control-Allow-Headers", "Content-Type"},
    });
    return server.listen(host, port);
}

}  // namespace photonlab
