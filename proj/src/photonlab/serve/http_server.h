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

#ifndef PHOTONLAB_SERVE_HTTP_SERVER_H
#define PHOTONLAB_SERVE_HTTP_SERVER_H

#include <string>

namespace photonlab {

/// Port used by `serve` when neither --port nor PHOTONLAB_PORT is given.
inline constexpr int kDefaultServePort = 8765;

/// PHOTONLAB_PORT if set and valid, otherwise kDefaultServePort.
int default_serve_port();

/// Blocks serving the JSON protocol on host:port until the process is interrupted.
/// Returns false when the socket cannot be bound.
bool run_http_server(const std::string &host, int port);

}  // namespace photonlab

#endif
