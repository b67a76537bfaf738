/*
 * Copyright 2026 The BlindMatch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BLINDMATCH_TRANSPORT_H_
#define BLINDMATCH_TRANSPORT_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>

namespace blindmatch {

// Reliable, ordered byte stream. No confidentiality or authentication:
// deployments must run it inside an encrypted channel.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void Write(std::span<const uint8_t> data) = 0;
  // Throws kTransportClosed if the peer closes before `out` is filled.
  virtual void ReadExact(std::span<uint8_t> out) = 0;
  // Idempotent. Wakes a blocked reader on either end.
  virtual void Close() = 0;
};

// Two connected endpoints in the same process.
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>>
MakeInProcessPair();

struct Endpoint {
  std::string host = "127.0.0.1";
  uint16_t port = 0;
};

// "host:port"; throws kInvalidArgument.
Endpoint ParseEndpoint(const std::string& text);

class TcpListener {
 public:
  // Port 0 picks an ephemeral port; see port().
  static std::unique_ptr<TcpListener> Listen(const Endpoint& endpoint);
  ~TcpListener();

  uint16_t port() const { return port_; }
  // Blocks. Returns nullptr once the listener has been closed.
  std::unique_ptr<Transport> Accept();
  void Close();

 private:
  TcpListener(int fd, uint16_t port) : fd_(fd), port_(port) {}
  int fd_;
  uint16_t port_;
};

// Retries for up to `timeout_ms` while the server is not yet listening.
std::unique_ptr<Transport> TcpConnect(const Endpoint& endpoint,
                                      int timeout_ms = 5000);

}  // namespace blindmatch

#endif  // BLINDMATCH_TRANSPORT_H_
