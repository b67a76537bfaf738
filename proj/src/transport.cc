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

#include "blindmatch/transport.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>
#include <vector>

#include "blindmatch/error.h"

namespace blindmatch {

namespace {

// One direction of an in-process pipe.
class Pipe {
 public:
  void Push(std::span<const uint8_t> data) {
    std::lock_guard<std::mutex> lock(mu_);
    if (closed_) throw Error(ErrorCode::kTransportClosed, "pipe closed");
    chunks_.emplace_back(data.begin(), data.end());
    cv_.notify_all();
  }

  void Pop(std::span<uint8_t> out) {
    std::unique_lock<std::mutex> lock(mu_);
    size_t filled = 0;
    while (filled < out.size()) {
      cv_.wait(lock, [&] { return !chunks_.empty() || closed_; });
      if (chunks_.empty()) {
        throw Error(ErrorCode::kTransportClosed, "peer closed the connection");
      }
      auto& front = chunks_.front();
      size_t n = std::min(out.size() - filled, front.size() - offset_);
      std::memcpy(out.data() + filled, front.data() + offset_, n);
      filled += n;
      offset_ += n;
      if (offset_ == front.size()) {
        chunks_.pop_front();
        offset_ = 0;
      }
    }
  }

  void Close() {
    std::lock_guard<std::mutex> lock(mu_);
    closed_ = true;
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::vector<uint8_t>> chunks_;
  size_t offset_ = 0;
  bool closed_ = false;
};

class InProcessTransport : public Transport {
 public:
  InProcessTransport(std::shared_ptr<Pipe> in, std::shared_ptr<Pipe> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  ~InProcessTransport() override { Close(); }

  void Write(std::span<const uint8_t> data) override { out_->Push(data); }
  void ReadExact(std::span<uint8_t> out) override { in_->Pop(out); }
  void Close() override {
    in_->Close();
    out_->Close();
  }

 private:
  std::shared_ptr<Pipe> in_, out_;
};

class TcpTransport : public Transport {
 public:
  explicit TcpTransport(int fd) : fd_(fd) {
    int one = 1;
    setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  }
  ~TcpTransport() override {
    Close();
    ::close(fd_);
  }

  void Write(std::span<const uint8_t> data) override {
    size_t sent = 0;
    while (sent < data.size()) {
      ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent,
                         MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        throw Error(ErrorCode::kTransportClosed,
                    std::string("send failed: ") + std::strerror(errno));
      }
      sent += static_cast<size_t>(n);
    }
  }

  void ReadExact(std::span<uint8_t> out) override {
    size_t got = 0;
    while (got < out.size()) {
      ssize_t n = ::recv(fd_, out.data() + got, out.size() - got, 0);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        throw Error(ErrorCode::kTransportClosed, "peer closed the connection");
      }
      got += static_cast<size_t>(n);
    }
  }

  void Close() override {
    if (!shut_.exchange(true)) ::shutdown(fd_, SHUT_RDWR);
  }

 private:
  int fd_;
  std::atomic<bool> shut_{false};
};

sockaddr_in Resolve(const Endpoint& endpoint) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(endpoint.port);
  if (inet_pton(AF_INET, endpoint.host.c_str(), &addr.sin_addr) == 1) {
    return addr;
  }
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (getaddrinfo(endpoint.host.c_str(), nullptr, &hints, &res) != 0 || !res) {
    throw Error(ErrorCode::kIo, "cannot resolve host '" + endpoint.host + "'");
  }
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  freeaddrinfo(res);
  return addr;
}

}  // namespace

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>>
MakeInProcessPair() {
  auto a_to_b = std::make_shared<Pipe>();
  auto b_to_a = std::make_shared<Pipe>();
  return {std::make_unique<InProcessTransport>(b_to_a, a_to_b),
          std::make_unique<InProcessTransport>(a_to_b, b_to_a)};
}

Endpoint ParseEndpoint(const std::string& text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos || colon + 1 == text.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "address must look like host:port, got '" + text + "'");
  }
  Endpoint e;
  e.host = colon == 0 ? "127.0.0.1" : text.substr(0, colon);
  try {
    size_t used = 0;
    unsigned long port = std::stoul(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1 || port > 65535) throw std::out_of_range("");
    e.port = static_cast<uint16_t>(port);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kInvalidArgument, "invalid port in '" + text + "'");
  }
  return e;
}

std::unique_ptr<TcpListener> TcpListener::Listen(const Endpoint& endpoint) {
  sockaddr_in addr = Resolve(endpoint);
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw Error(ErrorCode::kIo, "socket() failed");
  int one = 1;
  setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(fd, 16) != 0) {
    int err = errno;
    ::close(fd);
    throw Error(ErrorCode::kIo, "cannot listen on " + endpoint.host + ":" +
                                    std::to_string(endpoint.port) + ": " +
                                    std::strerror(err));
  }
  socklen_t len = sizeof(addr);
  getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  return std::unique_ptr<TcpListener>(new TcpListener(fd, ntohs(addr.sin_port)));
}

TcpListener::~TcpListener() {
  Close();
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Transport> TcpListener::Accept() {
  for (;;) {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) return std::make_unique<TcpTransport>(fd);
    if (errno == EINTR || errno == ECONNABORTED) continue;
    return nullptr;
  }
}

void TcpListener::Close() { ::shutdown(fd_, SHUT_RDWR); }

std::unique_ptr<Transport> TcpConnect(const Endpoint& endpoint,
                                      int timeout_ms) {
  sockaddr_in addr = Resolve(endpoint);
  auto deadline =
      std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw Error(ErrorCode::kIo, "socket() failed");
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) == 0) {
      return std::make_unique<TcpTransport>(fd);
    }
    int err = errno;
    ::close(fd);
    if (std::chrono::steady_clock::now() >= deadline) {
      throw Error(ErrorCode::kIo, "cannot connect to " + endpoint.host + ":" +
                                      std::to_string(endpoint.port) + ": " +
                                      std::strerror(err));
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

}  // namespace blindmatch
