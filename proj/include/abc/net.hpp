#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "abc/wire.hpp"

namespace abc::net {

inline constexpr std::uint16_t kDefaultIssuerPort = 7001;
inline constexpr std::uint16_t kDefaultVerifierPort = 7002;
inline constexpr const char* kIssuerEnv = "ABC_ISSUER_ADDR";
inline constexpr const char* kVerifierEnv = "ABC_VERIFIER_ADDR";

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;

  std::string to_string() const { return host + ":" + std::to_string(port); }
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

// "host:port" or ":port"; throws BadConfig.
Endpoint parse_endpoint(std::string_view text);
// Explicit flag value, else the environment variable, else host:default_port.
Endpoint resolve_endpoint(const std::optional<std::string>& flag, const char* env_var,
                          std::string_view default_host, std::uint16_t default_port);

// Connected TCP socket; owns the descriptor.
class Socket final : public wire::ByteStream {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket() override;
  Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  bool valid() const noexcept { return fd_ >= 0; }
  void set_timeout(std::chrono::milliseconds timeout);
  void shutdown_write();

  std::size_t read_some(std::span<std::uint8_t> out) override;
  void write_all(std::span<const std::uint8_t> data) override;

 private:
  int fd_ = -1;
};

// Throws ConnectionFailed.
Socket connect_to(const Endpoint& endpoint, std::chrono::milliseconds timeout = std::chrono::seconds(10));

class TcpListener {
 public:
  // Port 0 binds an ephemeral port; throws ConnectionFailed on bind errors.
  explicit TcpListener(const Endpoint& endpoint);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const noexcept { return port_; }
  Endpoint local_endpoint() const { return {host_, port_}; }
  // Waits up to `timeout` for a connection; nullopt on timeout.
  std::optional<Socket> accept(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  std::string host_;
  std::uint16_t port_ = 0;
};

}  // namespace abc::net
