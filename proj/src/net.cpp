#include "abc/net.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cstring>

#include "abc/error.hpp"

namespace abc::net {

namespace {

std::string errno_text() { return std::strerror(errno); }

addrinfo* resolve(const Endpoint& ep, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  const std::string port = std::to_string(ep.port);
  int rc = getaddrinfo(ep.host.empty() ? nullptr : ep.host.c_str(), port.c_str(), &hints, &res);
  if (rc != 0) {
    throw Error(ErrorCode::ConnectionFailed, "cannot resolve " + ep.to_string() + ": " + gai_strerror(rc));
  }
  return res;
}

}  // namespace

Endpoint parse_endpoint(std::string_view text) {
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos) throw Error(ErrorCode::BadConfig, "endpoint must be host:port");
  Endpoint ep;
  std::string_view host = text.substr(0, colon);
  std::string_view port = text.substr(colon + 1);
  if (!host.empty()) ep.host = std::string(host);
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (ec != std::errc() || ptr != port.data() + port.size() || port.empty() || value > 65535) {
    throw Error(ErrorCode::BadConfig, "invalid port in endpoint '" + std::string(text) + "'");
  }
  ep.port = static_cast<std::uint16_t>(value);
  return ep;
}

Endpoint resolve_endpoint(const std::optional<std::string>& flag, const char* env_var,
                          std::string_view default_host, std::uint16_t default_port) {
  if (flag && !flag->empty()) return parse_endpoint(*flag);
  if (const char* env = std::getenv(env_var); env != nullptr && *env != '\0') return parse_endpoint(env);
  return {std::string(default_host), default_port};
}

Socket::~Socket() {
  if (fd_ >= 0) ::close(fd_);
}

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

void Socket::set_timeout(std::chrono::milliseconds timeout) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(timeout.count() / 1000);
  tv.tv_usec = static_cast<suseconds_t>((timeout.count() % 1000) * 1000);
  ::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  ::setsockopt(fd_, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
}

void Socket::shutdown_write() { ::shutdown(fd_, SHUT_WR); }

std::size_t Socket::read_some(std::span<std::uint8_t> out) {
  for (;;) {
    ssize_t n = ::recv(fd_, out.data(), out.size(), 0);
    if (n >= 0) return static_cast<std::size_t>(n);
    if (errno == EINTR) continue;
    if (errno == EAGAIN || errno == EWOULDBLOCK) {
      throw Error(ErrorCode::UnexpectedEof, "read timed out");
    }
    throw Error(ErrorCode::IoFailure, "recv failed: " + errno_text());
  }
}

void Socket::write_all(std::span<const std::uint8_t> data) {
  std::size_t done = 0;
  while (done < data.size()) {
    ssize_t n = ::send(fd_, data.data() + done, data.size() - done, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::IoFailure, "send failed: " + errno_text());
    }
    done += static_cast<std::size_t>(n);
  }
}

Socket connect_to(const Endpoint& endpoint, std::chrono::milliseconds timeout) {
  addrinfo* res = resolve(endpoint, false);
  std::string last_error = "no addresses";
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    Socket sock(fd);
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      sock.set_timeout(timeout);
      freeaddrinfo(res);
      return sock;
    }
    last_error = errno_text();
  }
  freeaddrinfo(res);
  throw Error(ErrorCode::ConnectionFailed, "cannot connect to " + endpoint.to_string() + ": " + last_error);
}

TcpListener::TcpListener(const Endpoint& endpoint) : host_(endpoint.host) {
  addrinfo* res = resolve(endpoint, true);
  fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd_ < 0) {
    freeaddrinfo(res);
    throw Error(ErrorCode::ConnectionFailed, "socket failed: " + errno_text());
  }
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(fd_, res->ai_addr, res->ai_addrlen) != 0 || ::listen(fd_, 64) != 0) {
    std::string why = errno_text();
    freeaddrinfo(res);
    ::close(fd_);
    throw Error(ErrorCode::ConnectionFailed, "cannot listen on " + endpoint.to_string() + ": " + why);
  }
  freeaddrinfo(res);

  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  if (host_.empty() || host_ == "0.0.0.0") host_ = "127.0.0.1";
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::optional<Socket> TcpListener::accept(std::chrono::milliseconds timeout) {
  pollfd pfd{fd_, POLLIN, 0};
  int rc = ::poll(&pfd, 1, static_cast<int>(timeout.count()));
  if (rc <= 0) return std::nullopt;
  int client = ::accept(fd_, nullptr, nullptr);
  if (client < 0) return std::nullopt;
  int one = 1;
  ::setsockopt(client, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return Socket(client);
}

}  // namespace abc::net
