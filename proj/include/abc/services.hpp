#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <stop_token>
#include <string>

#include "abc/net.hpp"
#include "abc/rng.hpp"
#include "abc/scheme.hpp"
#include "abc/wire.hpp"

namespace abc::services {

// Error codes carried in ERROR envelopes.
inline constexpr const char* kUnknownScheme = "UNKNOWN_SCHEME";
inline constexpr const char* kBadAttributes = "BAD_ATTRIBUTES";
inline constexpr const char* kMalformed = "MALFORMED";
inline constexpr const char* kFrameTooLarge = "FRAME_TOO_LARGE";
inline constexpr const char* kUnexpectedType = "UNEXPECTED_TYPE";
inline constexpr const char* kNoKey = "NO_KEY";
inline constexpr const char* kInternal = "INTERNAL";

using Handler = std::function<wire::Envelope(const wire::Envelope&)>;

// ISSUE_REQUEST{scheme, attributes} -> ISSUE_RESPONSE{credential, issue_ms} | ERROR{code, message}.
class IssuerService {
 public:
  IssuerService(wire::IssuerKeys keys, std::unique_ptr<Rng> rng);
  wire::Envelope handle(const wire::Envelope& request);

 private:
  wire::IssuerKeys keys_;
  std::unique_ptr<Rng> rng_;
};

// VERIFY_REQUEST{scheme, credential} -> VERIFY_RESPONSE{valid, verify_ms} | ERROR{code, message}.
class VerifierService {
 public:
  explicit VerifierService(wire::PublicKeys keys);
  wire::Envelope handle(const wire::Envelope& request) const;

 private:
  wire::PublicKeys keys_;
};

// Reads one request, writes one response. Framing errors are answered
// with an ERROR envelope when the peer is still writable.
void serve_connection(wire::ByteStream& stream, const Handler& handler);

// Sequential accept loop, one exchange per connection, until stop is requested.
void serve(net::TcpListener& listener, const Handler& handler, std::stop_token stop);

// Service entry points for the command line; they only return on a bind failure (as an exception).
[[noreturn]] void issuer_serve(const net::Endpoint& endpoint, wire::IssuerKeys keys);
[[noreturn]] void verifier_serve(const net::Endpoint& endpoint, wire::PublicKeys keys);

struct IssueResult {
  wire::json credential;
  double issue_ms = 0.0;       // as reported by the issuer
  double round_trip_ms = 0.0;  // request write to response read
};

struct VerifyResult {
  bool valid = false;
  double verify_ms = 0.0;
  double round_trip_ms = 0.0;
};

// One framed exchange. Throws ConnectionFailed, or ProtocolError carrying the
// peer's ERROR code and message verbatim.
wire::Envelope exchange(const net::Endpoint& endpoint, const wire::Envelope& request);

IssueResult client_issue(const net::Endpoint& endpoint, scheme::SchemeId scheme,
                         const scheme::AttributeSet& attrs);
VerifyResult client_verify(const net::Endpoint& endpoint, const wire::json& credential);

}  // namespace abc::services
