#include "abc/services.hpp"

#include <chrono>
#include <iostream>

#include "abc/error.hpp"

namespace abc::services {

namespace {

using wire::Envelope;
using wire::json;
using wire::MessageType;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Maps a library failure while interpreting a request onto a wire error code.
const char* request_error_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyAttributes:
    case ErrorCode::TooManyAttributes:
    case ErrorCode::AttributeRange:
      return kBadAttributes;
    case ErrorCode::FrameTooLarge:
      return kFrameTooLarge;
    default:
      return kMalformed;
  }
}

std::optional<scheme::SchemeId> requested_scheme(const json& payload, Envelope& error) {
  auto it = payload.find("scheme");
  if (it == payload.end() || !it->is_string()) {
    error = wire::make_error(kMalformed, "request needs a string 'scheme'");
    return std::nullopt;
  }
  auto id = scheme::parse_scheme(it->get<std::string>());
  if (!id) error = wire::make_error(kUnknownScheme, "unknown scheme '" + it->get<std::string>() + "'");
  return id;
}

}  // namespace

IssuerService::IssuerService(wire::IssuerKeys keys, std::unique_ptr<Rng> rng)
    : keys_(std::move(keys)), rng_(std::move(rng)) {}

Envelope IssuerService::handle(const Envelope& request) {
  if (request.type != MessageType::IssueRequest) {
    return wire::make_error(kUnexpectedType, "issuer accepts ISSUE_REQUEST only");
  }
  Envelope error;
  auto id = requested_scheme(request.payload, error);
  if (!id) return error;

  std::optional<scheme::AttributeSet> attrs;
  try {
    auto it = request.payload.find("attributes");
    if (it == request.payload.end()) return wire::make_error(kMalformed, "request needs 'attributes'");
    attrs = wire::decode_attributes(*it);
  } catch (const Error& e) {
    const char* code = e.code() == ErrorCode::ParseError ? kBadAttributes : request_error_code(e.code());
    return wire::make_error(code, e.what());
  }

  json credential;
  const auto start = Clock::now();
  if (*id == scheme::SchemeId::Ecc160) {
    if (!keys_.ecc) return wire::make_error(kNoKey, "issuer has no ecc160 key");
    credential = wire::encode_credential(scheme::ecc_issue(*keys_.ecc, *attrs, *rng_));
  } else {
    if (!keys_.modexp) return wire::make_error(kNoKey, "issuer has no modexp1024 key");
    credential = wire::encode_credential(scheme::rsa_issue(*keys_.modexp, *attrs));
  }
  const double issue_ms = elapsed_ms(start);
  return {MessageType::IssueResponse, json{{"credential", std::move(credential)}, {"issue_ms", issue_ms}}};
}

VerifierService::VerifierService(wire::PublicKeys keys) : keys_(std::move(keys)) {}

Envelope VerifierService::handle(const Envelope& request) const {
  if (request.type != MessageType::VerifyRequest) {
    return wire::make_error(kUnexpectedType, "verifier accepts VERIFY_REQUEST only");
  }
  Envelope error;
  auto id = requested_scheme(request.payload, error);
  if (!id) return error;
  auto it = request.payload.find("credential");
  if (it == request.payload.end() || !it->is_object()) {
    return wire::make_error(kMalformed, "request needs a 'credential' object");
  }

  bool valid = false;
  const auto start = Clock::now();
  try {
    if (wire::credential_scheme(*it) != scheme::scheme_name(*id)) {
      return wire::make_error(kMalformed, "credential scheme does not match the request");
    }
    if (*id == scheme::SchemeId::Ecc160) {
      if (!keys_.ecc) return wire::make_error(kNoKey, "verifier has no ecc160 key");
      valid = scheme::ecc_verify(*keys_.ecc, wire::decode_ecc_credential(*it));
    } else {
      if (!keys_.modexp) return wire::make_error(kNoKey, "verifier has no modexp1024 key");
      valid = scheme::rsa_verify(*keys_.modexp, wire::decode_modexp_credential(*it));
    }
  } catch (const Error& e) {
    // A well-formed point that is off the curve is a forgery, not a syntax error.
    if (e.code() != ErrorCode::MalformedPoint) return wire::make_error(request_error_code(e.code()), e.what());
    valid = false;
  }
  const double verify_ms = elapsed_ms(start);
  return {MessageType::VerifyResponse, json{{"valid", valid}, {"verify_ms", verify_ms}}};
}

void serve_connection(wire::ByteStream& stream, const Handler& handler) {
  Envelope request;
  try {
    request = wire::frame_read(stream);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FrameTooLarge || e.code() == ErrorCode::MalformedJson) {
      try {
        wire::frame_write(stream, wire::make_error(request_error_code(e.code()), e.what()));
      } catch (const std::exception&) {
        // peer already gone
      }
    }
    return;
  }

  Envelope response;
  try {
    response = handler(request);
  } catch (const std::exception& e) {
    response = wire::make_error(kInternal, e.what());
  }
  try {
    wire::frame_write(stream, response);
  } catch (const std::exception&) {
  }
}

void serve(net::TcpListener& listener, const Handler& handler, std::stop_token stop) {
  while (!stop.stop_requested()) {
    auto conn = listener.accept(std::chrono::milliseconds(100));
    if (!conn) continue;
    conn->set_timeout(std::chrono::seconds(5));
    try {
      serve_connection(*conn, handler);
    } catch (const std::exception& e) {
      std::cerr << "connection error: " << e.what() << '\n';
    }
  }
}

void issuer_serve(const net::Endpoint& endpoint, wire::IssuerKeys keys) {
  net::TcpListener listener(endpoint);
  IssuerService service(std::move(keys), std::make_unique<SystemRng>());
  std::cerr << "issuer listening on " << listener.local_endpoint().to_string() << '\n';
  std::stop_source never;
  serve(listener, [&](const Envelope& req) { return service.handle(req); }, never.get_token());
  std::abort();
}

void verifier_serve(const net::Endpoint& endpoint, wire::PublicKeys keys) {
  net::TcpListener listener(endpoint);
  VerifierService service(std::move(keys));
  std::cerr << "verifier listening on " << listener.local_endpoint().to_string() << '\n';
  std::stop_source never;
  serve(listener, [&](const Envelope& req) { return service.handle(req); }, never.get_token());
  std::abort();
}

Envelope exchange(const net::Endpoint& endpoint, const Envelope& request) {
  net::Socket sock = net::connect_to(endpoint);
  wire::frame_write(sock, request);
  Envelope response = wire::frame_read(sock);
  if (response.type == MessageType::Error) {
    std::string code = response.payload.value("code", std::string("UNKNOWN"));
    std::string message = response.payload.value("message", std::string());
    throw Error(ErrorCode::ProtocolError, code + ": " + message);
  }
  return response;
}

IssueResult client_issue(const net::Endpoint& endpoint, scheme::SchemeId id, const scheme::AttributeSet& attrs) {
  Envelope request{MessageType::IssueRequest,
                   json{{"scheme", scheme::scheme_name(id)}, {"attributes", wire::encode_attributes(attrs)}}};
  const auto start = Clock::now();
  Envelope response = exchange(endpoint, request);
  IssueResult out;
  out.round_trip_ms = elapsed_ms(start);
  if (response.type != MessageType::IssueResponse || !response.payload.contains("credential")) {
    throw Error(ErrorCode::ProtocolError, "unexpected reply to ISSUE_REQUEST");
  }
  out.credential = response.payload["credential"];
  out.issue_ms = response.payload.value("issue_ms", 0.0);
  return out;
}

VerifyResult client_verify(const net::Endpoint& endpoint, const json& credential) {
  Envelope request{MessageType::VerifyRequest,
                   json{{"scheme", wire::credential_scheme(credential)}, {"credential", credential}}};
  const auto start = Clock::now();
  Envelope response = exchange(endpoint, request);
  VerifyResult out;
  out.round_trip_ms = elapsed_ms(start);
  if (response.type != MessageType::VerifyResponse || !response.payload.contains("valid") ||
      !response.payload["valid"].is_boolean()) {
    throw Error(ErrorCode::ProtocolError, "unexpected reply to VERIFY_REQUEST");
  }
  out.valid = response.payload["valid"].get<bool>();
  out.verify_ms = response.payload.value("verify_ms", 0.0);
  return out;
}

}  // namespace abc::services
