#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "abc/curve.hpp"
#include "abc/scheme.hpp"

namespace abc::wire {

using json = nlohmann::json;

enum class MessageType { IssueRequest, IssueResponse, VerifyRequest, VerifyResponse, Error };

std::string_view type_name(MessageType type);
std::optional<MessageType> parse_type(std::string_view name);

// Frames carry at most 1 MiB of JSON body.
inline constexpr std::size_t kMaxFrameBytes = std::size_t{1} << 20;

struct Envelope {
  MessageType type = MessageType::Error;
  json payload = json::object();

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

json envelope_to_json(const Envelope& env);
// Throws MalformedJson unless the document is {"type": <known tag>, "payload": {...}}.
Envelope envelope_from_json(const json& doc);

Envelope make_error(std::string_view code, std::string_view message);

// Minimal blocking byte stream used by the framing layer.
class ByteStream {
 public:
  virtual ~ByteStream() = default;
  // Reads up to out.size() bytes; returns 0 at end of stream.
  virtual std::size_t read_some(std::span<std::uint8_t> out) = 0;
  virtual void write_all(std::span<const std::uint8_t> data) = 0;
};

class MemoryStream final : public ByteStream {
 public:
  MemoryStream() = default;
  explicit MemoryStream(std::vector<std::uint8_t> data) : data_(std::move(data)) {}

  std::size_t read_some(std::span<std::uint8_t> out) override;
  void write_all(std::span<const std::uint8_t> data) override;

  const std::vector<std::uint8_t>& data() const noexcept { return data_; }

 private:
  std::vector<std::uint8_t> data_;
  std::size_t pos_ = 0;
};

// 4-byte big-endian length, then the UTF-8 JSON body.
void frame_write(ByteStream& stream, const Envelope& env);
// Throws FrameTooLarge (length 0 or > 1 MiB, checked before allocating),
// UnexpectedEof, or MalformedJson.
Envelope frame_read(ByteStream& stream);

// ---- document fragments ----

// {"x": hex64, "y": hex64} of the affine point.
json encode_point(const curve::ExtendedPoint& p);
// Throws ParseError/MalformedJson for bad shape or hex, MalformedPoint when off the curve.
curve::ExtendedPoint decode_point(const json& doc);

json encode_attributes(const scheme::AttributeSet& attrs);
scheme::AttributeSet decode_attributes(const json& doc);

json encode_credential(const scheme::EccCredential& cred);
json encode_credential(const scheme::ModexpCredential& cred);
// Reads the "scheme" tag of a wire credential; throws MalformedJson if absent.
std::string credential_scheme(const json& doc);
scheme::EccCredential decode_ecc_credential(const json& doc);
scheme::ModexpCredential decode_modexp_credential(const json& doc);

// ---- key files ----

struct IssuerKeys {
  std::optional<scheme::EccIssuerKey> ecc;
  std::optional<scheme::ModexpIssuerKey> modexp;
};

struct PublicKeys {
  std::optional<curve::ExtendedPoint> ecc;
  std::optional<scheme::ModexpPublicKey> modexp;
};

PublicKeys public_keys(const IssuerKeys& keys);

json encode_issuer_keys(const IssuerKeys& keys);
IssuerKeys decode_issuer_keys(const json& doc);
json encode_public_keys(const PublicKeys& keys);
PublicKeys decode_public_keys(const json& doc);

}  // namespace abc::wire
