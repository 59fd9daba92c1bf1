#include "abc/wire.hpp"

#include <algorithm>

#include "abc/error.hpp"

namespace abc::wire {

namespace {

constexpr std::size_t kMaxJsonDepth = 64;
constexpr std::size_t kHex32 = 64;
constexpr std::size_t kHex1024 = 256;
constexpr std::size_t kHex512 = 128;

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedJson, what); }

const json& field(const json& doc, const char* key) {
  if (!doc.is_object()) malformed(std::string("expected an object holding '") + key + "'");
  auto it = doc.find(key);
  if (it == doc.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

std::string hex_field(const json& doc, const char* key, std::size_t width) {
  const json& v = field(doc, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a hex string");
  const auto& s = v.get_ref<const std::string&>();
  if (s.size() != width) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be " +
                                           std::to_string(width) + " hex chars");
  }
  bool ok = std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
  });
  if (!ok) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' is not lowercase hex");
  return s;
}

BigNat bignat_field(const json& doc, const char* key, std::size_t width) {
  return BigNat::from_hex(hex_field(doc, key, width));
}

std::size_t read_exact(ByteStream& stream, std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    std::size_t n = stream.read_some(out.subspan(done));
    if (n == 0) break;
    done += n;
  }
  return done;
}

}  // namespace

std::string_view type_name(MessageType type) {
  switch (type) {
    case MessageType::IssueRequest:
      return "ISSUE_REQUEST";
    case MessageType::IssueResponse:
      return "ISSUE_RESPONSE";
    case MessageType::VerifyRequest:
      return "VERIFY_REQUEST";
    case MessageType::VerifyResponse:
      return "VERIFY_RESPONSE";
    case MessageType::Error:
      return "ERROR";
  }
  return "ERROR";
}

std::optional<MessageType> parse_type(std::string_view name) {
  for (auto t : {MessageType::IssueRequest, MessageType::IssueResponse, MessageType::VerifyRequest,
                 MessageType::VerifyResponse, MessageType::Error}) {
    if (type_name(t) == name) return t;
  }
  return std::nullopt;
}

json envelope_to_json(const Envelope& env) {
  return json{{"type", type_name(env.type)}, {"payload", env.payload}};
}

Envelope envelope_from_json(const json& doc) {
  const json& type = field(doc, "type");
  if (!type.is_string()) malformed("'type' must be a string");
  auto parsed = parse_type(type.get_ref<const std::string&>());
  if (!parsed) malformed("unknown message type '" + type.get<std::string>() + "'");
  const json& payload = field(doc, "payload");
  if (!payload.is_object()) malformed("'payload' must be an object");
  return {*parsed, payload};
}

Envelope make_error(std::string_view code, std::string_view message) {
  return {MessageType::Error, json{{"code", code}, {"message", message}}};
}

std::size_t MemoryStream::read_some(std::span<std::uint8_t> out) {
  std::size_t n = std::min(out.size(), data_.size() - pos_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(pos_), n, out.begin());
  pos_ += n;
  return n;
}

void MemoryStream::write_all(std::span<const std::uint8_t> data) {
  data_.insert(data_.end(), data.begin(), data.end());
}

void frame_write(ByteStream& stream, const Envelope& env) {
  std::string body = envelope_to_json(env).dump(-1, ' ', false, json::error_handler_t::replace);
  if (body.size() > kMaxFrameBytes) {
    throw Error(ErrorCode::FrameTooLarge, "envelope of " + std::to_string(body.size()) + " bytes");
  }
  std::vector<std::uint8_t> frame(4 + body.size());
  const auto len = static_cast<std::uint32_t>(body.size());
  frame[0] = static_cast<std::uint8_t>(len >> 24);
  frame[1] = static_cast<std::uint8_t>(len >> 16);
  frame[2] = static_cast<std::uint8_t>(len >> 8);
  frame[3] = static_cast<std::uint8_t>(len);
  std::copy(body.begin(), body.end(), frame.begin() + 4);
  stream.write_all(frame);
}

Envelope frame_read(ByteStream& stream) {
  std::uint8_t header[4];
  if (read_exact(stream, header) != sizeof(header)) {
    throw Error(ErrorCode::UnexpectedEof, "stream ended inside the length prefix");
  }
  const std::uint32_t len = static_cast<std::uint32_t>(header[0]) << 24 |
                            static_cast<std::uint32_t>(header[1]) << 16 |
                            static_cast<std::uint32_t>(header[2]) << 8 | header[3];
  if (len == 0) throw Error(ErrorCode::FrameTooLarge, "zero-length frame");
  if (len > kMaxFrameBytes) {
    throw Error(ErrorCode::FrameTooLarge, "declared length " + std::to_string(len) + " exceeds 1 MiB");
  }
  std::vector<std::uint8_t> body(len);
  if (read_exact(stream, body) != len) {
    throw Error(ErrorCode::UnexpectedEof, "stream ended inside the frame body");
  }

  json doc;
  try {
    doc = json::parse(body.begin(), body.end(), [](int depth, json::parse_event_t, json&) {
      if (static_cast<std::size_t>(depth) > kMaxJsonDepth) malformed("JSON nesting too deep");
      return true;
    });
  } catch (const json::exception& e) {
    malformed(std::string("invalid JSON body: ") + e.what());
  }
  return envelope_from_json(doc);
}

json encode_point(const curve::ExtendedPoint& p) {
  auto aff = curve::to_affine(p);
  return json{{"x", aff.x.to_hex()}, {"y", aff.y.to_hex()}};
}

curve::ExtendedPoint decode_point(const json& doc) {
  BigNat x = bignat_field(doc, "x", kHex32);
  BigNat y = bignat_field(doc, "y", kHex32);
  if (x >= field_prime() || y >= field_prime()) {
    throw Error(ErrorCode::MalformedPoint, "coordinate is not reduced mod p");
  }
  curve::AffinePoint aff{FieldElement::from_bignat(x), FieldElement::from_bignat(y)};
  if (!curve::is_on_curve(aff)) throw Error(ErrorCode::MalformedPoint, "point is not on the curve");
  return curve::from_affine(aff);
}

json encode_attributes(const scheme::AttributeSet& attrs) {
  json out = json::array();
  for (const auto& a : attrs.values()) out.push_back(a.to_decimal());
  return out;
}

scheme::AttributeSet decode_attributes(const json& doc) {
  if (!doc.is_array()) malformed("'attributes' must be an array of decimal strings");
  std::vector<std::string> values;
  for (const auto& v : doc) {
    if (!v.is_string()) malformed("attribute values must be decimal strings");
    values.push_back(v.get<std::string>());
  }
  return scheme::AttributeSet::from_decimals(values);
}

json encode_credential(const scheme::EccCredential& cred) {
  return json{{"scheme", "ecc160"},
              {"attributes", wire::encode_attributes(cred.attributes)},
              {"C", encode_point(cred.commitment)},
              {"R", encode_point(cred.nonce_point)},
              {"z", cred.response.to_hex()}};
}

json encode_credential(const scheme::ModexpCredential& cred) {
  return json{{"scheme", "modexp1024"},
              {"attributes", wire::encode_attributes(cred.attributes)},
              {"sig", cred.signature.to_hex(kHex1024)}};
}

std::string credential_scheme(const json& doc) {
  const json& s = field(doc, "scheme");
  if (!s.is_string()) malformed("'scheme' must be a string");
  return s.get<std::string>();
}

scheme::EccCredential decode_ecc_credential(const json& doc) {
  if (credential_scheme(doc) != "ecc160") malformed("credential scheme is not ecc160");
  auto attrs = decode_attributes(field(doc, "attributes"));
  auto c = decode_point(field(doc, "C"));
  auto r = decode_point(field(doc, "R"));
  return {std::move(attrs), c, r, ScalarQ::from_hex(hex_field(doc, "z", kHex32))};
}

scheme::ModexpCredential decode_modexp_credential(const json& doc) {
  if (credential_scheme(doc) != "modexp1024") malformed("credential scheme is not modexp1024");
  auto attrs = decode_attributes(field(doc, "attributes"));
  return {std::move(attrs), bignat_field(doc, "sig", kHex1024)};
}

PublicKeys public_keys(const IssuerKeys& keys) {
  PublicKeys out;
  if (keys.ecc) out.ecc = keys.ecc->pub;
  if (keys.modexp) out.modexp = keys.modexp->public_key();
  return out;
}

json encode_issuer_keys(const IssuerKeys& keys) {
  json out = json::object();
  if (keys.ecc) {
    out["ecc160"] = {{"secret", keys.ecc->secret.to_hex()}, {"public", encode_point(keys.ecc->pub)}};
  }
  if (keys.modexp) {
    const auto& k = *keys.modexp;
    out["modexp1024"] = {{"p1", k.p1.to_hex(kHex512)}, {"p2", k.p2.to_hex(kHex512)},
                         {"n", k.n.to_hex(kHex1024)},  {"e", k.e.to_hex(kHex1024)},
                         {"d", k.d.to_hex(kHex1024)}};
  }
  return out;
}

IssuerKeys decode_issuer_keys(const json& doc) {
  if (!doc.is_object()) malformed("key file must be a JSON object");
  IssuerKeys keys;
  if (doc.contains("ecc160")) {
    const json& e = doc["ecc160"];
    scheme::EccIssuerKey k{ScalarQ::from_hex(hex_field(e, "secret", kHex32)), decode_point(field(e, "public"))};
    if (!curve::point_equal(curve::scalar_mul(k.secret, curve::base_point()), k.pub)) {
      malformed("ecc160 public key does not match its secret");
    }
    keys.ecc = k;
  }
  if (doc.contains("modexp1024")) {
    const json& m = doc["modexp1024"];
    scheme::ModexpIssuerKey k{bignat_field(m, "p1", kHex512), bignat_field(m, "p2", kHex512),
                              bignat_field(m, "n", kHex1024), bignat_field(m, "e", kHex1024),
                              bignat_field(m, "d", kHex1024)};
    if (k.p1 * k.p2 != k.n) malformed("modexp1024 modulus does not match its primes");
    keys.modexp = std::move(k);
  }
  if (!keys.ecc && !keys.modexp) malformed("key file holds no ecc160 or modexp1024 entry");
  return keys;
}

json encode_public_keys(const PublicKeys& keys) {
  json out = json::object();
  if (keys.ecc) out["ecc160"] = {{"public", encode_point(*keys.ecc)}};
  if (keys.modexp) {
    out["modexp1024"] = {{"n", keys.modexp->n.to_hex(kHex1024)}, {"e", keys.modexp->e.to_hex(kHex1024)}};
  }
  return out;
}

PublicKeys decode_public_keys(const json& doc) {
  if (!doc.is_object()) malformed("public key file must be a JSON object");
  PublicKeys keys;
  if (doc.contains("ecc160")) keys.ecc = decode_point(field(doc["ecc160"], "public"));
  if (doc.contains("modexp1024")) {
    const json& m = doc["modexp1024"];
    keys.modexp = scheme::ModexpPublicKey{bignat_field(m, "n", kHex1024), bignat_field(m, "e", kHex1024)};
  }
  if (!keys.ecc && !keys.modexp) malformed("public key file holds no ecc160 or modexp1024 entry");
  return keys;
}

}  // namespace abc::wire
