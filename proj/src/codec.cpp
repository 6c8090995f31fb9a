#include "semcom/codec.hpp"

#include <cmath>

#include <httplib.h>
#include <json.hpp>

#include "semcom/errors.hpp"

namespace semcom {

ReferenceBpeCodec::ReferenceBpeCodec(BpeModel model) : model_(std::move(model)) {
  descriptor_.kind = CodecKind::ReferenceBpe;
  descriptor_.name = "reference-bpe";
}

EncodedPayload ReferenceBpeCodec::encode_text(const std::string& text) {
  return encode(model_, text);
}

std::string ReferenceBpeCodec::decode_ids(const std::vector<TokenId>& ids) {
  return decode(model_, ids);
}

BitVec ReferenceBpeCodec::to_bits(const EncodedPayload& payload) const {
  return ids_to_bits(payload, model_);
}

std::vector<TokenId> ReferenceBpeCodec::from_bits(const BitVec& bits) const {
  return bits_to_ids(bits, model_);
}

namespace {

struct Url {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& endpoint) {
  const std::size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos)
    throw ConfigError("endpoint must include a scheme: " + endpoint);
  const std::size_t path_start = endpoint.find('/', scheme + 3);
  if (path_start == std::string::npos) return {endpoint, "/"};
  return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

nlohmann::json post_json(const CodecDescriptor& descriptor, const nlohmann::json& body) {
  if (!descriptor.endpoint) throw ConfigError("remote codec needs an endpoint");
  const Url url = split_url(*descriptor.endpoint);
  httplib::Client client(url.base);
  const auto whole = std::max(descriptor.timeout_seconds, 0.001);
  const time_t secs = static_cast<time_t>(whole);
  const time_t usecs = static_cast<time_t>((whole - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  const httplib::Result res = client.Post(url.path, body.dump(), "application/json");
  if (!res)
    throw TransportError("POST " + *descriptor.endpoint + " failed: " +
                         httplib::to_string(res.error()));
  if (res->status != 200)
    throw ProtocolError("POST " + *descriptor.endpoint + " returned status " +
                        std::to_string(res->status));
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("response is not valid JSON: ") + e.what());
  }
}

}  // namespace

EncodedPayload remote_encode(const CodecDescriptor& descriptor, const std::string& text) {
  const nlohmann::json resp = post_json(descriptor, {{"op", "encode"}, {"text", text}});
  if (!resp.contains("ids") || !resp["ids"].is_array())
    throw ProtocolError("encode response missing \"ids\" array");
  if (!resp.contains("n") || !resp["n"].is_number_integer())
    throw ProtocolError("encode response missing integer \"n\"");
  EncodedPayload payload;
  for (const auto& v : resp["ids"]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      throw ProtocolError("encode response id is not a non-negative integer");
    const std::int64_t id = v.get<std::int64_t>();
    if (id >= static_cast<std::int64_t>(kRemoteMaxVocabId))
      throw ProtocolError("encode response id " + std::to_string(id) +
                          " exceeds the 16-bit wire budget");
    payload.ids.push_back(static_cast<TokenId>(id));
  }
  const std::int64_t n = resp["n"].get<std::int64_t>();
  if (n < 0) throw ProtocolError("encode response \"n\" is negative");
  payload.source_token_count = static_cast<std::size_t>(n);
  return payload;
}

std::string remote_decode(const CodecDescriptor& descriptor, const std::vector<TokenId>& ids) {
  nlohmann::json body = {{"op", "decode"}};
  body["ids"] = ids;
  const nlohmann::json resp = post_json(descriptor, body);
  if (!resp.contains("text") || !resp["text"].is_string())
    throw ProtocolError("decode response missing string \"text\"");
  return resp["text"].get<std::string>();
}

RemoteCodec::RemoteCodec(CodecDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  if (descriptor_.kind != CodecKind::Remote)
    throw ConfigError("RemoteCodec needs a Remote descriptor");
  if (!descriptor_.endpoint) throw ConfigError("remote codec needs an endpoint");
}

EncodedPayload RemoteCodec::encode_text(const std::string& text) {
  return remote_encode(descriptor_, text);
}

std::string RemoteCodec::decode_ids(const std::vector<TokenId>& ids) {
  return remote_decode(descriptor_, ids);
}

BitVec RemoteCodec::to_bits(const EncodedPayload& payload) const {
  return pack_ids(payload.ids, kRemoteIdWidthBits);
}

std::vector<TokenId> RemoteCodec::from_bits(const BitVec& bits) const {
  return unpack_ids(bits, kRemoteIdWidthBits, kRemoteMaxVocabId, kRemoteErasureId);
}

std::unique_ptr<Codec> make_codec(const CodecDescriptor& descriptor, const BpeModel* bpe) {
  switch (descriptor.kind) {
    case CodecKind::ReferenceBpe:
      if (!bpe) throw ConfigError("reference codec needs a trained bpe model");
      return std::make_unique<ReferenceBpeCodec>(*bpe);
    case CodecKind::Remote:
      return std::make_unique<RemoteCodec>(descriptor);
  }
  throw ConfigError("unknown codec kind");
}

}  // namespace semcom
