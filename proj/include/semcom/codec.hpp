#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semcom/bpe.hpp"

namespace semcom {

enum class CodecKind { ReferenceBpe, Remote };

struct CodecDescriptor {
  CodecKind kind = CodecKind::ReferenceBpe;
  std::string name = "reference-bpe";
  std::optional<int> hidden_dim;       // embedding width of the model behind a Remote endpoint
  std::optional<std::string> endpoint;
  double timeout_seconds = 30.0;
};

// Uniform face over the reference BPE codec and a remote service, so the
// pipeline never branches on codec kind. encode/decode may throw
// TransportError / ProtocolError for Remote.
class Codec {
 public:
  virtual ~Codec() = default;
  virtual EncodedPayload encode_text(const std::string& text) = 0;
  virtual std::string decode_ids(const std::vector<TokenId>& ids) = 0;
  virtual BitVec to_bits(const EncodedPayload& payload) const = 0;
  virtual std::vector<TokenId> from_bits(const BitVec& bits) const = 0;
  virtual std::uint8_t wire_id() const = 0;  // goes into the frame header
  virtual const CodecDescriptor& descriptor() const = 0;
};

class ReferenceBpeCodec final : public Codec {
 public:
  explicit ReferenceBpeCodec(BpeModel model);
  EncodedPayload encode_text(const std::string& text) override;
  std::string decode_ids(const std::vector<TokenId>& ids) override;
  BitVec to_bits(const EncodedPayload& payload) const override;
  std::vector<TokenId> from_bits(const BitVec& bits) const override;
  std::uint8_t wire_id() const override { return 1; }
  const CodecDescriptor& descriptor() const override { return descriptor_; }
  const BpeModel& model() const { return model_; }

 private:
  BpeModel model_;
  CodecDescriptor descriptor_;
};

// Remote ids ride the wire as fixed 16-bit fields; 0xFFFF marks an erasure,
// so a service must keep its vocabulary below 0xFFFE.
inline constexpr int kRemoteIdWidthBits = 16;
inline constexpr TokenId kRemoteErasureId = 0xFFFF;
inline constexpr TokenId kRemoteMaxVocabId = 0xFFFE;

EncodedPayload remote_encode(const CodecDescriptor& descriptor, const std::string& text);
std::string remote_decode(const CodecDescriptor& descriptor, const std::vector<TokenId>& ids);

class RemoteCodec final : public Codec {
 public:
  // Throws ConfigError when the descriptor has no endpoint.
  explicit RemoteCodec(CodecDescriptor descriptor);
  EncodedPayload encode_text(const std::string& text) override;
  std::string decode_ids(const std::vector<TokenId>& ids) override;
  BitVec to_bits(const EncodedPayload& payload) const override;
  std::vector<TokenId> from_bits(const BitVec& bits) const override;
  std::uint8_t wire_id() const override { return 2; }
  const CodecDescriptor& descriptor() const override { return descriptor_; }

 private:
  CodecDescriptor descriptor_;
};

std::unique_ptr<Codec> make_codec(const CodecDescriptor& descriptor, const BpeModel* bpe);

}  // namespace semcom
