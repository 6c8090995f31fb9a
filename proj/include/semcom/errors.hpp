#pragma once

#include <stdexcept>
#include <string>

namespace semcom {

// Error taxonomy. The CLI maps these onto process exit codes:
//   IoError/ParseError -> 2, ConfigError -> 3, TransportError/ProtocolError -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : Error {
  using Error::Error;
};

// Malformed input data (corpus line, lexicon line, model file).
struct ParseError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

// Bit stream length not a multiple of the symbol width.
struct FramingError : Error {
  using Error::Error;
};

// Token id outside the representable range of the codec.
struct CorruptionError : Error {
  using Error::Error;
};

struct MeasurementError : Error {
  using Error::Error;
};

struct SizeError : Error {
  using Error::Error;
};

// Remote codec: could not reach the endpoint (connect failure, timeout).
struct TransportError : Error {
  using Error::Error;
};

// Remote codec: endpoint answered but violated the protocol schema.
struct ProtocolError : Error {
  using Error::Error;
};

}  // namespace semcom
