#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace figura {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or empty input while reading an embedding file, corpus, or table.
class LoadError : public Error {
 public:
  using Error::Error;
};

// A token that is not in the embedding vocabulary.
class LookupError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Dialogue decision inconsistent with the session state.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Well-formed syntax carrying inconsistent data (dangling follow-ups, bad TSV values).
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-fatal diagnostics collected by operations that degrade gracefully.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
  if (sink != nullptr) sink->push_back(std::move(message));
}

}  // namespace figura
