#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bloomtax {

enum class ErrorKind {
  // wordnet_store
  MissingFile,
  MalformedLine,
  DanglingPointer,
  UnknownSynset,
  PosMismatch,
  // similarity / classifier
  UnknownVerb,
  // verbset_builder
  MalformedRow,
  UnknownLevel,
  UnknownDomain,
  DomainMismatch,
  InsufficientSources,
  InvalidThreshold,
  EmptyLevel,
  MissingDomain,
  // question_chunker
  MalformedGrammar,
  NoVerbFound,
  // evaluation_harness
  LabelMismatch,
  UnknownClass,
  EmptyInput,
  // generic IO
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace bloomtax
