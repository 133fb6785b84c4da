#include "bloomtax/error.hpp"

namespace bloomtax {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingFile: return "MissingFile";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::DanglingPointer: return "DanglingPointer";
    case ErrorKind::UnknownSynset: return "UnknownSynset";
    case ErrorKind::PosMismatch: return "PosMismatch";
    case ErrorKind::UnknownVerb: return "UnknownVerb";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::UnknownLevel: return "UnknownLevel";
    case ErrorKind::UnknownDomain: return "UnknownDomain";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::InsufficientSources: return "InsufficientSources";
    case ErrorKind::InvalidThreshold: return "InvalidThreshold";
    case ErrorKind::EmptyLevel: return "EmptyLevel";
    case ErrorKind::MissingDomain: return "MissingDomain";
    case ErrorKind::MalformedGrammar: return "MalformedGrammar";
    case ErrorKind::NoVerbFound: return "NoVerbFound";
    case ErrorKind::LabelMismatch: return "LabelMismatch";
    case ErrorKind::UnknownClass: return "UnknownClass";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(to_string(kind)) + ": " + message);
}

}  // namespace bloomtax
