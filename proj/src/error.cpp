#include "onerel/error.hpp"

namespace onerel {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyWord: return "EmptyWord";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::DuplicateGenerator: return "DuplicateGenerator";
    case ErrorKind::UnknownGeneratorInRelator: return "UnknownGeneratorInRelator";
    case ErrorKind::NotOneRelator: return "NotOneRelator";
    case ErrorKind::TrivialRelator: return "TrivialRelator";
    case ErrorKind::NonzeroExponentSum: return "NonzeroExponentSum";
    case ErrorKind::ZeroExponentSum: return "ZeroExponentSum";
    case ErrorKind::DepthLimitExceeded: return "DepthLimitExceeded";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NotFreeFace: return "NotFreeFace";
    case ErrorKind::InvalidSite: return "InvalidSite";
    case ErrorKind::InvalidFiltration: return "InvalidFiltration";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::OverlappingTrees: return "OverlappingTrees";
    case ErrorKind::SubsetCoversRelator: return "SubsetCoversRelator";
    case ErrorKind::RayInsideFiltration: return "RayInsideFiltration";
    case ErrorKind::DisconnectedComplement: return "DisconnectedComplement";
    case ErrorKind::InvalidComplex: return "InvalidComplex";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t offset, const std::string& message)
    : Error(ErrorKind::Syntax, message + " at offset " + std::to_string(offset)),
      offset_(offset) {}

}  // namespace onerel
