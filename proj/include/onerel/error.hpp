#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace onerel {

enum class ErrorKind {
  EmptyWord,
  UnknownGenerator,
  Syntax,
  DuplicateGenerator,
  UnknownGeneratorInRelator,
  NotOneRelator,
  TrivialRelator,
  NonzeroExponentSum,
  ZeroExponentSum,
  DepthLimitExceeded,
  Disconnected,
  NotFreeFace,
  InvalidSite,
  InvalidFiltration,
  NotATree,
  OverlappingTrees,
  SubsetCoversRelator,
  RayInsideFiltration,
  DisconnectedComplement,
  InvalidComplex,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failure; offset is the byte position in the input text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace onerel
