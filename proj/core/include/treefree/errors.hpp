#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace treefree {

// Every failure the toolkit can report, with enough structure for the CLI
// to print witnesses and map outcomes to exit codes.
enum class Errc {
  NotSquare,
  NotSymmetric,
  NegativeDistance,
  NonzeroDiagonal,
  TriangleViolation,
  DuplicatePoints,
  FourPointViolation,
  NegativeAttachment,
  UnsupportedPoint,
  UnsortedInput,
  MissingBasePoint,
  UnboundedObjective,
  EmptyPart,
  CrossSeparationZero,
  BoundViolated,
  InvalidTree,
  InvalidMarks,
  NonpositiveWeight,
  UnknownLabel,
  MalformedInput,
  Internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, std::vector<std::size_t> witness = {})
      : std::runtime_error(std::move(message)),
        code_(code),
        witness_(std::move(witness)) {}

  Errc code() const { return code_; }

  // Point/vertex indices involved in the failure, when applicable:
  // a triple for a triangle violation, a pair for duplicates, etc.
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  Errc code_;
  std::vector<std::size_t> witness_;
};

}  // namespace treefree
