#pragma once

#include <stdexcept>
#include <string>

namespace slag {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Series algebra.
class ShapeError : public Error { using Error::Error; };
class SingularDivisionError : public Error { using Error::Error; };
class CompositionDomainError : public Error { using Error::Error; };
class TruncationError : public Error { using Error::Error; };

// Arc ingestion and topology.
class RegularityError : public Error { using Error::Error; };
class NotApplicableError : public Error { using Error::Error; };
class ResolutionError : public Error { using Error::Error; };
class NormalizationError : public Error { using Error::Error; };

// Atlas construction.
class ObstructionError : public Error {
 public:
  ObstructionError(const std::string& what, int shift) : Error(what), shift_(shift) {}
  int shift() const noexcept { return shift_; }

 private:
  int shift_;
};
class CoverageError : public Error { using Error::Error; };
class DisjointDomainError : public Error { using Error::Error; };

// Geometry.
class InvalidArgument : public Error { using Error::Error; };
class RankError : public Error { using Error::Error; };
class SingularLocusError : public Error { using Error::Error; };

// Serialization.
class SchemaError : public Error { using Error::Error; };
class VersionError : public SchemaError { using SchemaError::SchemaError; };
class IoError : public Error { using Error::Error; };

}  // namespace slag
