#pragma once

#include <stdexcept>
#include <string>

namespace mcf {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (header, row, or token level).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Filesystem-level failure (missing file, unwritable path).
class IoError : public Error {
public:
  using Error::Error;
};

/// A vertex whose local neighbourhood carries no usable geometry
/// (zero measure, collapsed ring). Carries the offending vertex.
class DegenerateGeometryError : public Error {
public:
  DegenerateGeometryError(int vertex, const std::string& what)
      : Error(what), vertex_(vertex) {}
  int vertex() const { return vertex_; }

private:
  int vertex_;
};

/// Numerical failure that is not tied to a single vertex
/// (solver breakdown, unusable fit window, ...).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Invalid experiment configuration or command line usage.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A pipeline stage failed; carries the stage name for the manifest.
class StageError : public Error {
public:
  StageError(const std::string& stage, const std::string& what)
      : Error(what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

} // namespace mcf
