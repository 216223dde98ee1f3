#pragma once

#include <stdexcept>
#include <string>

namespace iflux {

// Every failure raised by the library derives from Error so callers can catch
// one type at the boundary (the CLI does exactly that).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotSpdError : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public Error {
 public:
  RankDeficientError(const std::string& what, long rank, long n_cols)
      : Error(what), rank_(rank), n_cols_(n_cols) {}
  long rank() const { return rank_; }
  long n_cols() const { return n_cols_; }
  long deficiency() const { return n_cols_ - rank_; }

 private:
  long rank_;
  long n_cols_;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class EmptyTubeError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace iflux
