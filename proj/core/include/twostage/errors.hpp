#pragma once

#include <stdexcept>
#include <string>

namespace twostage {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// A pivot fell below the scale-relative singularity threshold.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue iteration hit its cap; carries the best estimate seen.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

class ZeroDiagonal : public Error {
 public:
  using Error::Error;
};

class BadRelaxation : public Error {
 public:
  using Error::Error;
};

/// A = U - V does not hold within the reconstruction tolerance.
class SplittingMismatch : public Error {
 public:
  using Error::Error;
};

/// The inner splitting does not split the outer splitting's U.
class HypothesisMismatch : public Error {
 public:
  using Error::Error;
};

/// A^{-1} is not nonnegative with respect to the cone.
class NotMonotone : public Error {
 public:
  using Error::Error;
};

/// Two splittings that must share A do not.
class MismatchedA : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis required before iterating was violated.
class HypothesisFailed : public Error {
 public:
  HypothesisFailed(std::string hypothesis, const std::string& detail)
      : Error("hypothesis failed: " + hypothesis + (detail.empty() ? "" : " (" + detail + ")")),
        hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

class MaxIterations : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace twostage
