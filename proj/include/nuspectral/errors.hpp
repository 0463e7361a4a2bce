#pragma once

#include <stdexcept>
#include <string>

namespace nuspectral {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Metric matrix could not be factorized even after ridge regularization.
class ConditioningError : public Error {
public:
  explicit ConditioningError(const std::string& what) : Error(what) {}
};

/// Generalized eigenvalues fell outside the admissible [0, 1] range
/// by more than the hard tolerance.
class SpectralRangeError : public Error {
public:
  explicit SpectralRangeError(const std::string& what) : Error(what) {}
};

/// Spline evaluated outside its knot span beyond the guard region.
class ExtrapolationError : public Error {
public:
  explicit ExtrapolationError(const std::string& what) : Error(what) {}
};

/// Input vector does not belong to the grid a transform plan was built for.
class PlanMismatch : public Error {
public:
  explicit PlanMismatch(const std::string& what) : Error(what) {}
};

/// Taper set has no usable zero-frequency response to regress on.
class DegenerateTapers : public Error {
public:
  explicit DegenerateTapers(const std::string& what) : Error(what) {}
};

/// Analysis band is not contained in the signal band.
class BandRangeError : public Error {
public:
  explicit BandRangeError(const std::string& what) : Error(what) {}
};

}  // namespace nuspectral
