#pragma once

#include <stdexcept>
#include <string>

namespace rropt {

// Base class for every domain error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NegativeEntry : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct AlphabetTooSmall : Error { using Error::Error; };
struct AlphabetTooLarge : Error { using Error::Error; };
struct InvalidBreakpoints : Error { using Error::Error; };
struct BlockNotNormalized : Error { using Error::Error; };
struct ThetaOnBoundary : Error { using Error::Error; };
struct SOutOfRange : Error { using Error::Error; };
struct NonFiniteObjective : Error { using Error::Error; };
struct NonPositiveFisher : Error { using Error::Error; };
struct DegenerateLikelihood : Error { using Error::Error; };

}  // namespace rropt
