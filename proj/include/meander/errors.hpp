#pragma once

#include <stdexcept>
#include <string>

namespace meander {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonZeroMeanError : public Error { public: using Error::Error; };
class DegenerateSupportError : public Error { public: using Error::Error; };
class NotNormalizableError : public Error { public: using Error::Error; };
class PeriodicLawError : public Error { public: using Error::Error; };
class HorizonTooLargeError : public Error { public: using Error::Error; };
class HorizonInsufficientError : public Error { public: using Error::Error; };
class ZeroSurvivalError : public Error { public: using Error::Error; };
class NotSymmetricError : public Error { public: using Error::Error; };
class QuadratureError : public Error { public: using Error::Error; };
class DegenerateFitError : public Error { public: using Error::Error; };
class BudgetExceededError : public Error { public: using Error::Error; };
class GridInsufficientError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class ComputeError : public Error { public: using Error::Error; };
class MissingArtifactsError : public Error { public: using Error::Error; };

} // namespace meander
