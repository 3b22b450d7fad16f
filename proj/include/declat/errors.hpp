#pragma once

#include <stdexcept>
#include <string>

namespace declat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CycleError : Error { using Error::Error; };
struct DuplicateLabelError : Error { using Error::Error; };
struct UnknownElementError : Error { using Error::Error; };
struct SizeLimitError : Error { using Error::Error; };
struct NotIntervalClosedError : Error { using Error::Error; };
struct NotComparableError : Error { using Error::Error; };
struct NonDistributiveError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct InvalidProximityError : Error { using Error::Error; };
struct ForestMismatchError : Error { using Error::Error; };
struct NotLowerIdealError : Error { using Error::Error; };
struct NotAmpleError : Error { using Error::Error; };
struct NotMinimalError : Error { using Error::Error; };
struct UnknownRootError : Error { using Error::Error; };
struct MissingSlotError : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

} // namespace declat
