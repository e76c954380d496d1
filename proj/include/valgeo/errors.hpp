#pragma once

#include <stdexcept>
#include <string>

namespace valgeo {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// box calculus
struct MalformedInterval final : Error { using Error::Error; };
struct DimensionMismatch final : Error { using Error::Error; };
struct NotABox final : Error { using Error::Error; };
struct NegativeScale final : Error { using Error::Error; };

// decomposition
struct ComponentUndefinedAt final : Error { using Error::Error; };
struct InsufficientSamples final : Error { using Error::Error; };
struct CoordinateOutOfRange final : Error { using Error::Error; };

// planar kernel
struct NotConvex final : Error { using Error::Error; };
struct DuplicatePoint final : Error { using Error::Error; };
struct NonpositiveRadius final : Error { using Error::Error; };
struct DegeneratePoint final : Error { using Error::Error; };
struct EmptyBody final : Error { using Error::Error; };
struct InvalidBody final : Error { using Error::Error; };

// valuations
struct UnsupportedBody final : Error { using Error::Error; };
struct ZeroBaseValue final : Error { using Error::Error; };

// grid harness
struct BodyExceedsM final : Error { using Error::Error; };
struct EpsilonTooLarge final : Error { using Error::Error; };
struct NotVanishingOnBoxes final : Error { using Error::Error; };
struct SequenceNotConverging final : Error { using Error::Error; };

// documents / cli
struct MalformedDocument final : Error { using Error::Error; };
struct UnknownCommand final : Error { using Error::Error; };

} // namespace valgeo
