#ifndef GNC_ERRORS_HPP
#define GNC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gnc {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Cayley-table validation.
struct NotLatinSquare : Error { using Error::Error; };
struct NotAssociative : Error { using Error::Error; };
struct NoIdentity : Error { using Error::Error; };
struct OrderTooLarge : Error { using Error::Error; };

// Group-spec / file ingestion.
struct ParseError : Error { using Error::Error; };
struct FileError : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };

// Exact-search size guards (domination number, graph isomorphism, isoclinism).
struct TooLarge : Error { using Error::Error; };

// Closed-form formulas whose preconditions do not hold on the instance.
struct HypothesisNotMet : Error { using Error::Error; };

// Isomorphism-theorem machinery.
struct SubgroupNotNormal : Error { using Error::Error; };
struct CenterSizeMismatch : Error { using Error::Error; };
struct VerificationFailed : Error { using Error::Error; };

} // namespace gnc

#endif
