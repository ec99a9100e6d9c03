#pragma once

#include <stdexcept>

namespace growthlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// finite field construction / arithmetic
struct NotPrime : Error { using Error::Error; };
struct ReducibleModulus : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct ZeroInverse : Error { using Error::Error; };

// group / set operations
struct SpecMismatch : Error { using Error::Error; };
struct UnsupportedFamily : Error { using Error::Error; };
struct UnsupportedSpec : Error { using Error::Error; };
struct NotASubgroup : Error { using Error::Error; };
struct CentralElement : Error { using Error::Error; };

// resource caps
struct TooLarge : Error { using Error::Error; };
struct ResultCapExceeded : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

// verifier preconditions and outcomes
struct PreconditionViolated : Error { using Error::Error; };
struct NotGenerating : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct EmptySet : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };
struct UnknownGroup : Error { using Error::Error; };
struct CoverNotReached : Error { using Error::Error; };
struct SearchFailed : Error { using Error::Error; };

// input handling
struct ParseError : Error { using Error::Error; };

} // namespace growthlab
