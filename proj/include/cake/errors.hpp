#pragma once

#include <stdexcept>
#include <string>

namespace cake {

struct CakeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EndpointOutOfRange : CakeError { using CakeError::CakeError; };
struct EndpointOutsidePiece : CakeError { using CakeError::CakeError; };
struct TargetExceedsAvailable : CakeError { using CakeError::CakeError; };
struct EmptyTrimSet : CakeError { using CakeError::CakeError; };
struct UnknownPiece : CakeError { using CakeError::CakeError; };
struct MalformedAssignment : CakeError { using CakeError::CakeError; };
struct TooManyAgents : CakeError { using CakeError::CakeError; };
struct EmptyResidue : CakeError { using CakeError::CakeError; };
struct InsufficientSnapshots : CakeError { using CakeError::CakeError; };
struct InvalidValuation : CakeError { using CakeError::CakeError; };
// Parameters that cannot be materialized or are out of range.
struct UnsupportedParameters : CakeError { using CakeError::CakeError; };

// Query budget ran out; callers report the last verified partial allocation.
struct BudgetExhausted : CakeError { using CakeError::CakeError; };

struct ParseError : CakeError {
    int line;
    ParseError(int line_no, const std::string& msg)
        : CakeError("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

// Fail-stop errors: a guarantee the protocol relies on did not hold.
struct ProtocolBug : CakeError { using CakeError::CakeError; };
struct BenchmarkInfeasible : ProtocolBug { using ProtocolBug::ProtocolBug; };
struct NoMarginalAgent : ProtocolBug { using ProtocolBug::ProtocolBug; };
struct SubCoreFailure : ProtocolBug { using ProtocolBug::ProtocolBug; };
struct CannotFormDivisions : ProtocolBug { using ProtocolBug::ProtocolBug; };
struct InvariantViolation : ProtocolBug { using ProtocolBug::ProtocolBug; };

}  // namespace cake
