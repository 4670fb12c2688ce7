#pragma once

#include <stdexcept>
#include <string>

namespace wittdiv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define WITTDIV_DEFINE_ERROR(Name)                                         \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

/// An exact division by p^m left a remainder. Signals a bug: the Witt
/// polynomials are integral.
WITTDIV_DEFINE_ERROR(InexactDivision);
WITTDIV_DEFINE_ERROR(InvalidArgument);
WITTDIV_DEFINE_ERROR(RingMismatch);
WITTDIV_DEFINE_ERROR(LengthMismatch);
WITTDIV_DEFINE_ERROR(ExponentOutOfChart);
WITTDIV_DEFINE_ERROR(ChartMismatch);
/// A Witt sum or scaling left the section space. Would falsify submodule
/// closure; tests treat it as a failure.
WITTDIV_DEFINE_ERROR(MembershipViolation);
WITTDIV_DEFINE_ERROR(EnumerationBoundExceeded);
WITTDIV_DEFINE_ERROR(WindowIncomplete);
WITTDIV_DEFINE_ERROR(DivisorNotCompatible);
WITTDIV_DEFINE_ERROR(OrderDivisibleByP);
WITTDIV_DEFINE_ERROR(NotACocycle);
WITTDIV_DEFINE_ERROR(NotCartier);
WITTDIV_DEFINE_ERROR(ParseError);

#undef WITTDIV_DEFINE_ERROR

}  // namespace wittdiv
