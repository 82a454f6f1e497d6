#pragma once

#include <stdexcept>
#include <string>

namespace measalg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define MEASALG_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& what) : Error(what) {}     \
    }

MEASALG_DEFINE_ERROR(ParseError);
MEASALG_DEFINE_ERROR(MissingGeneratorValue);
MEASALG_DEFINE_ERROR(InvalidBase);
MEASALG_DEFINE_ERROR(NotCheckable);
MEASALG_DEFINE_ERROR(EmptyDiscretePart);
MEASALG_DEFINE_ERROR(NonTorsionAtom);
MEASALG_DEFINE_ERROR(GroupTooLarge);
MEASALG_DEFINE_ERROR(DomainViolation);
MEASALG_DEFINE_ERROR(DegenerateEqualAngles);
MEASALG_DEFINE_ERROR(NonDiscreteMeasure);
MEASALG_DEFINE_ERROR(TargetWeightZero);
MEASALG_DEFINE_ERROR(IntegerOverflow);

#undef MEASALG_DEFINE_ERROR

}  // namespace measalg
