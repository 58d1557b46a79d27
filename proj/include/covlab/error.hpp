#pragma once

#include <stdexcept>
#include <string>

namespace covlab {

enum class ErrorKind {
    DegenerateInput,
    Unbounded,
    Empty,
    SingularMatrix,
    SubspacesNotComplementary,
    NotPointed,
    UnboundedIntersection,
    InfiniteChord,
    PInsideBody,
    NonSmoothPoint,
    StencilUnstable,
    RAtKink,
    ExponentFitAmbiguous,
    QuadratureTooCoarse,
    NotSynisothetic,
    ParameterConstraintViolated,
    SymmetricFactor,
    Io,
};

inline const char* error_kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::SubspacesNotComplementary: return "SubspacesNotComplementary";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::UnboundedIntersection: return "UnboundedIntersection";
    case ErrorKind::InfiniteChord: return "InfiniteChord";
    case ErrorKind::PInsideBody: return "PInsideBody";
    case ErrorKind::NonSmoothPoint: return "NonSmoothPoint";
    case ErrorKind::StencilUnstable: return "StencilUnstable";
    case ErrorKind::RAtKink: return "RAtKink";
    case ErrorKind::ExponentFitAmbiguous: return "ExponentFitAmbiguous";
    case ErrorKind::QuadratureTooCoarse: return "QuadratureTooCoarse";
    case ErrorKind::NotSynisothetic: return "NotSynisothetic";
    case ErrorKind::ParameterConstraintViolated: return "ParameterConstraintViolated";
    case ErrorKind::SymmetricFactor: return "SymmetricFactor";
    case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace covlab
