#pragma once

#include <stdexcept>
#include <string>

namespace qjf {

// All domain failures derive from Error and carry a stable machine-readable
// name; the CLI maps them to exit code 1 and prints the name, so the set of
// names is part of the external interface and must not be renamed casually.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define QJF_DEFINE_ERROR(NAME)                                 \
    class NAME : public Error {                                \
    public:                                                    \
        explicit NAME(const std::string& what = #NAME)         \
            : Error(#NAME, what) {}                            \
    };

QJF_DEFINE_ERROR(ZeroLeadingCoefficient)   // inverting a series with zero leading term
QJF_DEFINE_ERROR(NotExpandable)            // coefficient denominator has no constant term
QJF_DEFINE_ERROR(WindowTooSmall)           // symmetry scan found nothing checkable
QJF_DEFINE_ERROR(UnknownGenerator)         // name outside the generator table
QJF_DEFINE_ERROR(RuleTableUnverified)      // fitted derivative rule failed its cross-check
QJF_DEFINE_ERROR(NotQuasimodular)          // series not in the fitting span
QJF_DEFINE_ERROR(InsufficientPrecision)    // too few known coefficients to pin a fit
QJF_DEFINE_ERROR(SymmetryViolated)         // input fails the two-variable symmetry law
QJF_DEFINE_ERROR(ResidualNonzero)          // reconstruction left an unexplained remainder
QJF_DEFINE_ERROR(NotInSpan)                // ansatz system inconsistent at some order
QJF_DEFINE_ERROR(FitFailed)                // symbolic fit had no solution
QJF_DEFINE_ERROR(SourceRangeInsufficient)  // operator needs coefficients outside the window
QJF_DEFINE_ERROR(DimensionMismatch)        // operands live on different particle numbers
QJF_DEFINE_ERROR(ShiftMismatch)            // operator grading incompatible with request
QJF_DEFINE_ERROR(UnknownOperator)          // operator name outside the supported list
QJF_DEFINE_ERROR(UnsupportedClass)         // class outside the implemented operator family
QJF_DEFINE_ERROR(MissingTableEntry)        // invariant table has no entry for the key
QJF_DEFINE_ERROR(NegativeExponent)         // exponent parameters must be nonnegative
QJF_DEFINE_ERROR(MalformedInput)           // input text does not match its schema

#undef QJF_DEFINE_ERROR

}  // namespace qjf
