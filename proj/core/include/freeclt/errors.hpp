#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace freeclt {

/// Base class for all library errors. `name()` is a stable machine-readable
/// identifier; the CLI prints it on stderr ahead of the human-readable text.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define FREECLT_DEFINE_ERROR(NAME)                                           \
    class NAME : public Error {                                              \
    public:                                                                  \
        explicit NAME(const std::string& what) : Error(#NAME, what) {}       \
    };

FREECLT_DEFINE_ERROR(UnsupportedMoment)
FREECLT_DEFINE_ERROR(NonIntegrable)
FREECLT_DEFINE_ERROR(DegenerateMeasure)
FREECLT_DEFINE_ERROR(AtomicDensity)
FREECLT_DEFINE_ERROR(InadmissibleParameters)
FREECLT_DEFINE_ERROR(LowerHalfPlane)
FREECLT_DEFINE_ERROR(PrecisionLoss)
FREECLT_DEFINE_ERROR(EmptyTau)
FREECLT_DEFINE_ERROR(NoConvergence)
FREECLT_DEFINE_ERROR(PathAmbiguity)
FREECLT_DEFINE_ERROR(GridTooCoarse)
FREECLT_DEFINE_ERROR(DisjointGrids)
FREECLT_DEFINE_ERROR(EmptyWindow)
FREECLT_DEFINE_ERROR(MomentInconsistency)
FREECLT_DEFINE_ERROR(UnboundedSupport)
FREECLT_DEFINE_ERROR(NonIntegrableCube)
FREECLT_DEFINE_ERROR(OutsideSupport)

#undef FREECLT_DEFINE_ERROR

/// Rejection of a measure expression, reported with the byte offset of the
/// first offending character.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error("ParseError", what + " at offset " + std::to_string(offset)),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace freeclt
