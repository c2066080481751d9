#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

// Base class for domain errors raised by the library.
class ConeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPointed : public ConeError {
public:
    NotPointed() : ConeError("cone is not pointed") {}
};

class NotFull : public ConeError {
public:
    explicit NotFull(int rank) : ConeError("cone is not full (rank " + std::to_string(rank) + ")"), rank(rank) {}
    int rank;
};

class TooLarge : public ConeError {
public:
    using ConeError::ConeError;
};

class NotMinimal : public ConeError {
public:
    using ConeError::ConeError;
};

class PointOutside : public ConeError {
public:
    PointOutside() : ConeError("point lies outside the cone") {}
};

class NotConePreserving : public ConeError {
public:
    NotConePreserving(int ray, int facet)
        : ConeError("A x_" + std::to_string(ray + 1) + " leaves the cone" +
                    (facet >= 0 ? " (violates facet " + std::to_string(facet + 1) + ")" : std::string())),
          ray(ray), facet(facet) {}
    int ray;    // 0-based ray index
    int facet;  // 0-based facet index, -1 when no single facet witnesses it
};

class NotPrimitive : public ConeError {
public:
    using ConeError::ConeError;
};

class NonConvergence : public ConeError {
public:
    using ConeError::ConeError;
};

class ConversionFailed : public ConeError {
public:
    using ConeError::ConeError;
};

class RootSelectionFailed : public ConeError {
public:
    using ConeError::ConeError;
};

}  // namespace conelab
