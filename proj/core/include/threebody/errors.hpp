#pragma once

#include <stdexcept>
#include <string>

namespace threebody {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or inconsistent parameter set (bad masses, order < 2, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A pairwise distance is exactly zero where the potential branch is singular.
class CollisionSingularity : public Error {
public:
    CollisionSingularity(int i, int j)
        : Error("collision singularity between bodies " + std::to_string(i + 1) + " and " +
                std::to_string(j + 1)),
          first(i), second(j) {}
    int first;
    int second;
};

/// The m3 quadratic degenerates (leading coefficient vanishes when m1 == m2).
class DegenerateMasses : public Error {
public:
    using Error::Error;
};

/// Closed forms with a (alpha - 2) prefactor pole evaluated at alpha = 2.
class AlphaTwoSingular : public Error {
public:
    AlphaTwoSingular() : Error("closed form has a pole at alpha = 2") {}
};

class NotSquarefree : public Error {
public:
    NotSquarefree() : Error("polynomial is not squarefree") {}
};

/// A square-root enclosure is too wide to decide the sign of a polynomial.
class IndeterminateEnclosure : public Error {
public:
    IndeterminateEnclosure() : Error("enclosure too wide to determine sign; refine bounds") {}
};

class NoProgress : public Error {
public:
    using Error::Error;
};

}  // namespace threebody
