#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace framepart {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One or more vectors are not unit-norm within tolerance.
class NormViolation : public Error {
public:
    struct Offender {
        std::size_t index;
        double norm;
    };

    explicit NormViolation(std::vector<Offender> offenders);

    const std::vector<Offender>& offenders() const noexcept { return offenders_; }

private:
    std::vector<Offender> offenders_;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class SymmetryViolation : public Error {
public:
    using Error::Error;
};

class EmptyBlockError : public Error {
public:
    EmptyBlockError() : Error("block must be nonempty") {}
};

class WeightMatrixError : public Error {
public:
    using Error::Error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class TooLargeForOracle : public Error {
public:
    using Error::Error;
};

/// Malformed vector file or report.
class FormatError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// A report's partition does not describe a partition of the input.
class IndexMismatch : public Error {
public:
    using Error::Error;
};

class DigestMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace framepart
