#ifndef CGSMOOTH_ERRORS_HPP
#define CGSMOOTH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cgsmooth {

/// Invalid parameters or an inconsistent problem description.
class SpecError : public std::invalid_argument {
public:
    explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

/// Mismatched vector/operator sizes.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A degree d_i <= 0 where a positive diagonal is required.
class SingularDegreeError : public std::domain_error {
public:
    explicit SingularDegreeError(const std::string& what) : std::domain_error(what) {}
};

/// Guard against materializing a dense matrix beyond the oracle size limit.
class SizeError : public std::length_error {
public:
    explicit SizeError(const std::string& what) : std::length_error(what) {}
};

/// Metric is undefined for the given reference (e.g. PSNR of a constant signal).
class UndefinedMetricError : public std::domain_error {
public:
    explicit UndefinedMetricError(const std::string& what) : std::domain_error(what) {}
};

/// Filesystem / parsing failures on signal and report files.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cgsmooth

#endif
