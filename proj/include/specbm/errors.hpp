#pragma once

#include <stdexcept>
#include <string>

namespace specbm {

/** Base class for all errors thrown by this library. */
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Invalid user-supplied input: bad parameters, malformed files, or
 * inconsistent configuration. CLI maps this to exit code 2.
 */
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/**
 * A pipeline could not produce a result on this input (e.g. the disjoint-set
 * selection found fewer than k compatible candidates). CLI maps this to exit
 * code 1.
 */
class PipelineError : public Error {
public:
    explicit PipelineError(const std::string& what) : Error(what) {}
};

/**
 * An iterative solver failed to meet its tolerance within the configured
 * iteration cap, or a rank requirement was not met. CLI maps this to exit
 * code 1.
 */
class SolverError : public PipelineError {
public:
    explicit SolverError(const std::string& what) : PipelineError(what) {}
};

}  // namespace specbm
