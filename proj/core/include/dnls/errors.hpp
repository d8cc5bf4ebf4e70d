#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Graph construction or graph/field association failures.
class graph_error : public error {
public:
    using error::error;
};

/// Inadmissible potentials or nonlinearities.
class model_error : public error {
public:
    using error::error;
};

/// Ray projection could not bracket or refine the fiber maximum.
class projection_error : public error {
public:
    using error::error;
};

/// Invalid run configuration; carries the offending key path.
class config_error : public error {
public:
    config_error(const std::string& path, const std::string& msg)
        : error(path + ": " + msg), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

} // namespace dnls
