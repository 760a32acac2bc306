#pragma once

#include <stdexcept>
#include <string>

namespace odc {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or corrupt container data (bad magic, bad version, payload
/// inconsistent with the declared length, ...).
class format_error : public error {
public:
    explicit format_error(const std::string& what) : error(what) {}
};

/// Filesystem-level failures; the message always names the path.
class io_error : public error {
public:
    explicit io_error(const std::string& what) : error(what) {}
};

} // namespace odc
