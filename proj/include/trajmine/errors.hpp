#pragma once

#include <stdexcept>
#include <string>

namespace trajmine {

struct EncodingError : std::runtime_error {
    explicit EncodingError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace trajmine
