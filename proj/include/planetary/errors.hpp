#pragma once

#include <stdexcept>
#include <string>

namespace planetary {

// Every failure carries a short kind tag ("DegenerateNode", "NearCircular", ...)
// so callers and the CLI can dispatch on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace planetary
