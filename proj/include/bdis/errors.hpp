#pragma once

#include <stdexcept>
#include <string>

namespace bdis {

/** Malformed or inconsistent experiment configuration. CLI maps this to exit code 2. */
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/** A numerical routine failed to meet its contract. CLI maps this to exit code 3. */
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bdis
