#pragma once

#include <stdexcept>
#include <string>

namespace yieldctl {

struct Error : std::runtime_error {
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace yieldctl
