#pragma once

#include "hullwalk/error.hpp"

#include <optional>

namespace hullwalk::test {

/// Code of the hullwalk::Error thrown by f, or nullopt if nothing was thrown.
template <class F>
std::optional<ErrorCode> error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace hullwalk::test
