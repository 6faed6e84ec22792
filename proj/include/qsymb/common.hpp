#pragma once

#include <stdexcept>
#include <string>

namespace qsymb {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal invariant check. These guard mathematical identities the code relies
// on (unique solvability, triangularity, membership assertions); a failure means
// a bug, not bad user input, so they throw unconditionally in all build types.
#define QS_CHECK(cond, msg)                                                        \
    do {                                                                           \
        if (!(cond))                                                               \
            throw ::qsymb::error(std::string("invariant failed: ") + (msg) +       \
                                 " [" + __FILE__ + ":" + std::to_string(__LINE__) + \
                                 "]");                                             \
    } while (0)

} // namespace qsymb
