#include "fnclass/parallel.hpp"

#include <cstdlib>
#include <string>

#include "fnclass/errors.hpp"

namespace fnclass {

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FNCLASS_THREADS"); env && *env) {
        try {
            std::size_t used = 0;
            const long v = std::stol(env, &used);
            if (used == std::string(env).size() && v > 0) return static_cast<unsigned>(v);
        } catch (const std::logic_error&) {
        }
        throw UsageError(std::string("FNCLASS_THREADS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

}  // namespace fnclass
