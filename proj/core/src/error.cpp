#include "ggd/error.hpp"

namespace ggd {

Error::Error(std::string_view kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

}  // namespace ggd
