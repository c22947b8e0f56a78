#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ggd {

// Base of every error the library throws. kind() is a stable token used by
// the CLI when it prints machine-parsable error lines.
class Error : public std::runtime_error {
public:
    Error(std::string_view kind, const std::string& message);
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define GGD_DECLARE_ERROR(Name)                                             \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

GGD_DECLARE_ERROR(ParseError);
GGD_DECLARE_ERROR(ArgumentError);
GGD_DECLARE_ERROR(SplitError);
GGD_DECLARE_ERROR(ShapeError);
GGD_DECLARE_ERROR(TrainError);
GGD_DECLARE_ERROR(PairError);
GGD_DECLARE_ERROR(ConfigError);
GGD_DECLARE_ERROR(LeakError);
GGD_DECLARE_ERROR(IoError);

#undef GGD_DECLARE_ERROR

}  // namespace ggd
