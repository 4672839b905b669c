#pragma once

#include <stdexcept>
#include <string>

namespace cylrsk {

// Base for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input fails a structural precondition (bad partition, bad tableau, ...).
struct validation_error : error {
    explicit validation_error(const std::string& msg) : error(msg) {}
};

// A claimed (P,Q,W)-style encoding admits no consistent un-bumping.
struct not_in_image : error {
    explicit not_in_image(const std::string& msg) : error(msg) {}
};

// A numeric routine could not reach the requested tolerance within its caps.
struct tolerance_not_reached : error {
    explicit tolerance_not_reached(const std::string& msg) : error(msg) {}
};

}  // namespace cylrsk
