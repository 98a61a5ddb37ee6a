#include "qlinear/core/errors.hpp"

namespace qlinear {

Error::Error(ErrorClass cls, const std::string& what)
    : std::runtime_error(what), cls_(cls) {}

}  // namespace qlinear
