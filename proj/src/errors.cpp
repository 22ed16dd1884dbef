#include "latinfo/errors.hpp"

namespace latinfo {

EstimationError::EstimationError(const std::string& message, std::string term_context)
    : Error(term_context.empty() ? message : message + " [term " + term_context + "]"),
      term_context_(std::move(term_context)) {}

}  // namespace latinfo
