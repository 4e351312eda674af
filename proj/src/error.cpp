#include "scistory/error.hpp"

namespace scistory {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parameter: return "parameter";
    case ErrorCode::schema: return "schema";
    case ErrorCode::empty_document: return "empty_document";
    case ErrorCode::training_data: return "training_data";
    case ErrorCode::oversize_sentence: return "oversize_sentence";
    case ErrorCode::cross_boundary: return "cross_boundary";
    case ErrorCode::range: return "range";
    case ErrorCode::consistency: return "consistency";
    case ErrorCode::undefined_modularity: return "undefined_modularity";
    case ErrorCode::metadata: return "metadata";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::migration: return "migration";
    case ErrorCode::parse: return "parse";
    case ErrorCode::io: return "io";
    case ErrorCode::validation: return "validation";
    case ErrorCode::configuration: return "configuration";
    case ErrorCode::empty_collection: return "empty_collection";
    case ErrorCode::too_large: return "too_large";
  }
  return "unknown";
}

}  // namespace scistory
