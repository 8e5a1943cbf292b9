#include "common/error.hpp"

namespace tscdn {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::io: return "io_error";
    case Errc::integrity: return "integrity_error";
    case Errc::parse: return "parse_error";
    case Errc::schema: return "schema_error";
    case Errc::empty_query: return "empty_query";
    case Errc::invalid_interval: return "invalid_interval";
    case Errc::empty_corpus: return "empty_corpus";
    case Errc::model_violation: return "model_violation";
    case Errc::not_found: return "not_found";
    case Errc::internal: return "internal_error";
  }
  return "internal_error";
}

}  // namespace tscdn
