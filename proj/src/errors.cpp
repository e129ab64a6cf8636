#include "selberg/errors.hpp"

namespace selberg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::empty: return "empty-domain";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::divergent: return "divergent-sum";
    case ErrorKind::order: return "order";
    case ErrorKind::range: return "range";
    case ErrorKind::pole: return "pole";
    case ErrorKind::precision: return "precision";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::branch: return "branch";
    case ErrorKind::quality: return "quality";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + " error: " + what);
}

}  // namespace selberg
