#include "psgb/trace.hpp"

namespace psgb {

const char* to_string(TerminationStatus status) {
  switch (status) {
    case TerminationStatus::RelativeChange:
      return "RelativeChange";
    case TerminationStatus::ObjectiveTarget:
      return "ObjectiveTarget";
    case TerminationStatus::MaxIterations:
      return "MaxIterations";
  }
  return "Unknown";
}

}  // namespace psgb
