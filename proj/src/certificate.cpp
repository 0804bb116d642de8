#include "supersol/certificate.hpp"

namespace supersol {

std::string to_string(ConditionId id) {
  switch (id) {
    case ConditionId::prop31: return "prop31";
    case ConditionId::prop32: return "prop32";
    case ConditionId::condp: return "condp";
    case ConditionId::supercritical_smth: return "supercritical_smth";
    case ConditionId::subcritical_suff: return "subcritical_suff";
    case ConditionId::necessary_cond: return "necessary_cond";
    case ConditionId::global_condp: return "global_condp";
    case ConditionId::supersolution_direct: return "supersolution_direct";
  }
  return "unknown";
}

}  // namespace supersol
