#include "vclass/actions.hpp"

namespace vclass {

std::string_view action_name(ActionKind a) {
    switch (a) {
    case ActionKind::Notetaking: return "notetaking";
    case ActionKind::Nodding: return "nodding";
    case ActionKind::Sleeping: return "sleeping";
    case ActionKind::LookingAway: return "looking_away";
    case ActionKind::ElbowLeaning: return "elbow_leaning";
    case ActionKind::LeaningForward: return "leaning_forward";
    case ActionKind::SittingUpright: return "sitting_upright";
    }
    return "unknown";
}

std::optional<ActionKind> action_from_name(std::string_view name) {
    for (ActionKind a : kAllActions)
        if (action_name(a) == name) return a;
    return std::nullopt;
}

} // namespace vclass
