#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace vclass {

/// The seven actions a student character can perform.
enum class ActionKind : std::uint8_t {
    Notetaking = 0,
    Nodding,
    Sleeping,
    LookingAway,
    ElbowLeaning,
    LeaningForward,
    SittingUpright,
};

inline constexpr int kActionCount = 7;

inline constexpr std::array<ActionKind, kActionCount> kAllActions{
    ActionKind::Notetaking,    ActionKind::Nodding,        ActionKind::Sleeping,
    ActionKind::LookingAway,   ActionKind::ElbowLeaning,   ActionKind::LeaningForward,
    ActionKind::SittingUpright,
};

/// Valence of an action: +1 positive, -1 negative, 0 neutral.
/// The partition is fixed: {notetaking, nodding} positive,
/// {sleeping, looking_away, elbow_leaning} negative, the rest neutral.
constexpr int valence(ActionKind a) {
    switch (a) {
    case ActionKind::Notetaking:
    case ActionKind::Nodding:
        return +1;
    case ActionKind::Sleeping:
    case ActionKind::LookingAway:
    case ActionKind::ElbowLeaning:
        return -1;
    case ActionKind::LeaningForward:
    case ActionKind::SittingUpright:
        return 0;
    }
    return 0;
}

constexpr bool is_positive(ActionKind a) { return valence(a) > 0; }
constexpr bool is_negative(ActionKind a) { return valence(a) < 0; }
constexpr bool is_neutral(ActionKind a) { return valence(a) == 0; }

inline constexpr std::array<ActionKind, 2> kPositiveActions{ActionKind::Notetaking,
                                                            ActionKind::Nodding};
inline constexpr std::array<ActionKind, 3> kNegativeActions{
    ActionKind::Sleeping, ActionKind::LookingAway, ActionKind::ElbowLeaning};
inline constexpr std::array<ActionKind, 2> kNeutralActions{ActionKind::LeaningForward,
                                                           ActionKind::SittingUpright};

/// Canonical lowercase snake-case name used by the CSV format.
std::string_view action_name(ActionKind a);

/// Inverse of action_name. Empty optional for unknown names.
std::optional<ActionKind> action_from_name(std::string_view name);

/// Number of motion-clip variations per action. Each count must stay in
/// [1, 3]; the defaults give the busy actions more variety.
struct VariationTable {
    std::array<int, kActionCount> counts{3, 3, 2, 2, 2, 1, 1};

    constexpr int count(ActionKind a) const { return counts[static_cast<int>(a)]; }
    constexpr int& count(ActionKind a) { return counts[static_cast<int>(a)]; }

    constexpr bool valid() const {
        for (int c : counts)
            if (c < 1 || c > 3) return false;
        return true;
    }

    bool operator==(const VariationTable&) const = default;
};

} // namespace vclass
