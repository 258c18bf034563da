#pragma once

#include <string>

#include "wmark/image.hpp"

namespace wmark {

enum class BrightnessMode { Additive, Multiplicative };

enum class AttackKind { Brightness, Rotation };

/// One attack instance. For Brightness, level is a fraction in [-1, 1]
/// (-0.25 means "-25%"); for Rotation, quarter_turns is 1..3 clockwise.
struct AttackSpec {
    AttackKind kind = AttackKind::Brightness;
    double brightness_level = 0.0;
    BrightnessMode brightness_mode = BrightnessMode::Additive;
    int quarter_turns = 1;

    static AttackSpec brightness(double level, BrightnessMode mode = BrightnessMode::Additive);
    static AttackSpec rotation(int quarter_turns);

    /// CLI/report label, e.g. "brightness=-25%" or "rotate=180".
    std::string label() const;
};

/// Additive: clamp(round(p + level*255)). Multiplicative:
/// clamp(round(p * (1 + level))). Level must be in [-1, 1].
GrayImage attack_brightness(const GrayImage& img, double level, BrightnessMode mode);

/// Lossless clockwise quarter-turn remap; dims swap for odd turns.
GrayImage attack_rotate(const GrayImage& img, int quarter_turns);

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec);

}  // namespace wmark
