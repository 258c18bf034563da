#include "wmark/attacks.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wmark {

AttackSpec AttackSpec::brightness(double level, BrightnessMode mode) {
    AttackSpec s;
    s.kind = AttackKind::Brightness;
    s.brightness_level = level;
    s.brightness_mode = mode;
    return s;
}

AttackSpec AttackSpec::rotation(int quarter_turns) {
    if (quarter_turns < 1 || quarter_turns > 3)
        throw std::invalid_argument("rotation: quarter turns must be 1, 2 or 3");
    AttackSpec s;
    s.kind = AttackKind::Rotation;
    s.quarter_turns = quarter_turns;
    return s;
}

std::string AttackSpec::label() const {
    if (kind == AttackKind::Rotation) return "rotate=" + std::to_string(quarter_turns * 90);
    char buf[48];
    double pct = brightness_level * 100.0;
    // integral percentages print without a fraction, matching "-25%"
    if (pct == std::floor(pct))
        std::snprintf(buf, sizeof(buf), "brightness=%+d%%", static_cast<int>(pct));
    else
        std::snprintf(buf, sizeof(buf), "brightness=%+g%%", pct);
    return buf;
}

GrayImage attack_brightness(const GrayImage& img, double level, BrightnessMode mode) {
    if (!(level >= -1.0 && level <= 1.0))
        throw std::invalid_argument("brightness level must be in [-1, 1]");
    RealMatrix m = to_real(img);
    for (double& v : m.values)
        v = (mode == BrightnessMode::Additive) ? v + level * 255.0 : v * (1.0 + level);
    return from_real(m);
}

GrayImage attack_rotate(const GrayImage& img, int quarter_turns) {
    if (quarter_turns < 1 || quarter_turns > 3)
        throw std::invalid_argument("only quarter turns supported (1, 2 or 3)");
    GrayImage src = img;
    for (int t = 0; t < quarter_turns; ++t) {
        // one clockwise turn: (r, c) -> (c, H-1-r)
        GrayImage dst(src.height, src.width);
        for (int r = 0; r < src.height; ++r)
            for (int c = 0; c < src.width; ++c) dst.at(c, src.height - 1 - r) = src.at(r, c);
        src = std::move(dst);
    }
    return src;
}

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec) {
    if (spec.kind == AttackKind::Rotation) return attack_rotate(img, spec.quarter_turns);
    return attack_brightness(img, spec.brightness_level, spec.brightness_mode);
}

}  // namespace wmark
