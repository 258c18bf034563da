#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wmark/attacks.hpp"
#include "wmark/image.hpp"
#include "wmark/metrics.hpp"
#include "wmark/schemes.hpp"

namespace wmark {

inline constexpr const char* kToolVersion = "0.1.0";

/// Which reference image the quality metrics compare the attacked image
/// against. The source tables' pairing is unidentifiable, so Both is
/// the default and loses nothing.
enum class PairingMode { CoverVsAttacked, WatermarkedVsAttacked, Both };

/// Parsed bench configuration. The config file is flat "key = value"
/// text, '#' comments, unknown keys are hard errors. Keys:
///
///   cover           path to the cover graymap                (required)
///   watermark       path to the watermark graymap, whose     (required)
///                   pixels are thresholded at 128 into bits
///   key             64-bit key, decimal or 0x hex            (required)
///   output_dir      report directory, created if missing     (required)
///   schemes         comma list of spatial,dct,dwt            (default: all three)
///   attacks         comma list of brightness=<level>% and    (default: the six-attack
///                   rotate=90|180|270 entries                 matrix: -25%,+25%,+50%,
///                                                             90,180,270)
///   gain.spatial    embedding gain per scheme                (defaults: 2, 25, 1)
///   gain.dct
///   gain.dwt
///   pairing         cover | watermarked | both               (default: both)
///   brightness_mode additive | multiplicative                (default: additive)
///
/// Relative paths resolve against the config file's directory.
struct BenchConfig {
    std::string cover_path;
    std::string watermark_path;
    std::vector<SchemeId> schemes;
    std::vector<AttackSpec> attacks;
    double gain_spatial = kDefaultGainSpatial;
    double gain_dct = kDefaultGainDct;
    double gain_dwt = kDefaultGainDwt;
    WatermarkKey key;
    PairingMode pairing = PairingMode::Both;
    BrightnessMode brightness_mode = BrightnessMode::Additive;
    std::string output_dir;
    std::uint64_t config_hash = 0;  // FNV-1a64 of the raw config bytes

    double gain_for(SchemeId id) const;
};

/// One report row. Null metric cells (dimension-mismatched pairings,
/// failed extraction) stay empty in CSV and null in JSON, with the
/// reason in note.
struct BenchRow {
    std::string scheme;
    std::string attack;   // "none" for the per-scheme baseline
    std::string pairing;  // cover_vs_watermarked | cover_vs_attacked | watermarked_vs_attacked
    std::optional<double> psnr_db;
    std::optional<double> rmse;
    std::optional<double> mae;
    std::optional<double> ber;
    double gain = 0.0;
    std::uint64_t key = 0;
    std::string brightness_mode;
    std::string note;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::string tool_version = kToolVersion;
    std::uint64_t config_hash = 0;
    bool any_cell_failed = false;
};

BenchConfig parse_bench_config_file(const std::string& path);
BenchConfig parse_bench_config_text(const std::string& text, const std::string& base_dir);

/// Runs the full matrix: per scheme embed once, then per attack apply,
/// measure under each requested pairing and re-extract. Cell failures
/// annotate the row and the run continues.
BenchReport run_bench(const BenchConfig& cfg);

/// Writes report.csv, report.json and the per-metric pivot CSVs into
/// cfg.output_dir. Byte-reproducible for identical config and inputs.
void write_reports(const BenchReport& report, const BenchConfig& cfg);

/// Full bench command: parse, run, write. Returns the CLI exit code
/// (0 ok, 3 when any cell failed).
int bench_main(const std::string& config_path);

/// bit = 1 iff pixel >= 128.
WatermarkBits threshold_watermark_image(const GrayImage& img);

/// Inverse writer used by the extract command: 0 -> 0, 1 -> 255.
GrayImage watermark_to_image(const WatermarkBits& wm);

/// RFC-4180-style field quoting.
std::string csv_escape(const std::string& field);

/// 64-bit key from "12345" or "0xC0FFEE".
std::uint64_t parse_key(const std::string& text);

std::uint64_t fnv1a64(const void* data, std::size_t n);

std::string render_report_csv(const BenchReport& report);
std::string render_report_json(const BenchReport& report);

/// "brightness=-25%" / "rotate=180" -> AttackSpec (brightness entries
/// pick up `mode`). Free-form levels accepted: "brightness=-0.25" and
/// "brightness=+37.5%" both work.
AttackSpec parse_attack_entry(const std::string& entry, BrightnessMode mode);

}  // namespace wmark
