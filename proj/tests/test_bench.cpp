#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "wmark/bench.hpp"
#include "wmark/errors.hpp"

using namespace wmark;
namespace fs = std::filesystem;

namespace {

fs::path work_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "wmark_bench_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

// A small but real experiment setup on disk.
BenchConfig small_config(const fs::path& dir, const std::string& attacks = "brightness=+25%,rotate=180") {
    save_pgm_file(testutil::smooth_cover(1, 64, 64), (dir / "cover.pgm").string());
    save_pgm_file(watermark_to_image(testutil::random_mixed_watermark(2, 4, 4)), (dir / "mark.pgm").string());
    std::string text = "cover = cover.pgm\n"
                       "watermark = mark.pgm\n"
                       "key = 0xC0FFEE\n"
                       "output_dir = out\n"
                       "attacks = " + attacks + "\n";
    return parse_bench_config_text(text, dir.string());
}

}  // namespace

TEST(BenchConfig, ParsesEveryKey) {
    std::string text =
        "# comment\n"
        "cover = img/cover.pgm\n"
        "watermark = mark.pgm\n"
        "key = 12345\n"
        "output_dir = out\n"
        "schemes = dwt,spatial\n"
        "attacks = brightness=-25%,rotate=270\n"
        "gain.spatial = 3\n"
        "gain.dct = 30\n"
        "gain.dwt = 1.5\n"
        "pairing = cover\n"
        "brightness_mode = multiplicative\n";
    BenchConfig cfg = parse_bench_config_text(text, "/base");
    EXPECT_EQ(cfg.cover_path, "/base/img/cover.pgm");
    EXPECT_EQ(cfg.watermark_path, "/base/mark.pgm");
    EXPECT_EQ(cfg.key.master, 12345u);
    EXPECT_EQ(cfg.output_dir, "/base/out");
    ASSERT_EQ(cfg.schemes.size(), 2u);
    EXPECT_EQ(cfg.schemes[0], SchemeId::WaveletCdma);
    EXPECT_EQ(cfg.schemes[1], SchemeId::SpatialCdma);
    ASSERT_EQ(cfg.attacks.size(), 2u);
    EXPECT_EQ(cfg.attacks[0].label(), "brightness=-25%");
    EXPECT_EQ(cfg.attacks[0].brightness_mode, BrightnessMode::Multiplicative);
    EXPECT_EQ(cfg.attacks[1].label(), "rotate=270");
    EXPECT_EQ(cfg.gain_spatial, 3.0);
    EXPECT_EQ(cfg.gain_dct, 30.0);
    EXPECT_EQ(cfg.gain_dwt, 1.5);
    EXPECT_EQ(cfg.pairing, PairingMode::CoverVsAttacked);
    EXPECT_NE(cfg.config_hash, 0u);
}

TEST(BenchConfig, DefaultsCoverTheStandardMatrix) {
    BenchConfig cfg = parse_bench_config_text(
        "cover=c.pgm\nwatermark=w.pgm\nkey=1\noutput_dir=o\n", "");
    EXPECT_EQ(cfg.schemes.size(), 3u);
    ASSERT_EQ(cfg.attacks.size(), 6u);
    EXPECT_EQ(cfg.attacks[0].label(), "brightness=-25%");
    EXPECT_EQ(cfg.attacks[1].label(), "brightness=+25%");
    EXPECT_EQ(cfg.attacks[2].label(), "brightness=+50%");
    EXPECT_EQ(cfg.attacks[3].label(), "rotate=90");
    EXPECT_EQ(cfg.attacks[4].label(), "rotate=180");
    EXPECT_EQ(cfg.attacks[5].label(), "rotate=270");
    EXPECT_EQ(cfg.gain_spatial, kDefaultGainSpatial);
    EXPECT_EQ(cfg.gain_dct, kDefaultGainDct);
    EXPECT_EQ(cfg.gain_dwt, kDefaultGainDwt);
    EXPECT_EQ(cfg.pairing, PairingMode::Both);
}

TEST(BenchConfig, RejectsUnknownAndMalformedInput) {
    const std::string base = "cover=c\nwatermark=w\nkey=1\noutput_dir=o\n";
    EXPECT_THROW(parse_bench_config_text(base + "gian.dct = 30\n", ""), UsageError);
    EXPECT_THROW(parse_bench_config_text(base + "key = 2\n", ""), UsageError);      // duplicate
    EXPECT_THROW(parse_bench_config_text("cover=c\nkey=1\noutput_dir=o\n", ""), UsageError);  // missing
    EXPECT_THROW(parse_bench_config_text(base + "pairing = sideways\n", ""), UsageError);
    EXPECT_THROW(parse_bench_config_text(base + "schemes = \n", ""), UsageError);
    EXPECT_THROW(parse_bench_config_text(base + "gain.dwt = -2\n", ""), UsageError);
    EXPECT_THROW(parse_bench_config_text("cover=c\nwatermark=w\nkey=zzz\noutput_dir=o\n", ""), UsageError);
    EXPECT_THROW(parse_bench_config_text(base + "schemes = dwt,dwt\n", ""), UsageError);
}

TEST(BenchConfig, KeyAcceptsDecimalAndHex) {
    EXPECT_EQ(parse_key("42"), 42u);
    EXPECT_EQ(parse_key("0xC0FFEE"), 0xC0FFEEu);
    EXPECT_EQ(parse_key("0xffffffffffffffff"), 0xFFFFFFFFFFFFFFFFull);
    EXPECT_THROW(parse_key("12x"), UsageError);
    EXPECT_THROW(parse_key(""), UsageError);
}

TEST(AttackEntry, ParsesAndRejects) {
    EXPECT_EQ(parse_attack_entry("brightness=-25%", BrightnessMode::Additive).brightness_level, -0.25);
    EXPECT_EQ(parse_attack_entry("brightness=0.5", BrightnessMode::Additive).brightness_level, 0.5);
    EXPECT_EQ(parse_attack_entry("rotate=90", BrightnessMode::Additive).quarter_turns, 1);
    try {
        parse_attack_entry("rotate=45", BrightnessMode::Additive);
        FAIL() << "expected error";
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("quarter"), std::string::npos);
    }
    EXPECT_THROW(parse_attack_entry("brightness=150%", BrightnessMode::Additive), UsageError);
    EXPECT_THROW(parse_attack_entry("blur=3", BrightnessMode::Additive), UsageError);
}

TEST(Threshold, BoundaryAt128) {
    GrayImage img(2, 1);
    img.pixels = {127, 128};
    WatermarkBits wm = threshold_watermark_image(img);
    EXPECT_EQ(wm.bits[0], 0);
    EXPECT_EQ(wm.bits[1], 1);
}

TEST(Threshold, RoundTripsThroughImageWriter) {
    WatermarkBits wm = testutil::random_mixed_watermark(5, 6, 7);
    EXPECT_EQ(threshold_watermark_image(watermark_to_image(wm)), wm);
}

TEST(CsvEscape, QuotesOnlyWhenNeeded) {
    EXPECT_EQ(csv_escape("plain"), "plain");
    EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv_escape("line\nbreak"), "\"line\nbreak\"");
}

TEST(Fnv1a, KnownVectors) {
    EXPECT_EQ(fnv1a64("", 0), 0xCBF29CE484222325ULL);
    EXPECT_EQ(fnv1a64("a", 1), 0xAF63DC4C8601EC8CULL);
}

TEST(RunBench, RowCountFormulaHolds) {
    fs::path dir = work_dir("rowcount");
    BenchConfig cfg = small_config(dir);
    BenchReport report = run_bench(cfg);
    // schemes * (attacks * pairings + baseline)
    EXPECT_EQ(report.rows.size(), 3u * (2u * 2u + 1u));
    EXPECT_FALSE(report.any_cell_failed);
}

TEST(RunBench, BaselineRowsHaveZeroBer) {
    fs::path dir = work_dir("baseline");
    BenchConfig cfg = small_config(dir);
    BenchReport report = run_bench(cfg);
    int baselines = 0;
    for (const BenchRow& row : report.rows) {
        if (row.attack != "none") continue;
        ++baselines;
        EXPECT_EQ(row.pairing, "cover_vs_watermarked");
        ASSERT_TRUE(row.ber.has_value()) << row.scheme;
        EXPECT_EQ(*row.ber, 0.0) << row.scheme;
        ASSERT_TRUE(row.psnr_db.has_value());
        EXPECT_GT(*row.psnr_db, 20.0);
    }
    EXPECT_EQ(baselines, 3);
}

TEST(RunBench, ReportsAreByteReproducible) {
    fs::path dir = work_dir("determinism");
    BenchConfig cfg = small_config(dir);
    BenchReport first = run_bench(cfg);
    BenchReport second = run_bench(cfg);
    EXPECT_EQ(render_report_csv(first), render_report_csv(second));
    EXPECT_EQ(render_report_json(first), render_report_json(second));

    write_reports(first, cfg);
    std::string csv1 = read_file(fs::path(cfg.output_dir) / "report.csv");
    std::string json1 = read_file(fs::path(cfg.output_dir) / "report.json");
    write_reports(second, cfg);
    EXPECT_EQ(read_file(fs::path(cfg.output_dir) / "report.csv"), csv1);
    EXPECT_EQ(read_file(fs::path(cfg.output_dir) / "report.json"), json1);
}

TEST(RunBench, CsvHeaderIsFrozen) {
    fs::path dir = work_dir("header");
    BenchConfig cfg = small_config(dir);
    BenchReport report = run_bench(cfg);
    std::string csv = render_report_csv(report);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "scheme,attack,pairing,psnr_db,rmse,mae,ber,gain,key,brightness_mode,note");
}

// Full golden file for the deterministic fixture. Any change to column
// order, formatting or the numeric pipeline shows up here.
TEST(RunBench, GoldenReportFile) {
    const std::string golden =
        "scheme,attack,pairing,psnr_db,rmse,mae,ber,gain,key,brightness_mode,note\n"
        "spatial,none,cover_vs_watermarked,32.567779,6.000000,4.893555,0.000000,2,0xc0ffee,additive,\n"
        "spatial,brightness=+25%,cover_vs_attacked,11.961587,64.337003,64.056641,0.000000,2,0xc0ffee,additive,\n"
        "spatial,brightness=+25%,watermarked_vs_attacked,12.007204,64.000000,64.000000,0.000000,2,0xc0ffee,additive,\n"
        "spatial,rotate=180,cover_vs_attacked,24.070652,15.959069,13.114746,0.312500,2,0xc0ffee,additive,\n"
        "spatial,rotate=180,watermarked_vs_attacked,23.567343,16.911145,13.760254,0.312500,2,0xc0ffee,additive,\n"
        "dct,none,cover_vs_watermarked,47.091030,1.127168,0.464844,0.000000,25,0xc0ffee,additive,\n"
        "dct,brightness=+25%,cover_vs_attacked,12.005857,64.009925,64.000000,0.000000,25,0xc0ffee,additive,\n"
        "dct,brightness=+25%,watermarked_vs_attacked,12.007204,64.000000,64.000000,0.000000,25,0xc0ffee,additive,\n"
        "dct,rotate=180,cover_vs_attacked,24.660974,14.910475,12.350098,0.437500,25,0xc0ffee,additive,\n"
        "dct,rotate=180,watermarked_vs_attacked,24.636861,14.951925,12.376465,0.437500,25,0xc0ffee,additive,\n"
        "dwt,none,cover_vs_watermarked,41.688188,2.099572,1.659180,0.000000,1,0xc0ffee,additive,\n"
        "dwt,brightness=+25%,cover_vs_attacked,12.002533,64.034430,64.000000,0.000000,1,0xc0ffee,additive,\n"
        "dwt,brightness=+25%,watermarked_vs_attacked,12.007204,64.000000,64.000000,0.000000,1,0xc0ffee,additive,\n"
        "dwt,rotate=180,cover_vs_attacked,24.598727,15.017714,12.417969,0.437500,1,0xc0ffee,additive,\n"
        "dwt,rotate=180,watermarked_vs_attacked,24.518645,15.156814,12.497559,0.437500,1,0xc0ffee,additive,\n";
    fs::path dir = work_dir("golden");
    BenchConfig cfg = small_config(dir);
    EXPECT_EQ(render_report_csv(run_bench(cfg)), golden);
}

TEST(RunBench, PivotFilesMirrorTheMatrix) {
    fs::path dir = work_dir("pivots");
    BenchConfig cfg = small_config(dir);
    write_reports(run_bench(cfg), cfg);
    for (const char* name : {"pivot_psnr_cover_vs_attacked.csv", "pivot_psnr_watermarked_vs_attacked.csv",
                             "pivot_rmse_cover_vs_attacked.csv", "pivot_mae_cover_vs_attacked.csv",
                             "pivot_ber.csv"}) {
        std::string content = read_file(fs::path(cfg.output_dir) / name);
        ASSERT_FALSE(content.empty()) << name;
        EXPECT_EQ(content.substr(0, content.find('\n')), "attack,spatial,dct,dwt") << name;
        // header + one row per attack
        EXPECT_EQ(std::count(content.begin(), content.end(), '\n'), 1 + 2) << name;
    }
}

TEST(RunBench, OddRotationOfNonSquareCoverGivesNullCellsWithNote) {
    fs::path dir = work_dir("nonsquare");
    save_pgm_file(testutil::smooth_cover(3, 48, 32), (dir / "cover.pgm").string());
    save_pgm_file(watermark_to_image(testutil::random_mixed_watermark(4, 2, 2)), (dir / "mark.pgm").string());
    std::string text = "cover = cover.pgm\nwatermark = mark.pgm\nkey = 7\noutput_dir = out\n"
                       "attacks = rotate=90\n";
    BenchConfig cfg = parse_bench_config_text(text, dir.string());
    BenchReport report = run_bench(cfg);
    EXPECT_FALSE(report.any_cell_failed);
    int rotated_rows = 0;
    for (const BenchRow& row : report.rows) {
        if (row.attack != "rotate=90") continue;
        ++rotated_rows;
        EXPECT_FALSE(row.psnr_db.has_value());
        EXPECT_FALSE(row.rmse.has_value());
        EXPECT_FALSE(row.mae.has_value());
        EXPECT_TRUE(row.ber.has_value()) << row.scheme << "/" << row.pairing;
        EXPECT_NE(row.note.find("dimensions differ"), std::string::npos);
    }
    EXPECT_EQ(rotated_rows, 3 * 2);
}

TEST(RunBench, DegenerateWatermarkIsExcluded) {
    fs::path dir = work_dir("degenerate");
    save_pgm_file(testutil::smooth_cover(5, 64, 64), (dir / "cover.pgm").string());
    save_pgm_file(GrayImage(4, 4, 0), (dir / "mark.pgm").string());  // all black -> all zero bits
    std::string text = "cover = cover.pgm\nwatermark = mark.pgm\nkey = 7\noutput_dir = out\n";
    BenchConfig cfg = parse_bench_config_text(text, dir.string());
    try {
        run_bench(cfg);
        FAIL() << "expected degenerate watermark rejection";
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("degenerate"), std::string::npos);
    }
}

// +100% additive brightness saturates the whole image; correlation
// extraction then fails, the row is annotated and the run keeps going.
TEST(RunBench, CellFailureAnnotatesRowAndContinues) {
    fs::path dir = work_dir("cellfail");
    BenchConfig cfg = small_config(dir, "brightness=+100%,rotate=180");
    BenchReport report = run_bench(cfg);
    EXPECT_TRUE(report.any_cell_failed);
    EXPECT_EQ(report.rows.size(), 3u * (2u * 2u + 1u));  // run completed
    bool saw_failure_note = false;
    for (const BenchRow& row : report.rows) {
        if (row.scheme == "spatial" && row.attack == "brightness=+100%") {
            EXPECT_FALSE(row.ber.has_value());
            if (row.note.find("extract failed") != std::string::npos) saw_failure_note = true;
        }
        if (row.scheme == "dct" && row.attack == "rotate=180")
            EXPECT_TRUE(row.ber.has_value());  // later cells unaffected
    }
    EXPECT_TRUE(saw_failure_note);
}

TEST(RunBench, OversizedSpatialPayloadWarnsInReport) {
    fs::path dir = work_dir("budget");
    save_pgm_file(testutil::smooth_cover(6, 64, 64), (dir / "cover.pgm").string());
    save_pgm_file(watermark_to_image(testutil::random_mixed_watermark(7, 32, 32)),
                  (dir / "mark.pgm").string());
    std::string text = "cover = cover.pgm\nwatermark = mark.pgm\nkey = 9\noutput_dir = out\n"
                       "schemes = spatial\nattacks = rotate=180\n";
    BenchConfig cfg = parse_bench_config_text(text, dir.string());
    BenchReport report = run_bench(cfg);
    bool warned = false;
    for (const BenchRow& row : report.rows)
        if (row.attack == "none" && row.note.find("budget") != std::string::npos) warned = true;
    EXPECT_TRUE(warned);
}

TEST(RunBench, JsonCarriesEnvironmentStanza) {
    fs::path dir = work_dir("jsonenv");
    BenchConfig cfg = small_config(dir);
    BenchReport report = run_bench(cfg);
    std::string json = render_report_json(report);
    EXPECT_NE(json.find("\"tool_version\""), std::string::npos);
    EXPECT_NE(json.find("\"config_hash\""), std::string::npos);
    EXPECT_NE(json.find(kToolVersion), std::string::npos);
}
