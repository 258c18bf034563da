#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wmark/bench.hpp"
#include "wmark/errors.hpp"
#include "wmark/metrics.hpp"

namespace {

using namespace wmark;

std::string fmt_db(double v) {
    if (std::isinf(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void parse_size(const std::string& s, int& rows, int& cols) {
    std::size_t x = s.find('x');
    if (x == std::string::npos) throw UsageError("--size must be ROWSxCOLS, e.g. 8x8");
    try {
        rows = std::stoi(s.substr(0, x));
        cols = std::stoi(s.substr(x + 1));
    } catch (const std::exception&) {
        throw UsageError("--size must be ROWSxCOLS, e.g. 8x8");
    }
    if (rows <= 0 || cols <= 0) throw UsageError("--size dimensions must be positive");
}

struct EmbedArgs {
    std::string scheme, key, cover, watermark, output;
    double gain = -1.0;  // -1 means per-scheme default
};

int run_embed(const EmbedArgs& a) {
    SchemeId id = parse_scheme(a.scheme);
    bool keyed = id != SchemeId::DctMidband;
    if (keyed && a.key.empty()) throw UsageError("--key is required for the " + a.scheme + " scheme");
    WatermarkKey key{a.key.empty() ? 0 : parse_key(a.key)};
    Gain gain{a.gain > 0 ? a.gain : default_gain(id)};

    GrayImage cover = load_pgm_file(a.cover);
    WatermarkBits wm = threshold_watermark_image(load_pgm_file(a.watermark));

    std::vector<std::string> warnings;
    GrayImage marked;
    switch (id) {
        case SchemeId::SpatialCdma: marked = embed_spatial(cover, wm, key, gain, &warnings); break;
        case SchemeId::DctMidband: marked = embed_dct(cover, wm, gain); break;
        case SchemeId::WaveletCdma: marked = embed_dwt(cover, wm, key, gain, &warnings); break;
    }
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    save_pgm_file(marked, a.output);
    std::cout << "psnr_db=" << fmt_db(psnr(cover, marked)) << "\n";
    return 0;
}

struct ExtractArgs {
    std::string scheme, key, size, input, output, expected;
};

int run_extract(const ExtractArgs& a) {
    SchemeId id = parse_scheme(a.scheme);
    if (a.size.empty()) throw UsageError("--size is required (watermark dimensions, e.g. 8x8)");
    int rows = 0, cols = 0;
    parse_size(a.size, rows, cols);
    bool keyed = id != SchemeId::DctMidband;
    if (keyed && a.key.empty()) throw UsageError("--key is required for the " + a.scheme + " scheme");
    WatermarkKey key{a.key.empty() ? 0 : parse_key(a.key)};

    GrayImage img = load_pgm_file(a.input);
    WatermarkBits wm;
    switch (id) {
        case SchemeId::SpatialCdma: wm = extract_spatial(img, key, rows, cols); break;
        case SchemeId::DctMidband: wm = extract_dct(img, static_cast<std::size_t>(rows) * cols, rows, cols); break;
        case SchemeId::WaveletCdma: wm = extract_dwt(img, key, rows, cols); break;
    }
    save_pgm_file(watermark_to_image(wm), a.output);
    if (!a.expected.empty()) {
        WatermarkBits ref = threshold_watermark_image(load_pgm_file(a.expected));
        std::cout << "ber=" << fmt_db(ber(ref, wm)) << "\n";
    }
    return 0;
}

struct AttackArgs {
    std::string brightness, rotate, mode = "additive", input, output;
};

int run_attack(const AttackArgs& a) {
    if (a.brightness.empty() == a.rotate.empty())
        throw UsageError("pick exactly one of --brightness or --rotate");
    BrightnessMode mode;
    if (a.mode == "additive") mode = BrightnessMode::Additive;
    else if (a.mode == "multiplicative") mode = BrightnessMode::Multiplicative;
    else throw UsageError("--mode must be additive or multiplicative");

    AttackSpec spec = a.brightness.empty() ? parse_attack_entry("rotate=" + a.rotate, mode)
                                           : parse_attack_entry("brightness=" + a.brightness, mode);
    GrayImage img = load_pgm_file(a.input);
    save_pgm_file(apply_attack(img, spec), a.output);
    std::cout << "applied " << spec.label() << "\n";
    return 0;
}

int run_metrics(const std::string& ref_path, const std::string& test_path) {
    GrayImage a = load_pgm_file(ref_path);
    GrayImage b = load_pgm_file(test_path);
    MetricsReport m = compare_images(a, b);
    std::cout << "psnr_db=" << fmt_db(m.psnr_db) << "\n"
              << "rmse=" << fmt_db(m.rmse) << "\n"
              << "mae=" << fmt_db(m.mae) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wmark - image watermarking toolkit and attack benchmark"};
    app.require_subcommand(1);
    int exit_code = 0;

    EmbedArgs embed_args;
    auto* embed = app.add_subcommand("embed", "Embed a watermark into a cover image");
    embed->add_option("--scheme", embed_args.scheme, "spatial | dct | dwt")->required();
    embed->add_option("--k", embed_args.gain, "embedding gain (default: per-scheme)")
        ->check(CLI::PositiveNumber);
    embed->add_option("--key", embed_args.key, "64-bit key, decimal or 0x hex");
    embed->add_option("cover", embed_args.cover, "cover graymap")->required();
    embed->add_option("watermark", embed_args.watermark, "watermark graymap (thresholded at 128)")->required();
    embed->add_option("output", embed_args.output, "watermarked graymap to write")->required();
    embed->callback([&] { exit_code = run_embed(embed_args); });

    ExtractArgs extract_args;
    auto* extract = app.add_subcommand("extract", "Recover a watermark from an image");
    extract->add_option("--scheme", extract_args.scheme, "spatial | dct | dwt")->required();
    extract->add_option("--key", extract_args.key, "64-bit key, decimal or 0x hex");
    extract->add_option("--size", extract_args.size, "watermark dimensions ROWSxCOLS");
    extract->add_option("--expected", extract_args.expected, "reference mark; prints BER when given");
    extract->add_option("input", extract_args.input, "image to extract from")->required();
    extract->add_option("output", extract_args.output, "recovered mark graymap (0/255)")->required();
    extract->callback([&] { exit_code = run_extract(extract_args); });

    AttackArgs attack_args;
    auto* attack = app.add_subcommand("attack", "Apply a brightness or rotation attack");
    attack->add_option("--brightness", attack_args.brightness, "level, e.g. -25% or +0.5");
    attack->add_option("--rotate", attack_args.rotate, "degrees clockwise: 90 | 180 | 270");
    attack->add_option("--mode", attack_args.mode, "brightness mode: additive | multiplicative");
    attack->add_option("input", attack_args.input, "image to attack")->required();
    attack->add_option("output", attack_args.output, "attacked image to write")->required();
    attack->callback([&] { exit_code = run_attack(attack_args); });

    std::string metrics_ref, metrics_test;
    auto* metrics = app.add_subcommand("metrics", "PSNR / RMSE / MAE between two images");
    metrics->add_option("reference", metrics_ref, "reference graymap")->required();
    metrics->add_option("test", metrics_test, "test graymap")->required();
    metrics->callback([&] { exit_code = run_metrics(metrics_ref, metrics_test); });

    std::string bench_config;
    auto* bench = app.add_subcommand("bench", "Run the scheme x attack experiment matrix");
    bench->add_option("config", bench_config, "bench config file")->required();
    bench->callback([&] { exit_code = wmark::bench_main(bench_config); });

    try {
        app.parse(argc, argv);
        return exit_code;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const wmark::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const wmark::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
