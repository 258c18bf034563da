#include "wmark/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <json.hpp>

#include "wmark/errors.hpp"

namespace fs = std::filesystem;

namespace wmark {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw UsageError("trailing characters in " + what + " '" + s + "'");
        return v;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " '" + s + "'");
    }
}

std::string mode_name(BrightnessMode m) { return m == BrightnessMode::Additive ? "additive" : "multiplicative"; }

std::string pairing_label(PairingMode p) {
    return p == PairingMode::CoverVsAttacked ? "cover_vs_attacked" : "watermarked_vs_attacked";
}

std::string fmt_fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt_metric(const std::optional<double>& v) {
    if (!v) return "";
    if (std::isinf(*v)) return "inf";
    return fmt_fixed(*v);
}

std::string fmt_gain(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string fmt_key(std::uint64_t k) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(k));
    return buf;
}

bool verbose_enabled() {
    const char* v = std::getenv("WMARK_VERBOSE");
    return v && *v && std::string(v) != "0";
}

GrayImage embed_any(SchemeId id, const GrayImage& cover, const WatermarkBits& wm, WatermarkKey key, Gain gain,
                    std::vector<std::string>* warnings) {
    switch (id) {
        case SchemeId::SpatialCdma: return embed_spatial(cover, wm, key, gain, warnings);
        case SchemeId::DctMidband: return embed_dct(cover, wm, gain);
        case SchemeId::WaveletCdma: return embed_dwt(cover, wm, key, gain, warnings);
    }
    throw std::logic_error("unreachable");
}

WatermarkBits extract_any(SchemeId id, const GrayImage& img, WatermarkKey key, int wm_rows, int wm_cols) {
    switch (id) {
        case SchemeId::SpatialCdma: return extract_spatial(img, key, wm_rows, wm_cols);
        case SchemeId::DctMidband:
            return extract_dct(img, static_cast<std::size_t>(wm_rows) * wm_cols, wm_rows, wm_cols);
        case SchemeId::WaveletCdma: return extract_dwt(img, key, wm_rows, wm_cols);
    }
    throw std::logic_error("unreachable");
}

void append_note(std::string& note, const std::string& more) {
    if (more.empty()) return;
    if (!note.empty()) note += "; ";
    note += more;
}

}  // namespace

double BenchConfig::gain_for(SchemeId id) const {
    switch (id) {
        case SchemeId::SpatialCdma: return gain_spatial;
        case SchemeId::DctMidband: return gain_dct;
        case SchemeId::WaveletCdma: return gain_dwt;
    }
    return 1.0;
}

std::uint64_t parse_key(const std::string& text) {
    std::string v = trim(text);
    if (v.empty()) throw UsageError("key must be a decimal or 0x-prefixed hex 64-bit integer");
    try {
        std::size_t used = 0;
        std::uint64_t k;
        if (v.size() > 2 && v[0] == '0' && (v[1] == 'x' || v[1] == 'X')) {
            k = std::stoull(v.substr(2), &used, 16);
            used += 2;
        } else {
            k = std::stoull(v, &used, 10);
        }
        if (used != v.size()) throw UsageError("trailing characters in key '" + v + "'");
        return k;
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("cannot parse key '" + v + "' (decimal or 0x-prefixed hex)");
    }
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

AttackSpec parse_attack_entry(const std::string& entry, BrightnessMode mode) {
    std::string e = trim(entry);
    std::size_t eq = e.find('=');
    if (eq == std::string::npos)
        throw UsageError("bad attack '" + e + "' (expected brightness=<level>% or rotate=<degrees>)");
    std::string name = trim(e.substr(0, eq));
    std::string value = trim(e.substr(eq + 1));
    if (name == "rotate") {
        if (value == "90") return AttackSpec::rotation(1);
        if (value == "180") return AttackSpec::rotation(2);
        if (value == "270") return AttackSpec::rotation(3);
        throw UsageError("rotate=" + value + ": only quarter turns supported (90, 180, 270)");
    }
    if (name == "brightness") {
        std::string num = value;
        bool percent = false;
        if (!num.empty() && num.back() == '%') {
            percent = true;
            num.pop_back();
        }
        double level = parse_double(num, "brightness level");
        if (percent) level /= 100.0;
        if (!(level >= -1.0 && level <= 1.0))
            throw UsageError("brightness level " + value + " out of range [-100%, 100%]");
        return AttackSpec::brightness(level, mode);
    }
    throw UsageError("unknown attack '" + name + "' (expected brightness or rotate)");
}

BenchConfig parse_bench_config_text(const std::string& text, const std::string& base_dir) {
    BenchConfig cfg;
    cfg.config_hash = fnv1a64(text.data(), text.size());

    std::map<std::string, std::string> kv;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (kv.count(key)) throw UsageError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        kv[key] = value;
    }

    static const std::set<std::string> known = {"cover",    "watermark", "key",       "output_dir",
                                                "schemes",  "attacks",   "gain.spatial", "gain.dct",
                                                "gain.dwt", "pairing",   "brightness_mode"};
    for (const auto& [k, v] : kv)
        if (!known.count(k))
            throw UsageError("unknown config key '" + k + "' (typo? unknown keys are rejected)");

    auto require = [&](const char* k) -> std::string {
        auto it = kv.find(k);
        if (it == kv.end() || it->second.empty()) throw UsageError(std::string("config is missing '") + k + "'");
        return it->second;
    };
    auto resolve = [&](const std::string& p) {
        fs::path path(p);
        if (path.is_absolute() || base_dir.empty()) return path.string();
        return (fs::path(base_dir) / path).string();
    };

    cfg.cover_path = resolve(require("cover"));
    cfg.watermark_path = resolve(require("watermark"));
    cfg.key.master = parse_key(require("key"));
    cfg.output_dir = resolve(require("output_dir"));

    if (kv.count("brightness_mode")) {
        const std::string& m = kv["brightness_mode"];
        if (m == "additive") cfg.brightness_mode = BrightnessMode::Additive;
        else if (m == "multiplicative") cfg.brightness_mode = BrightnessMode::Multiplicative;
        else throw UsageError("brightness_mode must be additive or multiplicative, got '" + m + "'");
    }

    if (kv.count("schemes")) {
        for (const std::string& s : split_list(kv["schemes"], ',')) {
            SchemeId id = parse_scheme(s);
            if (std::find(cfg.schemes.begin(), cfg.schemes.end(), id) != cfg.schemes.end())
                throw UsageError("duplicate scheme '" + s + "'");
            cfg.schemes.push_back(id);
        }
    } else {
        cfg.schemes = {SchemeId::SpatialCdma, SchemeId::DctMidband, SchemeId::WaveletCdma};
    }
    if (cfg.schemes.empty()) throw UsageError("schemes list is empty");

    if (kv.count("attacks")) {
        std::set<std::string> seen;
        for (const std::string& a : split_list(kv["attacks"], ',')) {
            AttackSpec spec = parse_attack_entry(a, cfg.brightness_mode);
            if (!seen.insert(spec.label()).second) throw UsageError("duplicate attack '" + spec.label() + "'");
            cfg.attacks.push_back(spec);
        }
    } else {
        for (double lv : {-0.25, 0.25, 0.50}) cfg.attacks.push_back(AttackSpec::brightness(lv, cfg.brightness_mode));
        for (int t : {1, 2, 3}) cfg.attacks.push_back(AttackSpec::rotation(t));
    }
    if (cfg.attacks.empty()) throw UsageError("attacks list is empty");

    if (kv.count("gain.spatial")) cfg.gain_spatial = parse_double(kv["gain.spatial"], "gain.spatial");
    if (kv.count("gain.dct")) cfg.gain_dct = parse_double(kv["gain.dct"], "gain.dct");
    if (kv.count("gain.dwt")) cfg.gain_dwt = parse_double(kv["gain.dwt"], "gain.dwt");
    for (double g : {cfg.gain_spatial, cfg.gain_dct, cfg.gain_dwt})
        if (!(g > 0.0) || !std::isfinite(g)) throw UsageError("gains must be positive and finite");

    if (kv.count("pairing")) {
        const std::string& p = kv["pairing"];
        if (p == "cover") cfg.pairing = PairingMode::CoverVsAttacked;
        else if (p == "watermarked") cfg.pairing = PairingMode::WatermarkedVsAttacked;
        else if (p == "both") cfg.pairing = PairingMode::Both;
        else throw UsageError("pairing must be cover, watermarked or both, got '" + p + "'");
    }

    return cfg;
}

BenchConfig parse_bench_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open config " + path);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_bench_config_text(text, fs::path(path).parent_path().string());
}

WatermarkBits threshold_watermark_image(const GrayImage& img) {
    WatermarkBits wm(img.height, img.width);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) wm.bits[i] = img.pixels[i] >= 128 ? 1 : 0;
    return wm;
}

GrayImage watermark_to_image(const WatermarkBits& wm) {
    GrayImage img(wm.cols, wm.rows);
    for (std::size_t i = 0; i < wm.bit_count(); ++i) img.pixels[i] = wm.bits[i] ? 255 : 0;
    return img;
}

namespace {

void validate_compatibility(const BenchConfig& cfg, const GrayImage& cover, const WatermarkBits& wm) {
    bool mixed = false;
    for (std::uint8_t b : wm.bits)
        if (b != wm.bits[0]) mixed = true;
    if (!mixed)
        throw UsageError("degenerate watermark: every bit is " + std::to_string(int(wm.bits[0])) +
                         "; the mean-correlation detectors cannot recover such marks, pick a mixed watermark");
    for (SchemeId id : cfg.schemes) {
        if (id == SchemeId::DctMidband) {
            if (cover.width % 8 != 0 || cover.height % 8 != 0)
                throw UsageError("dct scheme needs cover dimensions divisible by 8, got " +
                                 std::to_string(cover.width) + "x" + std::to_string(cover.height));
            std::size_t blocks = static_cast<std::size_t>(cover.width / 8) * (cover.height / 8);
            if (wm.bit_count() > blocks)
                throw UsageError("watermark has " + std::to_string(wm.bit_count()) +
                                 " bits but the cover only has " + std::to_string(blocks) + " 8x8 blocks");
        }
        if (id == SchemeId::WaveletCdma) {
            if (cover.width % 2 != 0 || cover.height % 2 != 0)
                throw UsageError("dwt scheme needs even cover dimensions, got " + std::to_string(cover.width) +
                                 "x" + std::to_string(cover.height));
        }
    }
}

}  // namespace

BenchReport run_bench(const BenchConfig& cfg) {
    BenchReport report;
    report.config_hash = cfg.config_hash;

    const GrayImage cover = load_pgm_file(cfg.cover_path);
    const GrayImage wm_img = load_pgm_file(cfg.watermark_path);
    const WatermarkBits wm = threshold_watermark_image(wm_img);
    validate_compatibility(cfg, cover, wm);

    const bool verbose = verbose_enabled();
    std::vector<PairingMode> pairings;
    if (cfg.pairing == PairingMode::Both)
        pairings = {PairingMode::CoverVsAttacked, PairingMode::WatermarkedVsAttacked};
    else
        pairings = {cfg.pairing};

    for (SchemeId scheme : cfg.schemes) {
        const double gain = cfg.gain_for(scheme);
        const std::string sname = scheme_name(scheme);
        auto make_row = [&](const std::string& attack, const std::string& pairing) {
            BenchRow row;
            row.scheme = sname;
            row.attack = attack;
            row.pairing = pairing;
            row.gain = gain;
            row.key = cfg.key.master;
            row.brightness_mode = mode_name(cfg.brightness_mode);
            return row;
        };

        if (verbose) std::cerr << "[bench] scheme " << sname << ": embedding\n";
        BenchRow baseline = make_row("none", "cover_vs_watermarked");
        GrayImage marked;
        bool embedded = false;
        std::vector<std::string> warnings;
        try {
            marked = embed_any(scheme, cover, wm, cfg.key, Gain{gain}, &warnings);
            embedded = true;
        } catch (const std::exception& e) {
            append_note(baseline.note, std::string("embed failed: ") + e.what());
            report.any_cell_failed = true;
        }
        if (embedded) {
            MetricsReport m = compare_images(cover, marked);
            baseline.psnr_db = m.psnr_db;
            baseline.rmse = m.rmse;
            baseline.mae = m.mae;
            try {
                baseline.ber = ber(wm, extract_any(scheme, marked, cfg.key, wm.rows, wm.cols));
            } catch (const std::exception& e) {
                append_note(baseline.note, std::string("extract failed: ") + e.what());
                report.any_cell_failed = true;
            }
            for (const std::string& w : warnings) append_note(baseline.note, w);
        }
        report.rows.push_back(baseline);

        for (const AttackSpec& attack : cfg.attacks) {
            if (verbose) std::cerr << "[bench] scheme " << sname << ": attack " << attack.label() << "\n";
            GrayImage attacked;
            std::string attack_err;
            if (embedded) {
                try {
                    attacked = apply_attack(marked, attack);
                } catch (const std::exception& e) {
                    attack_err = std::string("attack failed: ") + e.what();
                    report.any_cell_failed = true;
                }
            } else {
                attack_err = "embed failed upstream";
            }

            std::optional<double> cell_ber;
            std::string extract_err;
            if (attack_err.empty()) {
                try {
                    cell_ber = ber(wm, extract_any(scheme, attacked, cfg.key, wm.rows, wm.cols));
                } catch (const std::exception& e) {
                    extract_err = std::string("extract failed: ") + e.what();
                    report.any_cell_failed = true;
                }
            }

            for (PairingMode pairing : pairings) {
                BenchRow row = make_row(attack.label(), pairing_label(pairing));
                if (attack_err.empty()) {
                    const GrayImage& reference = (pairing == PairingMode::CoverVsAttacked) ? cover : marked;
                    if (reference.width == attacked.width && reference.height == attacked.height) {
                        MetricsReport m = compare_images(reference, attacked);
                        row.psnr_db = m.psnr_db;
                        row.rmse = m.rmse;
                        row.mae = m.mae;
                    } else {
                        append_note(row.note, "dimensions differ after rotation (" + std::to_string(reference.width) +
                                             "x" + std::to_string(reference.height) + " vs " +
                                             std::to_string(attacked.width) + "x" + std::to_string(attacked.height) +
                                             "); pixel metrics skipped");
                    }
                    row.ber = cell_ber;
                    append_note(row.note, extract_err);
                } else {
                    append_note(row.note, attack_err);
                }
                report.rows.push_back(row);
            }
        }
    }
    return report;
}

std::string render_report_csv(const BenchReport& report) {
    std::string out = "scheme,attack,pairing,psnr_db,rmse,mae,ber,gain,key,brightness_mode,note\n";
    for (const BenchRow& r : report.rows) {
        out += csv_escape(r.scheme) + ',' + csv_escape(r.attack) + ',' + csv_escape(r.pairing) + ',' +
               fmt_metric(r.psnr_db) + ',' + fmt_metric(r.rmse) + ',' + fmt_metric(r.mae) + ',' +
               fmt_metric(r.ber) + ',' + fmt_gain(r.gain) + ',' + fmt_key(r.key) + ',' +
               csv_escape(r.brightness_mode) + ',' + csv_escape(r.note) + '\n';
    }
    return out;
}

std::string render_report_json(const BenchReport& report) {
    nlohmann::json j;
    j["environment"] = {{"tool_version", report.tool_version}, {"config_hash", fmt_key(report.config_hash)}};
    nlohmann::json rows = nlohmann::json::array();
    auto metric_json = [](const std::optional<double>& v) -> nlohmann::json {
        if (!v) return nullptr;
        if (std::isinf(*v)) return "inf";
        return *v;
    };
    for (const BenchRow& r : report.rows) {
        rows.push_back({{"scheme", r.scheme},
                        {"attack", r.attack},
                        {"pairing", r.pairing},
                        {"psnr_db", metric_json(r.psnr_db)},
                        {"rmse", metric_json(r.rmse)},
                        {"mae", metric_json(r.mae)},
                        {"ber", metric_json(r.ber)},
                        {"gain", r.gain},
                        {"key", fmt_key(r.key)},
                        {"brightness_mode", r.brightness_mode},
                        {"note", r.note}});
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw IoError("write failed: " + path.string());
}

// One pivot: attacks as rows, schemes as columns (the bar-chart layout).
std::string render_pivot(const BenchReport& report, const BenchConfig& cfg,
                         const std::string& metric, const std::string& pairing) {
    std::vector<std::string> schemes;
    for (SchemeId id : cfg.schemes) schemes.push_back(scheme_name(id));
    std::string out = "attack";
    for (const std::string& s : schemes) out += ',' + csv_escape(s);
    out += '\n';
    for (const AttackSpec& attack : cfg.attacks) {
        out += csv_escape(attack.label());
        for (const std::string& s : schemes) {
            std::string cell;
            for (const BenchRow& r : report.rows) {
                if (r.scheme != s || r.attack != attack.label()) continue;
                if (!pairing.empty() && r.pairing != pairing) continue;
                if (metric == "psnr") cell = fmt_metric(r.psnr_db);
                else if (metric == "rmse") cell = fmt_metric(r.rmse);
                else if (metric == "mae") cell = fmt_metric(r.mae);
                else cell = fmt_metric(r.ber);
                break;
            }
            out += ',' + cell;
        }
        out += '\n';
    }
    return out;
}

}  // namespace

void write_reports(const BenchReport& report, const BenchConfig& cfg) {
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    write_file(dir / "report.csv", render_report_csv(report));
    write_file(dir / "report.json", render_report_json(report));

    std::vector<std::string> pairings;
    if (cfg.pairing == PairingMode::Both)
        pairings = {"cover_vs_attacked", "watermarked_vs_attacked"};
    else
        pairings = {pairing_label(cfg.pairing)};
    for (const char* metric : {"psnr", "rmse", "mae"})
        for (const std::string& p : pairings)
            write_file(dir / ("pivot_" + std::string(metric) + "_" + p + ".csv"),
                       render_pivot(report, cfg, metric, p));
    // BER does not depend on the pairing; one pivot suffices.
    write_file(dir / "pivot_ber.csv", render_pivot(report, cfg, "ber", pairings.front()));
}

int bench_main(const std::string& config_path) {
    BenchConfig cfg = parse_bench_config_file(config_path);
    BenchReport report = run_bench(cfg);
    write_reports(report, cfg);
    std::cout << "bench: " << report.rows.size() << " rows -> " << cfg.output_dir << "\n";
    if (report.any_cell_failed) {
        std::cerr << "bench: some cells failed; see the note column\n";
        return 3;
    }
    return 0;
}

}  // namespace wmark
