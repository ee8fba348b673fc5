// dmptool: differential morphological profiles, tiling, and segmentation
// evaluation from the command line.
//
// Exit status: 0 success, 1 I/O or data error, 2 usage or parameter error.

#include <dmp/dmp.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
    std::string config_path;
    bool print_config = false;
    std::string preset;
    std::string pairs;
    std::string shape;
    std::string domain;
    bool raw8 = false;
    int threads = -1;
};

void add_pipeline_flags(CLI::App* cmd, CommonFlags& f)
{
    cmd->add_option("--config", f.config_path, "JSON pipeline config; flags override its values");
    cmd->add_flag("--print-config", f.print_config, "Echo the effective configuration as JSON");
    cmd->add_option("--preset", f.preset, "original | improved | evo1 | evo2");
    cmd->add_option("--pairs", f.pairs, "Explicit differentials, e.g. 9-3,5-3 (overrides --preset)");
    cmd->add_option("--shape", f.shape, "square | disk");
    cmd->add_option("--domain", f.domain, "raw8 | unit (default unit)");
    cmd->add_flag("--raw8", f.raw8, "Shorthand for --domain raw8");
    cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

dmp::PipelineConfig resolve_config(const CommonFlags& f)
{
    dmp::PipelineConfig c;
    if (!f.config_path.empty())
        c = dmp::load_config(f.config_path);
    if (!f.preset.empty()) {
        c.preset = f.preset;
        c.pairs.clear();
    }
    if (!f.pairs.empty())
        c.pairs = f.pairs;
    if (!f.shape.empty())
        c.shape = f.shape;
    if (!f.domain.empty())
        c.domain = f.domain;
    if (f.raw8)
        c.domain = "raw8";
    if (f.threads >= 0)
        c.threads = f.threads;
    return c;
}

void finish_config(const dmp::PipelineConfig& c, const CommonFlags& f)
{
    c.validate();
    if (f.print_config)
        std::cout << dmp::to_json(c).dump(2) << '\n';
}

void print_stack_summary(const dmp::FeatureStack& s)
{
    std::printf("%d channels, %dx%d, %s\n", s.channels, s.width, s.height,
                std::string(dmp::to_string(s.domain)).c_str());
    for (int c = 0; c < s.channels; ++c) {
        float lo = s.value(c, 0, 0);
        float hi = lo;
        for (int y = 0; y < s.height; ++y)
            for (int x = 0; x < s.width; ++x) {
                const float v = s.value(c, x, y);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        std::printf("  %2d %-12s min %-10g max %g\n", c, s.labels[static_cast<std::size_t>(c)].c_str(), lo, hi);
    }
}

int cmd_dmp(const std::string& input, const std::string& output, const CommonFlags& flags)
{
    auto cfg = resolve_config(flags);
    finish_config(cfg, flags);
    const auto gray = dmp::read_png_gray(input);
    const auto stack = dmp::stack_depth_extended(gray, cfg.differential_spec(), cfg.value_domain(),
                                                 dmp::Parallelism{cfg.threads});
    dmp::write_tensor(stack, output);
    print_stack_summary(stack);
    return 0;
}

struct TileFlags {
    int window = -1;
    int step = -1;
    std::string stem;
    bool with_dmp = false;
    bool dmp_before_tiling = false;
    bool labels = false;
};

int cmd_tile(const std::string& input, const std::string& out_dir, const TileFlags& tf, const CommonFlags& flags)
{
    auto cfg = resolve_config(flags);
    if (tf.window >= 0)
        cfg.window = tf.window;
    if (tf.step >= 0)
        cfg.step = tf.step;
    if (tf.dmp_before_tiling)
        cfg.dmp_before_tiling = true;
    finish_config(cfg, flags);

    const std::string stem = tf.stem.empty() ? fs::path(input).stem().string() : tf.stem;
    fs::create_directories(out_dir);
    const dmp::Parallelism par{cfg.threads};

    // Label masks keep their class indices; everything else goes through read_png.
    std::optional<dmp::LabelMask> mask;
    dmp::AnyImage image;
    if (tf.labels)
        mask = dmp::read_png_labels(input);
    else
        image = dmp::read_png(input);

    const int width = mask ? mask->width() : std::visit([](const auto& im) { return im.width(); }, image);
    const int height = mask ? mask->height() : std::visit([](const auto& im) { return im.height(); }, image);
    const auto plan = dmp::plan_tiles(width, height, cfg.window, cfg.step);

    const bool compute_dmp = (tf.with_dmp || cfg.dmp_before_tiling) && !mask;
    std::optional<dmp::DifferentialSpec> spec;
    std::optional<dmp::FeatureStack> whole;
    if (compute_dmp) {
        spec = cfg.differential_spec();
        if (cfg.dmp_before_tiling) {
            const auto gray = std::visit(
                [](const auto& im) {
                    if constexpr (std::is_same_v<std::decay_t<decltype(im)>, dmp::RgbImage>)
                        return dmp::to_luma(im);
                    else
                        return im;
                },
                image);
            whole = dmp::stack_depth_extended(gray, *spec, cfg.value_domain(), par);
        }
    }

    dmp::parallel_tasks(static_cast<int>(plan.size()), par, [&](int i) {
        const auto origin = plan.origins[static_cast<std::size_t>(i)];
        const fs::path png_path = fs::path(out_dir) / dmp::tile_name(stem, origin);
        if (mask) {
            dmp::write_png(dmp::extract_tile(*mask, origin, plan.window).image, png_path);
            return;
        }
        const auto gray_tile = std::visit(
            [&](const auto& im) {
                auto tile = dmp::extract_tile(im, origin, plan.window).image;
                dmp::write_png(tile, png_path);
                if constexpr (std::is_same_v<std::decay_t<decltype(im)>, dmp::RgbImage>)
                    return dmp::to_luma(tile);
                else
                    return tile;
            },
            image);
        if (!compute_dmp)
            return;
        fs::path tensor_path = png_path;
        tensor_path.replace_extension(".dmpt");
        if (whole)
            dmp::write_tensor(dmp::extract_tile(*whole, origin, plan.window).image, tensor_path);
        else
            dmp::write_tensor(dmp::stack_depth_extended(gray_tile, *spec, cfg.value_domain()), tensor_path);
    });

    auto manifest = dmp::plan_to_json(plan, stem);
    if (compute_dmp) {
        manifest["dmp"] = {{"spec", cfg.pairs.empty() ? cfg.preset : cfg.pairs},
                           {"shape", cfg.shape},
                           {"domain", cfg.domain},
                           {"before_tiling", cfg.dmp_before_tiling}};
    }
    const fs::path manifest_path = fs::path(out_dir) / (stem + "_manifest.json");
    std::ofstream(manifest_path) << manifest.dump(2) << '\n';
    std::printf("%zu tiles (%zu x %zu), window %d, step %d -> %s\n", plan.size(), plan.xs.size(), plan.ys.size(),
                plan.window, plan.step, manifest_path.string().c_str());
    return 0;
}

int cmd_stitch(const std::string& manifest_path, const std::string& tiles_dir, int num_classes,
               const std::string& output)
{
    std::ifstream in(manifest_path);
    if (!in)
        throw dmp::Error(dmp::ErrorKind::FileNotFound, manifest_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw dmp::Error(dmp::ErrorKind::Data, manifest_path + ": " + e.what());
    }
    const auto plan = dmp::plan_from_json(j);
    const fs::path dir = tiles_dir.empty() ? fs::path(manifest_path).parent_path() : fs::path(tiles_dir);
    std::vector<dmp::LabelMask> tiles;
    for (const auto& t : j.at("tiles"))
        tiles.push_back(dmp::read_png_labels(dir / t.at("file").get<std::string>()));
    dmp::write_png(dmp::stitch_labels(plan, tiles, num_classes), output);
    std::printf("stitched %zu tiles into %dx%d mask -> %s\n", tiles.size(), plan.image_width, plan.image_height,
                output.c_str());
    return 0;
}

std::set<std::string> png_names(const fs::path& dir)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw dmp::Error(dmp::ErrorKind::FileNotFound, dir.string() + " is not a directory");
    std::set<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".png")
            names.insert(entry.path().filename().string());
    return names;
}

int cmd_eval(const std::string& gt_dir, const std::string& pred_dir, const std::string& report_path,
             const CommonFlags& flags, int classes, bool exclude_background)
{
    auto cfg = resolve_config(flags);
    if (classes > 0)
        cfg.num_classes = classes;
    if (exclude_background)
        cfg.exclude_background = true;
    finish_config(cfg, flags);

    const auto gt_names = png_names(gt_dir);
    const auto pred_names = png_names(pred_dir);
    if (gt_names.empty() && pred_names.empty())
        dmp::throw_parameter("nothing to evaluate: no .png files in " + gt_dir + " or " + pred_dir);

    std::vector<std::string> unmatched;
    std::set_symmetric_difference(gt_names.begin(), gt_names.end(), pred_names.begin(), pred_names.end(),
                                  std::back_inserter(unmatched));
    if (!unmatched.empty()) {
        std::string msg = "unmatched files:";
        for (const auto& n : unmatched)
            msg += " " + n;
        dmp::throw_data(msg);
    }

    const std::vector<std::string> names(gt_names.begin(), gt_names.end());
    std::vector<dmp::ConfusionMatrix> parts(names.size(), dmp::ConfusionMatrix(cfg.num_classes));
    dmp::parallel_tasks(static_cast<int>(names.size()), dmp::Parallelism{cfg.threads}, [&](int i) {
        const auto& n = names[static_cast<std::size_t>(i)];
        try {
            dmp::accumulate(parts[static_cast<std::size_t>(i)], dmp::read_png_labels(fs::path(gt_dir) / n),
                            dmp::read_png_labels(fs::path(pred_dir) / n));
        } catch (const dmp::Error& e) {
            throw dmp::Error(e.kind(), n + ": " + e.what());
        }
    });
    dmp::ConfusionMatrix total(cfg.num_classes);
    for (const auto& p : parts)
        total += p;

    const auto metrics = dmp::compute_metrics(total, {cfg.exclude_background});
    std::printf("%zu mask pairs, %llu pixels\n", names.size(), static_cast<unsigned long long>(total.total()));
    std::fputs(dmp::metrics_table(metrics).c_str(), stdout);
    auto report = dmp::metrics_to_json(metrics);
    report["files"] = names.size();
    report["pixels"] = total.total();
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out)
            throw dmp::Error(dmp::ErrorKind::Io, "cannot write " + report_path);
        out << report.dump(2) << '\n';
    }
    return 0;
}

int cmd_errmask(const std::string& gt, const std::string& pred, int cls, const std::string& output)
{
    dmp::write_png(dmp::render_error_mask(dmp::read_png_labels(gt), dmp::read_png_labels(pred), cls), output);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Differential morphological profile toolkit"};
    app.require_subcommand(1);

    CommonFlags dmp_flags;
    std::string dmp_in, dmp_out;
    auto* dmp_cmd = app.add_subcommand("dmp", "Compute a depth-extended DMP stack and write it as DMPT");
    dmp_cmd->add_option("input", dmp_in, "Input PNG")->required();
    dmp_cmd->add_option("-o,--output", dmp_out, "Output .dmpt path")->required();
    add_pipeline_flags(dmp_cmd, dmp_flags);

    CommonFlags tile_flags;
    TileFlags tf;
    std::string tile_in, tile_out;
    auto* tile_cmd = app.add_subcommand("tile", "Cut a raster into overlapping window x window tiles");
    tile_cmd->add_option("input", tile_in, "Input PNG")->required();
    tile_cmd->add_option("-o,--out-dir", tile_out, "Output directory")->required();
    tile_cmd->add_option("--window", tf.window, "Tile size in pixels (default 896)");
    tile_cmd->add_option("--step", tf.step, "Stride in pixels (default 512)");
    tile_cmd->add_option("--stem", tf.stem, "Tile file name prefix (default: input stem)");
    tile_cmd->add_flag("--with-dmp", tf.with_dmp, "Also write a DMPT stack per tile");
    tile_cmd->add_flag("--dmp-before-tiling", tf.dmp_before_tiling,
                       "Compute the DMP on the whole image, then crop (implies --with-dmp)");
    tile_cmd->add_flag("--labels", tf.labels, "Treat the input as a single-channel label mask");
    add_pipeline_flags(tile_cmd, tile_flags);

    std::string st_manifest, st_dir, st_out;
    int st_classes = 16;
    auto* stitch_cmd = app.add_subcommand("stitch", "Majority-vote tile label masks back into one mask");
    stitch_cmd->add_option("manifest", st_manifest, "Manifest JSON written by 'tile'")->required();
    stitch_cmd->add_option("--tiles-dir", st_dir, "Directory holding tile masks (default: manifest dir)");
    stitch_cmd->add_option("--classes", st_classes, "Class count");
    stitch_cmd->add_option("-o,--output", st_out, "Output PNG")->required();

    CommonFlags eval_flags;
    std::string gt_dir, pred_dir, report_path = "metrics.json";
    int eval_classes = -1;
    bool exclude_bg = false;
    auto* eval_cmd = app.add_subcommand("eval", "Per-class and mean IoU/F1/precision/recall");
    eval_cmd->add_option("gt_dir", gt_dir, "Ground-truth mask directory")->required();
    eval_cmd->add_option("pred_dir", pred_dir, "Prediction mask directory")->required();
    eval_cmd->add_option("--classes", eval_classes, "Class count (default 16)");
    eval_cmd->add_flag("--exclude-background", exclude_bg, "Leave class 0 out of the means");
    eval_cmd->add_option("--report", report_path, "JSON report path (empty to skip)");
    eval_cmd->add_option("--config", eval_flags.config_path, "JSON pipeline config");
    eval_cmd->add_flag("--print-config", eval_flags.print_config, "Echo the effective configuration");
    eval_cmd->add_option("--threads", eval_flags.threads, "Worker threads (0 = all cores)");

    std::string em_gt, em_pred, em_out;
    int em_class = 1;
    auto* err_cmd = app.add_subcommand("errmask", "Render a color-coded error mask for one class");
    err_cmd->add_option("gt", em_gt, "Ground-truth mask PNG")->required();
    err_cmd->add_option("pred", em_pred, "Prediction mask PNG")->required();
    err_cmd->add_option("--class", em_class, "Foreground class index")->required();
    err_cmd->add_option("-o,--output", em_out, "Output PNG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*dmp_cmd)
            return cmd_dmp(dmp_in, dmp_out, dmp_flags);
        if (*tile_cmd)
            return cmd_tile(tile_in, tile_out, tf, tile_flags);
        if (*stitch_cmd)
            return cmd_stitch(st_manifest, st_dir, st_classes, st_out);
        if (*eval_cmd)
            return cmd_eval(gt_dir, pred_dir, report_path, eval_flags, eval_classes, exclude_bg);
        if (*err_cmd)
            return cmd_errmask(em_gt, em_pred, em_class, em_out);
    } catch (const dmp::Error& e) {
        std::cerr << "dmptool: " << e.what() << '\n';
        return dmp::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "dmptool: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
