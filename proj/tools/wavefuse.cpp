#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "wavefuse/wavefuse.hpp"

namespace fs = std::filesystem;

using namespace wavefuse;

namespace {

struct Opts {
  std::vector<std::string> inputs;
  std::string output;
  std::string wavelet = "haar";
  int level = 2;
  std::string method = "wpt";
  std::string ideal;
  double epsilon = 1e-12;
  bool crop = false;
  bool porcelain = false;
  std::string axis = "vertical";
  double sigma = 3.0;
};

std::string default_wavelet() {
  const char* env = std::getenv("WAVEFUSE_DEFAULT_WAVELET");
  return env && *env ? env : "haar";
}

TreeShape shape_of(const std::string& method) {
  return method == "dwt" ? TreeShape::Dwt : TreeShape::FullWpt;
}

struct LoadedInputs {
  bool color = false;
  std::vector<Image> gray;
  std::vector<ColorImage> rgb;

  std::size_t count() const { return color ? rgb.size() : gray.size(); }
  int rows(std::size_t i) const { return color ? rgb[i].rows() : gray[i].rows(); }
  int cols(std::size_t i) const { return color ? rgb[i].cols() : gray[i].cols(); }
};

// Grayscale vs color is keyed on the PNM magic; mixing the two is an error.
LoadedInputs load_inputs(const std::vector<std::string>& paths) {
  LoadedInputs out;
  bool first = true;
  for (const auto& path : paths) {
    auto v = read_pnm_file(path);
    const bool is_color = std::holds_alternative<ColorImage>(v);
    if (first) {
      out.color = is_color;
      first = false;
    } else if (is_color != out.color) {
      fail(ErrorCode::ShapeMismatch,
           "cannot mix grayscale and color inputs ('" + path + "')");
    }
    if (is_color) {
      out.rgb.push_back(std::get<ColorImage>(std::move(v)));
    } else {
      out.gray.push_back(std::get<Image>(std::move(v)));
    }
  }
  return out;
}

void check_same_dims(const LoadedInputs& in, const std::vector<std::string>& paths) {
  for (std::size_t i = 1; i < in.count(); ++i) {
    if (in.rows(i) != in.rows(0) || in.cols(i) != in.cols(0)) {
      fail(ErrorCode::ShapeMismatch,
           "'" + paths[i] + "' is " + std::to_string(in.rows(i)) + "x" +
               std::to_string(in.cols(i)) + " but '" + paths[0] + "' is " +
               std::to_string(in.rows(0)) + "x" + std::to_string(in.cols(0)));
    }
  }
}

void check_divisible(const LoadedInputs& in, const std::vector<std::string>& paths,
                     int level) {
  const int div = 1 << level;
  for (std::size_t i = 0; i < in.count(); ++i) {
    if (in.rows(i) % div != 0 || in.cols(i) % div != 0) {
      fail(ErrorCode::Dim, "'" + paths[i] + "' (" + std::to_string(in.rows(i)) +
                               "x" + std::to_string(in.cols(i)) +
                               ") is not divisible by 2^" + std::to_string(level) +
                               "; pass --crop or lower --level");
    }
  }
}

Image center_crop(const Image& img, int div) {
  const int nr = (img.rows() / div) * div;
  const int nc = (img.cols() / div) * div;
  if (nr == 0 || nc == 0) {
    fail(ErrorCode::Dim, "image too small to crop to a multiple of " +
                             std::to_string(div));
  }
  if (nr == img.rows() && nc == img.cols()) return img;
  const int r0 = (img.rows() - nr) / 2;
  const int c0 = (img.cols() - nc) / 2;
  Image out(nr, nc);
  for (int r = 0; r < nr; ++r) {
    for (int c = 0; c < nc; ++c) out(r, c) = img(r0 + r, c0 + c);
  }
  return out;
}

ColorImage center_crop(const ColorImage& img, int div) {
  return {center_crop(img.r, div), center_crop(img.g, div), center_crop(img.b, div)};
}

void crop_inputs(LoadedInputs& in, int level) {
  const int div = 1 << level;
  for (auto& img : in.gray) img = center_crop(img, div);
  for (auto& img : in.rgb) img = center_crop(img, div);
}

// Indices are computed on the intensity plane for color images.
Image metric_plane(const std::variant<Image, ColorImage>& v) {
  if (std::holds_alternative<Image>(v)) return std::get<Image>(v);
  return intensity_plane(std::get<ColorImage>(v));
}

std::optional<Image> load_ideal_plane(const Opts& o) {
  if (o.ideal.empty()) return std::nullopt;
  Image plane = metric_plane(read_pnm_file(o.ideal));
  if (o.crop) plane = center_crop(plane, 1 << o.level);
  return plane;
}

void check_ideal_dims(const Image& ideal, const std::string& path, int rows, int cols) {
  if (ideal.rows() != rows || ideal.cols() != cols) {
    fail(ErrorCode::ShapeMismatch,
         "'" + path + "' is " + std::to_string(ideal.rows()) + "x" +
             std::to_string(ideal.cols()) + " but the sources are " +
             std::to_string(rows) + "x" + std::to_string(cols));
  }
}

std::vector<std::string> unique_labels(const std::vector<std::string>& paths) {
  std::vector<std::string> labels;
  std::map<std::string, int> seen;
  for (const auto& p : paths) {
    const int n = ++seen[p];
    labels.push_back(n == 1 ? p : p + "#" + std::to_string(n));
  }
  return labels;
}

void print_report(const MetricsReport& report, bool porcelain) {
  std::cout << (porcelain ? render_porcelain(report) : render_table(report));
}

FusionConfig config_of(const Opts& o, TreeShape shape) {
  return {o.wavelet, o.level, shape, o.epsilon};
}

int cmd_fuse(const Opts& o) {
  LoadedInputs in = load_inputs(o.inputs);
  check_same_dims(in, o.inputs);
  if (o.crop) {
    crop_inputs(in, o.level);
  } else {
    check_divisible(in, o.inputs, o.level);
  }
  const FusionConfig cfg = config_of(o, shape_of(o.method));

  std::vector<Image> planes;
  Image fused_plane;
  if (in.color) {
    const ColorImage fused = fuse_color(in.rgb, cfg);
    write_bytes(o.output, write_pnm(fused));
    for (const auto& img : in.rgb) planes.push_back(intensity_plane(img));
    fused_plane = intensity_plane(fused);
  } else {
    const Image fused = fuse_gray(in.gray, cfg);
    write_bytes(o.output, write_pnm(fused));
    planes = in.gray;
    fused_plane = fused;
  }

  const std::optional<Image> ideal = load_ideal_plane(o);
  std::vector<ImageEntry> entries;
  std::vector<PairEntry> pairs;
  if (ideal) {
    check_ideal_dims(*ideal, o.ideal, fused_plane.rows(), fused_plane.cols());
    entries.push_back(measure_image("Original", *ideal));
  }
  const std::vector<std::string> labels = unique_labels(o.inputs);
  for (std::size_t i = 0; i < planes.size(); ++i) {
    entries.push_back(measure_image(labels[i], planes[i]));
    if (ideal) pairs.push_back(measure_pair(labels[i], *ideal, planes[i]));
  }
  entries.push_back(measure_image("Fused", fused_plane));
  if (ideal) pairs.push_back(measure_pair("Fused", *ideal, fused_plane));

  print_report(build_report(std::move(entries), std::move(pairs)), o.porcelain);
  return 0;
}

int cmd_metrics(const Opts& o) {
  const std::optional<Image> ideal = [&]() -> std::optional<Image> {
    if (o.ideal.empty()) return std::nullopt;
    return metric_plane(read_pnm_file(o.ideal));
  }();

  std::vector<ImageEntry> entries;
  std::vector<PairEntry> pairs;
  if (ideal) entries.push_back(measure_image("Original", *ideal));
  const std::vector<std::string> labels = unique_labels(o.inputs);
  for (std::size_t i = 0; i < o.inputs.size(); ++i) {
    const Image plane = metric_plane(read_pnm_file(o.inputs[i]));
    entries.push_back(measure_image(labels[i], plane));
    if (ideal) {
      check_ideal_dims(*ideal, o.ideal, plane.rows(), plane.cols());
      pairs.push_back(measure_pair(labels[i], *ideal, plane));
    }
  }
  print_report(build_report(std::move(entries), std::move(pairs)), o.porcelain);
  return 0;
}

int cmd_compare(const Opts& o) {
  LoadedInputs in = load_inputs(o.inputs);
  check_same_dims(in, o.inputs);
  if (o.crop) {
    crop_inputs(in, o.level);
  } else {
    check_divisible(in, o.inputs, o.level);
  }
  fs::create_directories(o.output);

  const std::string ext = in.color ? ".ppm" : ".pgm";
  std::map<std::string, Image> fused_planes;  // column label -> metric plane
  for (const auto& [label, method] :
       std::vector<std::pair<std::string, std::string>>{{"DWT", "dwt"}, {"DWPT", "wpt"}}) {
    const FusionConfig cfg = config_of(o, shape_of(method));
    const std::string path = (fs::path(o.output) / ("fused_" + method + ext)).string();
    if (in.color) {
      const ColorImage fused = fuse_color(in.rgb, cfg);
      write_bytes(path, write_pnm(fused));
      fused_planes.emplace(label, intensity_plane(fused));
    } else {
      const Image fused = fuse_gray(in.gray, cfg);
      write_bytes(path, write_pnm(fused));
      fused_planes.emplace(label, fused);
    }
  }

  const std::optional<Image> ideal = load_ideal_plane(o);
  std::vector<ImageEntry> entries;
  std::vector<PairEntry> pairs;
  if (ideal) {
    check_ideal_dims(*ideal, o.ideal, fused_planes.at("DWT").rows(),
                     fused_planes.at("DWT").cols());
    entries.push_back(measure_image("Original", *ideal));
  } else {
    entries.push_back(ImageEntry{"Original", {}, {}, {}, {}});
  }
  for (const char* label : {"DWT", "DWPT"}) {
    entries.push_back(measure_image(label, fused_planes.at(label)));
    if (ideal) pairs.push_back(measure_pair(label, *ideal, fused_planes.at(label)));
  }
  print_report(build_report(std::move(entries), std::move(pairs)), o.porcelain);
  return 0;
}

int cmd_synthesize(const Opts& o) {
  auto v = read_pnm_file(o.inputs[0]);
  const bool color = std::holds_alternative<ColorImage>(v);
  const int rows = color ? std::get<ColorImage>(v).rows() : std::get<Image>(v).rows();
  const int cols = color ? std::get<ColorImage>(v).cols() : std::get<Image>(v).cols();

  // A vertical split line yields left/right halves; a horizontal one
  // upper/lower halves. A gets the first half blurred, B the complement.
  Rect first_half, second_half;
  if (o.axis == "vertical") {
    first_half = {0, 0, rows, cols / 2};
    second_half = {0, cols / 2, rows, cols - cols / 2};
  } else {
    first_half = {0, 0, rows / 2, cols};
    second_half = {rows / 2, 0, rows - rows / 2, cols};
  }

  const std::string ext = color ? ".ppm" : ".pgm";
  auto emit = [&](const std::string& suffix, const std::string& bytes) {
    const std::string path = o.output + suffix + ext;
    write_bytes(path, bytes);
    std::cout << path << '\n';
  };

  if (color) {
    const ColorImage& g = std::get<ColorImage>(v);
    auto blur_rgb = [&](const Rect& region) {
      return ColorImage{blur_region(g.r, o.sigma, region),
                        blur_region(g.g, o.sigma, region),
                        blur_region(g.b, o.sigma, region)};
    };
    emit("_a", write_pnm(blur_rgb(first_half)));
    emit("_b", write_pnm(blur_rgb(second_half)));
    emit("_ideal", write_pnm(g));
  } else {
    const Image& g = std::get<Image>(v);
    emit("_a", write_pnm(blur_region(g, o.sigma, first_half)));
    emit("_b", write_pnm(blur_region(g, o.sigma, second_half)));
    emit("_ideal", write_pnm(g));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contrast-based image fusion in the wavelet-packet domain"};
  app.require_subcommand(1);

  Opts o;
  o.wavelet = default_wavelet();

  auto add_pipeline_opts = [&](CLI::App* sub) {
    sub->add_option("--wavelet", o.wavelet, "wavelet filter (haar, db2, db4)")
        ->capture_default_str();
    sub->add_option("--level", o.level, "decomposition level")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    sub->add_option("--epsilon", o.epsilon, "contrast denominator guard")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--ideal", o.ideal, "reference image for PSNR/C.C");
    sub->add_flag("--crop", o.crop, "center-crop inputs to a 2^level multiple");
    sub->add_flag("--porcelain", o.porcelain, "emit key=value metric lines");
  };

  CLI::App* fuse = app.add_subcommand("fuse", "fuse two or more co-registered images");
  fuse->add_option("inputs", o.inputs, "source images (PGM/PPM)")
      ->required()
      ->expected(2, -1);
  fuse->add_option("-o,--output", o.output, "fused output image")->required();
  fuse->add_option("--method", o.method, "tree shape: wpt or dwt")
      ->check(CLI::IsMember({"wpt", "dwt"}))
      ->capture_default_str();
  add_pipeline_opts(fuse);

  CLI::App* metrics = app.add_subcommand("metrics", "evaluate quality indices");
  metrics->add_option("inputs", o.inputs, "images to evaluate")
      ->required()
      ->expected(1, -1);
  metrics->add_option("--ideal", o.ideal, "reference image for PSNR/C.C");
  metrics->add_flag("--porcelain", o.porcelain, "emit key=value metric lines");

  CLI::App* compare = app.add_subcommand(
      "compare", "fuse with both tree shapes and report the indices side by side");
  compare->add_option("inputs", o.inputs, "source images (PGM/PPM)")
      ->required()
      ->expected(2, -1);
  compare->add_option("-o,--output", o.output, "output directory for both fusions")
      ->required();
  add_pipeline_opts(compare);

  CLI::App* synthesize = app.add_subcommand(
      "synthesize", "make a complementary half-blurred pair from a ground truth");
  synthesize->add_option("inputs", o.inputs, "ground-truth image")
      ->required()
      ->expected(1);
  synthesize->add_option("-o,--output", o.output, "output path prefix")->required();
  synthesize->add_option("--axis", o.axis, "split line orientation")
      ->check(CLI::IsMember({"horizontal", "vertical"}))
      ->capture_default_str();
  synthesize->add_option("--sigma", o.sigma, "Gaussian blur strength")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fuse->parsed()) return cmd_fuse(o);
    if (metrics->parsed()) return cmd_metrics(o);
    if (compare->parsed()) return cmd_compare(o);
    if (synthesize->parsed()) return cmd_synthesize(o);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
