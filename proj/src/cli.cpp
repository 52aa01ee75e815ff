#include "morphofilter/cli.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "morphofilter/contrast.hpp"
#include "morphofilter/error.hpp"
#include "morphofilter/filters.hpp"
#include "morphofilter/io.hpp"
#include "morphofilter/metrics.hpp"
#include "morphofilter/seeding.hpp"
#include "morphofilter/tree.hpp"

namespace morpho::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// Bad flag value or flag combination; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sampling { None, Gamma, Bezier };

// Options common to `pair` and `batch`.
struct PairOptions {
  std::optional<std::uint32_t> tau;
  std::string conn;
  std::optional<std::uint64_t> seed;
  std::string assign = "random";
  std::string transform_a = "identity";
  std::string transform_b = "identity";
  bool gamma_range = false;
  bool bezier_set = false;

  // Filled by validate().
  AssignmentMode mode = AssignmentMode::Random;
  Sampling sampling = Sampling::None;
  TransformDescriptor desc_a;
  TransformDescriptor desc_b;

  void validate() {
    try {
      mode = parse_assignment_mode(assign);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--assign: ") + e.what());
    }
    if (gamma_range && bezier_set) throw UsageError("--gamma-range and --bezier-set are mutually exclusive");
    sampling = gamma_range ? Sampling::Gamma : bezier_set ? Sampling::Bezier : Sampling::None;
    if (sampling != Sampling::None && (transform_a != "identity" || transform_b != "identity")) {
      throw UsageError("--transform-a/--transform-b cannot be combined with --gamma-range or --bezier-set");
    }
    try {
      desc_a = parse_descriptor(transform_a);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--transform-a: ") + e.what());
    }
    try {
      desc_b = parse_descriptor(transform_b);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--transform-b: ") + e.what());
    }
    const bool randomized = mode == AssignmentMode::Random || sampling != Sampling::None;
    if (randomized && !seed) throw UsageError("--seed is required with --assign random, --gamma-range or --bezier-set");
  }
};

Connectivity resolve_conn(const std::string& flag, const Dims& dims) {
  if (flag.empty()) return default_connectivity(dims);
  const Connectivity c = parse_connectivity(flag);
  if (!is_compatible(c, dims)) {
    throw UsageError("--conn " + flag + " does not fit a " + std::string(dims.is_3d() ? "3D" : "2D") + " image");
  }
  return c;
}

void check_conn_flag(const std::string& flag) {
  if (flag.empty()) return;
  try {
    parse_connectivity(flag);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--conn: ") + e.what());
  }
}

/// Output path `<dir>/<stem>.<tag><ext>`.
fs::path tagged_path(const fs::path& dir, const fs::path& input, const std::string& tag) {
  return dir / (input.stem().string() + "." + tag + input.extension().string());
}

/// Runs `pair` for one input and writes both views plus a manifest.
void run_pair_one(const PairOptions& opt, std::uint64_t seed, const fs::path& input, const fs::path& out_dir) {
  const GrayImage image = io::read_image(input);
  const Connectivity conn = resolve_conn(opt.conn, image.dims());
  const std::uint32_t tau = opt.tau.value_or(default_tau(image.dims()));

  auto transform_for = [&](const TransformDescriptor& desc, std::uint64_t stream) {
    switch (opt.sampling) {
      case Sampling::Gamma: return sample_transform(derive_seed(seed, stream), SamplingPolicy::GammaRange, image.bit_depth());
      case Sampling::Bezier: return sample_transform(derive_seed(seed, stream), SamplingPolicy::BezierSet, image.bit_depth());
      case Sampling::None: break;
    }
    return make_transform(desc, image.bit_depth());
  };
  const MonotoneTransform ta = transform_for(opt.desc_a, 1);
  const MonotoneTransform tb = transform_for(opt.desc_b, 2);

  const DsaifPair pair = dsaif_pair(image, tau, ta, tb, seed, opt.mode, conn);
  const fs::path upper_path = tagged_path(out_dir, input, "usaif");
  const fs::path lower_path = tagged_path(out_dir, input, "lsaif");
  io::write_image(pair.upper(), upper_path);
  io::write_image(pair.lower(), lower_path);

  json manifest;
  manifest["input"] = input.filename().string();
  manifest["seed"] = seed;
  manifest["assign"] = std::string(to_string(opt.mode));
  manifest["assignment"] = std::string(pair.assignment());
  manifest["tau"] = tau;
  manifest["connectivity"] = std::string(to_string(conn));
  manifest["transform_upper"] = to_string(ta.descriptor());
  manifest["transform_lower"] = to_string(tb.descriptor());
  manifest["view_a"] = (pair.a_is_upper ? upper_path : lower_path).filename().string();
  manifest["view_b"] = (pair.a_is_upper ? lower_path : upper_path).filename().string();
  const std::string text = manifest.dump(2) + "\n";
  io::write_file(out_dir / (input.stem().string() + ".pair.json"),
                 std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

unsigned worker_count(std::optional<unsigned> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("MORPHOFILTER_THREADS"); env != nullptr) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

json stats_json(const ComponentTree& tree) {
  const TreeStats s = tree_stats(tree);
  json j;
  j["kind"] = tree.kind() == TreeKind::Max ? "max" : "min";
  j["dims"] = {tree.dims().width, tree.dims().height, tree.dims().depth};
  j["connectivity"] = std::string(to_string(tree.connectivity()));
  j["node_count"] = s.node_count;
  j["leaf_count"] = s.leaf_count;
  j["max_depth"] = s.max_depth;
  json hist = json::object();
  for (const auto& [children, nodes] : s.child_count_histogram) hist[std::to_string(children)] = nodes;
  j["child_count_histogram"] = hist;
  j["area"] = {{"min", s.area_min}, {"max", s.area_max}, {"mean", s.area_mean}, {"median", s.area_median}};
  j["level_bounds"] = {tree.level_bounds().lo, tree.level_bounds().hi};
  return j;
}

void add_pair_flags(CLI::App* cmd, PairOptions& opt) {
  cmd->add_option("--tau", opt.tau, "Area threshold (default 50 for 2D, 100 for 3D)");
  cmd->add_option("--conn", opt.conn, "Connectivity: 4 or 8 (2D), 6 or 26 (3D)");
  cmd->add_option("--seed", opt.seed, "RNG seed");
  cmd->add_option("--assign", opt.assign, "Slot assignment: random or fixed")->capture_default_str();
  cmd->add_option("--transform-a", opt.transform_a, "Transform before the Max-tree filter")->capture_default_str();
  cmd->add_option("--transform-b", opt.transform_b, "Transform before the Min-tree filter")->capture_default_str();
  cmd->add_flag("--gamma-range", opt.gamma_range, "Sample both gammas uniformly from [0.5, 1.5]");
  cmd->add_flag("--bezier-set", opt.bezier_set, "Sample both Bezier z from {0, 0.5, 0.75}");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Component-tree structure-aware image filtering"};
  app.name(args.empty() ? "morphofilter" : args.front());
  app.require_subcommand(1);

  // filter
  std::string f_in, f_out, f_kind, f_transform = "identity", f_conn;
  std::optional<std::uint32_t> f_tau;
  auto* filter = app.add_subcommand("filter", "Apply the upper (usaif) or lower (lsaif) filter to one image");
  filter->add_option("input", f_in, "Input .pgm or .raw")->required();
  filter->add_option("-o,--output", f_out, "Output .pgm or .raw")->required();
  filter->add_option("--kind", f_kind, "usaif or lsaif")->required();
  filter->add_option("--tau", f_tau, "Area threshold (default 50 for 2D, 100 for 3D)");
  filter->add_option("--transform", f_transform, "identity, gamma:G or bezier:Z")->capture_default_str();
  filter->add_option("--conn", f_conn, "Connectivity: 4 or 8 (2D), 6 or 26 (3D)");

  // pair
  PairOptions p_opt;
  std::string p_in, p_out_dir;
  auto* pair = app.add_subcommand("pair", "Write both filtered views of one image");
  pair->add_option("input", p_in, "Input .pgm or .raw")->required();
  pair->add_option("--out-dir", p_out_dir, "Output directory (default: next to the input)");
  add_pair_flags(pair, p_opt);

  // tree
  std::string t_in, t_kind = "max", t_conn, t_out;
  bool t_dot = false, t_stats = false;
  auto* tree = app.add_subcommand("tree", "Inspect the Max-tree or Min-tree of one image");
  tree->add_option("input", t_in, "Input .pgm or .raw")->required();
  tree->add_option("--kind", t_kind, "max or min")->capture_default_str();
  tree->add_option("--conn", t_conn, "Connectivity: 4 or 8 (2D), 6 or 26 (3D)");
  tree->add_option("-o,--output", t_out, "Write to this file instead of standard output");
  auto* dot_flag = tree->add_flag("--dot", t_dot, "Graphviz output");
  auto* stats_flag = tree->add_flag("--stats", t_stats, "JSON statistics");
  dot_flag->excludes(stats_flag);

  // metrics-de
  std::string m_p1, m_p2, m_gt;
  auto* metrics = app.add_subcommand("metrics-de", "Dice overlap of two predictions' error sets");
  metrics->add_option("--pred1", m_p1, "First prediction label map")->required();
  metrics->add_option("--pred2", m_p2, "Second prediction label map")->required();
  metrics->add_option("--gt", m_gt, "Ground-truth label map")->required();

  // batch
  PairOptions b_opt;
  std::string b_in, b_out;
  std::optional<unsigned> b_threads;
  auto* batch = app.add_subcommand("batch", "Run pair on every .pgm/.raw file of a directory");
  batch->add_option("--input-dir", b_in, "Directory of inputs")->required();
  batch->add_option("--output-dir", b_out, "Directory for outputs")->required();
  batch->add_option("--threads", b_threads, "Worker count (default: MORPHOFILTER_THREADS or core count)");
  add_pair_flags(batch, b_opt);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*filter) {
      TreeKind kind;
      if (f_kind == "usaif") {
        kind = TreeKind::Max;
      } else if (f_kind == "lsaif") {
        kind = TreeKind::Min;
      } else {
        throw UsageError("--kind must be usaif or lsaif, got '" + f_kind + "'");
      }
      TransformDescriptor desc;
      try {
        desc = parse_descriptor(f_transform);
      } catch (const std::exception& e) {
        throw UsageError(std::string("--transform: ") + e.what());
      }
      check_conn_flag(f_conn);
      const GrayImage image = io::read_image(f_in);
      const Connectivity conn = resolve_conn(f_conn, image.dims());
      const GrayImage contrasted = apply_transform(image, make_transform(desc, image.bit_depth()));
      io::write_image(structure_aware_filter(contrasted, f_tau.value_or(default_tau(image.dims())), kind, conn), f_out);
    } else if (*pair) {
      p_opt.validate();
      check_conn_flag(p_opt.conn);
      const fs::path input(p_in);
      const fs::path dir = p_out_dir.empty() ? input.parent_path() : fs::path(p_out_dir);
      if (!dir.empty() && !fs::is_directory(dir)) throw IoError("--out-dir is not a directory: " + dir.string());
      run_pair_one(p_opt, p_opt.seed.value_or(0), input, dir);
    } else if (*tree) {
      if (t_kind != "max" && t_kind != "min") throw UsageError("--kind must be max or min, got '" + t_kind + "'");
      if (!t_dot && !t_stats) throw UsageError("tree needs --dot or --stats");
      check_conn_flag(t_conn);
      const GrayImage image = io::read_image(t_in);
      const ComponentTree ct =
          build_tree(image, t_kind == "max" ? TreeKind::Max : TreeKind::Min, resolve_conn(t_conn, image.dims()));
      const std::string text = t_dot ? io::export_dot(ct) : stats_json(ct).dump() + "\n";
      if (t_out.empty()) {
        out << text;
      } else {
        io::write_file(t_out, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
      }
    } else if (*metrics) {
      const LabelMap p1 = LabelMap::from_image(io::read_image(m_p1));
      const LabelMap p2 = LabelMap::from_image(io::read_image(m_p2));
      const LabelMap gt = LabelMap::from_image(io::read_image(m_gt));
      json j;
      try {
        j["d_e"] = error_diversity(p1, p2, gt);
      } catch (const DomainError& e) {
        throw UsageError(std::string("--pred1/--pred2/--gt: ") + e.what());
      }
      out << j.dump() << "\n";
    } else if (*batch) {
      b_opt.validate();
      check_conn_flag(b_opt.conn);
      if (!fs::is_directory(b_in)) throw IoError("--input-dir is not a directory: " + b_in);
      fs::create_directories(b_out);
      std::vector<fs::path> inputs;
      for (const auto& entry : fs::directory_iterator(b_in)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".pgm" || ext == ".raw")) inputs.push_back(entry.path());
      }
      std::sort(inputs.begin(), inputs.end());

      const std::uint64_t base_seed = b_opt.seed.value_or(0);
      std::atomic<std::size_t> next{0};
      std::mutex err_mutex;
      std::vector<std::string> failures;
      auto worker = [&] {
        for (std::size_t i = next++; i < inputs.size(); i = next++) {
          try {
            run_pair_one(b_opt, derive_seed(base_seed, fnv1a(inputs[i].filename().string())), inputs[i], b_out);
          } catch (const std::exception& e) {
            std::lock_guard lock(err_mutex);
            failures.push_back(inputs[i].string() + ": " + e.what());
          }
        }
      };
      {
        const unsigned n = std::min<std::size_t>(worker_count(b_threads), std::max<std::size_t>(inputs.size(), 1));
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
      }
      if (!failures.empty()) {
        std::sort(failures.begin(), failures.end());
        for (const auto& f : failures) err << "error: " << f << "\n";
        return kExitIoError;
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace morpho::cli
