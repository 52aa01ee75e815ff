// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "morphofilter/cli.hpp"
#include "morphofilter/contrast.hpp"
#include "morphofilter/filters.hpp"
#include "morphofilter/io.hpp"
#include "morphofilter/kernels.hpp"
#include "morphofilter/metrics.hpp"
#include "morphofilter/seeding.hpp"
#include "morphofilter/tree.hpp"
#include "test_support.hpp"

using namespace morpho;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Connectivity> default_pair(bool three_d) {
  return three_d ? std::vector{Connectivity::C6, Connectivity::C26} : std::vector{Connectivity::C4, Connectivity::C8};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(1001);
  const auto t0 = Clock::now();
  std::size_t images = 0, comparisons = 0, failures = 0;
  for (int i = 0; i < 600; ++i) {
    const bool three_d = i % 2 == 1;
    const auto img = testing::random_small_image(rng, three_d);
    ++images;
    for (Connectivity conn : default_pair(three_d)) {
      for (TreeKind kind : {TreeKind::Max, TreeKind::Min}) {
        ++comparisons;
        if (!tree_isomorphic(build_tree(img, kind, conn), oracle_tree(img, kind, conn), true)) ++failures;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && images >= 500 && secs < 60.0,
          fmt("%zu images, %zu comparisons, %zu failures, %.2f s", images, comparisons, failures, secs)};
}

Outcome contrast_invariance() {
  std::mt19937_64 rng(1002);
  std::size_t pairs = 0, failures = 0;
  for (int i = 0; i < 300; ++i) {
    const auto img = testing::random_small_image(rng, i % 3 == 0);
    const auto changed = testing::apply_vector_lut(img, testing::random_strict_lut(rng, 7));
    ++pairs;
    if (!tree_isomorphic(build_max_tree(img), build_max_tree(changed), false)) ++failures;
    if (!tree_isomorphic(build_min_tree(img), build_min_tree(changed), false)) ++failures;
  }
  return {failures == 0 && pairs >= 200, fmt("%zu pairs, %zu failures", pairs, failures)};
}

Outcome algorithm_vectors() {
  struct Case {
    std::vector<Level> in;
    std::uint32_t tau;
    std::vector<Level> out;
  };
  const std::vector<Case> cases = {
      {{0, 1, 0, 2, 0}, 0, {0, 1, 0, 2, 0}},
      {{0, 1, 2}, 0, {0, 0, 0}},
      {{0, 5, 0, 3, 3, 0}, 1, {0, 0, 0, 0, 0, 0}},
  };
  std::size_t ok = 0;
  for (const auto& c : cases) {
    const auto tree = build_max_tree(GrayImage::row(c.in));
    const auto y = reconstruct(tree, mark_removals(tree, c.tau));
    ok += std::equal(y.values().begin(), y.values().end(), c.out.begin(), c.out.end());
  }
  return {ok == cases.size(), fmt("%zu/%zu vectors bit-exact", ok, cases.size())};
}

Outcome leveling_and_bounds() {
  std::mt19937_64 rng(1003);
  std::size_t images = 0, bound = 0, leveling = 0, edges = 0;
  for (int i = 0; i < 600; ++i) {
    const auto x = testing::random_small_image(rng, i % 3 == 0);
    const auto conn = default_connectivity(x.dims());
    const std::uint32_t tau = static_cast<std::uint32_t>(i % 7);
    const auto up = structure_aware_filter(x, tau, TreeKind::Max, conn);
    const auto lo = structure_aware_filter(x, tau, TreeKind::Min, conn);
    ++images;
    for (std::size_t v = 0; v < x.size(); ++v) {
      bound += up[v] > x[v];
      bound += lo[v] < x[v];
      for (std::size_t w : neighbors(x, v, conn)) {
        leveling += up[v] > up[w] && up[v] > x[v];
        leveling += lo[v] > lo[w] && lo[w] < x[w];
        edges += x[v] == x[w] && (up[v] != up[w] || lo[v] != lo[w]);
      }
    }
  }
  return {images >= 500 && bound + leveling + edges == 0,
          fmt("%zu images; counterexamples: bounds %zu, leveling %zu, new edges %zu", images, bound, leveling, edges)};
}

Outcome idempotence_and_topology() {
  std::mt19937_64 rng(1004);
  std::size_t checks = 0, idem = 0, topo = 0;
  for (int i = 0; i < 300; ++i) {
    const auto x = testing::random_small_image(rng, i % 3 == 0);
    const auto conn = default_connectivity(x.dims());
    for (TreeKind kind : {TreeKind::Max, TreeKind::Min}) {
      for (std::uint32_t tau : {0u, 1u, 5u}) {
        const auto once = structure_aware_filter(x, tau, kind, conn);
        ++checks;
        idem += !(structure_aware_filter(once, tau, kind, conn) == once);
      }
      const auto before = build_tree(x, kind, conn);
      const auto after = build_tree(structure_aware_filter(x, 0, kind, conn), kind, conn);
      topo += leaf_count(before) != leaf_count(after) ||
              testing::branching_multiset(before) != testing::branching_multiset(after);
    }
  }
  return {idem + topo == 0, fmt("%zu idempotence checks, %zu failures; %zu topology failures", checks, idem, topo)};
}

bool lut_ok(const MonotoneTransform& t) {
  const auto lut = t.lut();
  return lut.front() == 0 && lut.back() == lut.size() - 1 && std::is_sorted(lut.begin(), lut.end());
}

Outcome transform_policies() {
  constexpr std::uint64_t kDraws = 10000;
  double gmin = 1e9, gmax = -1e9;
  std::set<double> zs;
  std::size_t bad_lut = 0;
  for (std::uint64_t s = 0; s < kDraws; ++s) {
    const int depth = s % 10 == 0 ? 16 : 8;
    const auto g = sample_transform(derive_seed(77, s), SamplingPolicy::GammaRange, depth);
    const auto b = sample_transform(derive_seed(78, s), SamplingPolicy::BezierSet, depth);
    gmin = std::min(gmin, g.descriptor().parameter);
    gmax = std::max(gmax, g.descriptor().parameter);
    zs.insert(b.descriptor().parameter);
    bad_lut += !lut_ok(g) + !lut_ok(b);
  }
  bool identities = true;
  for (int depth : {8, 16}) {
    const auto id = MonotoneTransform::identity(depth);
    identities = identities && std::ranges::equal(gamma_lut(1.0, depth).lut(), id.lut()) &&
                 std::ranges::equal(bezier_lut(0.0, depth).lut(), id.lut());
  }
  const bool pass = gmin >= kGammaMin && gmax <= kGammaMax && zs == std::set<double>{0.0, 0.5, 0.75} &&
                    bad_lut == 0 && identities;
  std::string z_text;
  for (double z : zs) z_text += (z_text.empty() ? "" : ",") + fmt("%g", z);
  return {pass, fmt("%llu draws; gamma in [%.4f, %.4f]; z set {%s}; bad LUTs %zu; identities %s",
                    static_cast<unsigned long long>(kDraws), gmin, gmax, z_text.c_str(), bad_lut,
                    identities ? "ok" : "wrong")};
}

Outcome error_diversity_checks() {
  auto row = [](std::vector<Level> v) {
    const std::size_t n = v.size();
    return LabelMap(Dims{n, 1, 1}, std::move(v));
  };
  const bool example = error_diversity(row({1, 1, 0, 0}), row({0, 1, 1, 0}), row({0, 0, 0, 0})) == 0.5;
  std::mt19937_64 rng(1005);
  std::size_t sym = 0, empty = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 1 + rng() % 64;
    auto gen = [&](int classes) {
      std::vector<Level> v(n);
      for (auto& x : v) x = static_cast<Level>(rng() % classes);
      return row(std::move(v));
    };
    const auto gt = gen(3), a = gen(3), b = gen(3);
    sym += error_diversity(a, b, gt) != error_diversity(b, a, gt);
    empty += error_diversity(gt, gt, gt) != 0.0;
  }
  return {example && sym == 0 && empty == 0,
          fmt("worked example %s; symmetry failures %zu; empty-set failures %zu", example ? "= 0.5" : "wrong", sym,
              empty)};
}

// Median of three builds.
double time_build(const GrayImage& img) {
  std::vector<double> runs;
  for (int r = 0; r < 3; ++r) {
    const auto t0 = Clock::now();
    const auto tree = build_max_tree(img, Connectivity::C6);
    runs.push_back(seconds_since(t0));
    if (tree.node_count() == 0) std::abort();
  }
  std::sort(runs.begin(), runs.end());
  return runs[1];
}

Outcome performance() {
  std::mt19937_64 rng(1006);
  const std::vector<std::size_t> depths = {8, 16, 32, 64};
  std::vector<double> secs;
  for (std::size_t d : depths) {
    const auto img = testing::random_image(rng, Dims{512, 512, d}, 255);
    secs.push_back(time_build(img));
  }
  double worst_ratio = 0;
  std::string detail;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    detail += fmt("%s%zuM %.2fs", i ? ", " : "", 512 * 512 * depths[i] / 1000000, secs[i]);
    if (i > 0) worst_ratio = std::max(worst_ratio, secs[i] / secs[i - 1]);
  }
  detail += fmt("; worst doubling ratio %.2f", worst_ratio);
  return {secs.back() <= 10.0 && worst_ratio <= 2.5, detail};
}

Outcome cli_determinism_and_io() {
  std::mt19937_64 rng(1007);
  const auto img = testing::random_image(rng, Dims{40, 30, 1}, 255);
  std::vector<std::string> runs;
  bool codes_ok = true;
  for (const char* name : {"a", "b"}) {
    const auto dir = testing::scratch_dir(std::string("accept_pair_") + name);
    io::write_image(img, dir / "img.pgm");
    std::ostringstream out, err;
    codes_ok = codes_ok &&
               cli::run_cli({"morphofilter", "pair", (dir / "img.pgm").string(), "--seed", "1234", "--gamma-range"},
                            out, err) == 0;
    std::string all;
    for (const char* f : {"img.usaif.pgm", "img.lsaif.pgm", "img.pair.json"}) {
      const auto b = io::read_file(dir / f);
      all.append(b.begin(), b.end());
    }
    runs.push_back(all);
  }
  const bool pair_ok = codes_ok && runs[0] == runs[1] && !runs[0].empty();

  const fs::path data = MORPHOFILTER_TEST_DATA_DIR;
  const std::vector<Level> grid = {0, 17, 128, 255, 3, 64};
  const auto p2 = io::read_image(data / "grid_3x2.p2.pgm");
  const auto p5 = io::read_image(data / "grid_3x2.p5.pgm");
  const auto p16 = io::read_image(data / "grid_3x2_16bit.p5.pgm");
  const bool golden = std::equal(p2.values().begin(), p2.values().end(), grid.begin(), grid.end()) && p5 == p2 &&
                      p16.bit_depth() == 16 && p16[3] == 65535 && p16[5] == 40000;

  bool volumes = true;
  const auto dir = testing::scratch_dir("accept_volume");
  for (int depth : {8, 16}) {
    const auto vol = testing::random_image(rng, Dims{7, 6, 5}, depth == 8 ? 255 : 65535, depth);
    io::write_image(vol, dir / "v.raw");
    volumes = volumes && io::read_image(dir / "v.raw") == vol;
  }
  const auto cube = io::read_image(data / "cube_2x3x4.raw");
  volumes = volumes && cube.dims() == Dims{2, 3, 4} && cube[23] == 230;

  return {pair_ok && golden && volumes, fmt("pair byte-identical %s; golden PGM %s; raw volume round trip %s",
                                            pair_ok ? "yes" : "no", golden ? "ok" : "wrong", volumes ? "ok" : "wrong")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"contrast invariance", contrast_invariance},
      {"filter worked vectors", algorithm_vectors},
      {"leveling and bounds", leveling_and_bounds},
      {"idempotence and topology", idempotence_and_topology},
      {"transform policies", transform_policies},
      {"error diversity", error_diversity_checks},
      {"performance", performance},
      {"cli determinism and io", cli_determinism_and_io},
  };
  std::printf("kernels: %s\n", std::string(kernels::to_string(kernels::active_isa())).c_str());
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %-26s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
