// Command-line driver: orbit simulation, verification suites, rank reports,
// reconstruction, map application, random polygons, and invariant dumps.
#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <pentagram/analysis.hpp>
#include <pentagram/io.hpp>
#include <pentagram/polygon.hpp>
#include <pentagram/rng.hpp>

using namespace pentagram;

namespace {

struct RunConfig {
  long n = 7;
  std::uint64_t seed = 1;
  std::string field = "rational";
  std::string u = "1/100";
  long iters = 100;
  long power = 1;
  long trials = 20;
  std::string input;
  std::string output;
  std::string suite;
  double tolerance = 0;  // 0 = per-command default
};

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--n", cfg.n, "number of vertices");
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--field", cfg.field, "scalar field")
      ->check(CLI::IsMember({"rational", "f64"}));
  cmd->add_option("--u", cfg.u, "family parameter as P/Q");
  cmd->add_option("--iters", cfg.iters, "iteration count");
  cmd->add_option("--power", cfg.power, "map power per step")->check(CLI::IsMember({1, 2}));
  cmd->add_option("--trials", cfg.trials, "trial count for verification suites");
  cmd->add_option("--input", cfg.input, "input JSON path");
  cmd->add_option("--output", cfg.output, "output path");
  cmd->add_option("--suite", cfg.suite, "verification suite name");
  cmd->add_option("--tolerance", cfg.tolerance, "tolerance override");
}

void emit_json(const RunConfig& cfg, const json& j) {
  if (cfg.output.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(cfg.output, j);
}

bool report(bool ok, const std::string& what) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
  return ok;
}

// ------------------------------------------------------------------ verify --

std::vector<std::pair<std::string, DiffFn<Rational>>> invariant_family(long n) {
  std::vector<std::pair<std::string, DiffFn<Rational>>> fam;
  long m = n % 2 == 0 ? n / 2 : (n - 1) / 2;
  for (long k = 1; k <= m; ++k) {
    fam.push_back({"O_" + std::to_string(k), invariant_fn<Rational>(n, k, InvariantParity::O)});
    fam.push_back({"E_" + std::to_string(k), invariant_fn<Rational>(n, k, InvariantParity::E)});
  }
  fam.push_back({"O_n", casimir_fn<Rational>(InvariantParity::O)});
  fam.push_back({"E_n", casimir_fn<Rational>(InvariantParity::E)});
  return fam;
}

std::vector<Rational> random_corner_vector(long n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Rational> x;
  for (long i = 0; i < 2 * n; ++i) x.push_back(sample_unit(rng));
  return x;
}

int suite_bracket(const RunConfig& cfg) {
  bool all = true;
  for (long t = 0; t < cfg.trials; ++t) {
    auto x = random_corner_vector(cfg.n, cfg.seed + static_cast<std::uint64_t>(t));
    auto rep = verify_map_preserves_bracket(x);
    all &= report(rep.all_zero, "bracket: map preserves the bracket exactly at point " +
                                    std::to_string(t) + " (n=" + std::to_string(cfg.n) +
                                    ", violations=" + std::to_string(rep.violations) + ")");
  }
  return all ? 0 : 1;
}

int suite_commute(const RunConfig& cfg) {
  auto fam = invariant_family(cfg.n);
  bool all = true;
  for (long t = 0; t < cfg.trials; ++t) {
    auto x = random_corner_vector(cfg.n, cfg.seed + static_cast<std::uint64_t>(t));
    long nonzero = 0;
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (std::size_t j = i + 1; j < fam.size(); ++j)
        if (bracket(fam[i].second, fam[j].second, x) != Rational(0)) ++nonzero;
    all &= report(nonzero == 0, "commute: all pairwise brackets vanish exactly at point " +
                                    std::to_string(t) + " (n=" + std::to_string(cfg.n) + ", " +
                                    std::to_string(fam.size()) + " invariants)");
  }
  return all ? 0 : 1;
}

int suite_casimir(const RunConfig& cfg) {
  bool all = true;
  std::vector<std::pair<std::string, DiffFn<Rational>>> cas = {
      {"O_n", casimir_fn<Rational>(InvariantParity::O)},
      {"E_n", casimir_fn<Rational>(InvariantParity::E)}};
  if (cfg.n % 2 == 0)
    for (auto parity : {InvariantParity::O, InvariantParity::E})
      for (int which : {0, 1})
        cas.push_back({std::string(parity == InvariantParity::O ? "O" : "E") + "-half-" +
                           std::to_string(which + 1),
                       half_casimir_product_fn<Rational>(parity, which)});
  for (long t = 0; t < cfg.trials; ++t) {
    auto x = random_corner_vector(cfg.n, cfg.seed + static_cast<std::uint64_t>(t));
    for (const auto& [label, fn] : cas) {
      auto field = hamiltonian_field(fn, x);
      bool zero = true;
      for (const auto& c : field) zero &= c == Rational(0);
      all &= report(zero, "casimir: hamiltonian field of " + label + " vanishes at point " +
                              std::to_string(t));
    }
  }
  long expect = cfg.n % 2 == 0 ? 2 * cfg.n - 4 : 2 * cfg.n - 2;
  long got = tensor_rank(cfg.n);
  all &= report(got == expect, "casimir: tensor rank " + std::to_string(got) + " matches " +
                                   std::to_string(expect));
  return all ? 0 : 1;
}

int suite_identities(const RunConfig& cfg) {
  double tol1 = cfg.tolerance > 0 ? cfg.tolerance : 1e-9;
  double tol2 = 10 * tol1;
  bool all = true;
  for (long t = 0; t < cfg.trials; ++t) {
    auto p = random_convex_polygon(cfg.n, cfg.seed + static_cast<std::uint64_t>(t));
    auto x = extract_corners(p);
    std::vector<double> xd;
    for (const auto& v : x) xd.push_back(to_double(v));
    auto rep1 = check_closed_identities(xd);
    double worst1 = 0;
    for (double r : rep1.residuals) worst1 = std::max(worst1, r);
    std::ostringstream msg1;
    msg1 << "identities: five scalar residuals (worst " << worst1 << ") < " << tol1
         << " at closed polygon " << t;
    all &= report(worst1 < tol1 && !rep1.negative_root, msg1.str());

    auto rep2 = closed_covector_identities(x);
    double worst2 = 0;
    for (double r : rep2.residuals) worst2 = std::max(worst2, r);
    std::ostringstream msg2;
    msg2 << "identities: three covector residuals (worst " << worst2 << ") < " << tol2
         << " at closed polygon " << t;
    all &= report(worst2 < tol2, msg2.str());
  }
  return all ? 0 : 1;
}

int suite_tangency(const RunConfig& cfg) {
  if (cfg.n < 7) {
    std::cout << "[FAIL] tangency: requires n >= 7\n";
    return 1;
  }
  bool all = true;
  for (long t = 0; t < cfg.trials; ++t) {
    auto p = random_convex_polygon(cfg.n, cfg.seed + static_cast<std::uint64_t>(t));
    auto x = extract_corners(p);
    std::vector<Rational> inner(x.begin() + 4, x.end() - 4);
    auto chart = close_up(cfg.n, inner);
    auto basis = tangent_basis(chart);
    RationalMatrix m(static_cast<long>(basis.size()), 2 * cfg.n);
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (long c = 0; c < 2 * cfg.n; ++c)
        m.at(static_cast<long>(r), c) = basis[r][static_cast<std::size_t>(c)];
    long base = rank(m);
    bool ok = base == 2 * cfg.n - 8 && chart.corners == x;
    for (const auto& [label, fn] : invariant_family(cfg.n)) {
      auto field = hamiltonian_field(fn, x);
      RationalMatrix ext(m.rows + 1, m.cols);
      ext.a.assign(m.a.begin(), m.a.end());
      ext.a.insert(ext.a.end(), field.begin(), field.end());
      ok &= rank(ext) == base;
    }
    all &= report(ok, "tangency: hamiltonian fields stay tangent at closed polygon " +
                          std::to_string(t) + " (rank " + std::to_string(base) + ")");
  }
  return all ? 0 : 1;
}

int suite_roundtrip(const RunConfig& cfg) {
  bool all = true;
  for (long t = 0; t < cfg.trials; ++t) {
    std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(t);
    auto p = random_convex_polygon(cfg.n, seed);
    auto x = extract_corners(p);
    bool commutes = extract_corners(pentagram_map_geometric(p)) == pentagram_map_coords(x);
    all &= report(commutes, "roundtrip: geometric and coordinate maps agree at polygon " +
                                std::to_string(t) + " (n=" + std::to_string(cfg.n) + ")");

    auto ray = propagate_ray_geometric(x, cfg.n + 4);
    ClosedPolygon<Rational> w;
    for (long i = 0; i < cfg.n; ++i)
      w.v.push_back(ray[static_cast<std::size_t>((i + 1) % cfg.n)]);
    all &= report(extract_corners(w) == x,
                  "roundtrip: corners -> ray -> polygon -> corners is exact at polygon " +
                      std::to_string(t));

    bool rec_ok = true;
    for (long k : {0L, 2L, 4L})
      rec_ok &= projectively_equal(reconstruct_points(x, k),
                                   ray[static_cast<std::size_t>(4 + k / 2)], 0.0);
    all &= report(rec_ok, "roundtrip: polynomial reconstruction matches the propagated ray " +
                              std::to_string(t));
  }
  return all ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.suite == "bracket") return suite_bracket(cfg);
  if (cfg.suite == "commute") return suite_commute(cfg);
  if (cfg.suite == "casimir") return suite_casimir(cfg);
  if (cfg.suite == "identities") return suite_identities(cfg);
  if (cfg.suite == "tangency") return suite_tangency(cfg);
  if (cfg.suite == "roundtrip") return suite_roundtrip(cfg);
  std::cerr << "unknown suite: " << cfg.suite
            << " (expected bracket|commute|casimir|identities|tangency|roundtrip)\n";
  return 2;
}

// -------------------------------------------------------------------- rank --

int cmd_rank(const RunConfig& cfg) {
  if (cfg.n < 7) {
    std::cerr << "rank requires --n >= 7\n";
    return 2;
  }
  Rational u = parse_rational(cfg.u);
  auto chart = pu_polygon(cfg.n, u);

  std::vector<DiffFn<Rational>> full, restricted;
  for (const auto& f : independence_list_full(cfg.n)) full.push_back(f.fn);
  for (const auto& f : independence_list_restricted(cfg.n)) restricted.push_back(f.fn);
  long full_rank = rank(jacobian_full(chart.corners, full));
  long restricted_rank = rank(restricted_jacobian(chart, restricted));
  long expect_full = cfg.n % 2 == 0 ? cfg.n - 1 : cfg.n - 2;
  long expect_restricted = cfg.n % 2 == 0 ? cfg.n - 3 : cfg.n - 4;

  auto basis = tangent_basis(chart);
  RationalMatrix m(static_cast<long>(basis.size()), 2 * cfg.n);
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (long c = 0; c < 2 * cfg.n; ++c)
      m.at(static_cast<long>(r), c) = basis[r][static_cast<std::size_t>(c)];
  long base = rank(m);
  bool tangency_ok = base == 2 * cfg.n - 8;
  for (const auto& [label, fn] : invariant_family(cfg.n)) {
    auto field = hamiltonian_field(fn, chart.corners);
    RationalMatrix ext(m.rows + 1, m.cols);
    ext.a.assign(m.a.begin(), m.a.end());
    ext.a.insert(ext.a.end(), field.begin(), field.end());
    tangency_ok &= rank(ext) == base;
  }

  json out{{"n", cfg.n},
           {"u", cfg.u},
           {"full_rank", full_rank},
           {"restricted_rank", restricted_rank},
           {"expected", json::array({expect_full, expect_restricted})},
           {"tangency_ok", tangency_ok}};
  emit_json(cfg, out);
  return (full_rank == expect_full && restricted_rank == expect_restricted && tangency_ok) ? 0
                                                                                           : 1;
}

// ------------------------------------------------------- file conversions --

bool file_is_f64(const json& j) {
  return j.contains("field") && j.at("field").get<std::string>() == "f64";
}

int cmd_random(const RunConfig& cfg) {
  auto p = random_convex_polygon(cfg.n, cfg.seed);
  if (cfg.field == "f64")
    emit_json(cfg, polygon_to_json(to_double_polygon(p)));
  else
    emit_json(cfg, polygon_to_json(p));
  return 0;
}

template <class F>
int pentagram_typed(const RunConfig& cfg, const json& in) {
  ClosedPolygon<F> p = polygon_from_json<F>(in);
  long steps = cfg.iters * cfg.power;
  for (long s = 0; s < steps; ++s) {
    try {
      p = pentagram_map_geometric(p);
    } catch (const std::domain_error& e) {
      std::cerr << "map degenerate at application " << s + 1 << ": " << e.what() << "\n";
      return 1;
    }
  }
  emit_json(cfg, polygon_to_json(p));
  return 0;
}

int cmd_pentagram(const RunConfig& cfg) {
  if (cfg.input.empty()) {
    std::cerr << "pentagram requires --input polygon JSON\n";
    return 2;
  }
  json in = read_json_file(cfg.input);
  RunConfig c = cfg;
  if (c.iters == 100) c.iters = 1;  // single application unless asked otherwise
  if (file_is_f64(in) || cfg.field == "f64") return pentagram_typed<double>(c, in);
  return pentagram_typed<Rational>(c, in);
}

int cmd_reconstruct(const RunConfig& cfg) {
  if (cfg.input.empty()) {
    std::cerr << "reconstruct requires --input corner JSON\n";
    return 2;
  }
  json in = read_json_file(cfg.input);
  std::vector<Rational> x = corners_from_json<Rational>(in);
  long n = static_cast<long>(x.size()) / 2;
  std::vector<Vec3<Rational>> ray;
  try {
    ray = propagate_ray_geometric(x, n + 4);
  } catch (const std::domain_error& e) {
    std::cerr << "reconstruction failed: " << e.what() << "\n";
    return 1;
  }
  ClosedPolygon<Rational> w;
  for (long i = 0; i < n; ++i) w.v.push_back(ray[static_cast<std::size_t>((i + 1) % n)]);
  if (extract_corners(w) != x) {
    std::cerr << "input corners do not close up into an n-gon (closure residual nonzero)\n";
    return 1;
  }
  emit_json(cfg, polygon_to_json(w));
  return 0;
}

template <class F>
int invariants_typed(const RunConfig& cfg, const json& in) {
  std::vector<F> x;
  if (in.contains("x"))
    x = corners_from_json<F>(in);
  else
    x = extract_corners(polygon_from_json<F>(in));
  emit_json(cfg, invariants_to_json(evaluate_invariants(x)));
  return 0;
}

int cmd_invariants(const RunConfig& cfg) {
  if (cfg.input.empty()) {
    std::cerr << "invariants requires --input corner or polygon JSON\n";
    return 2;
  }
  json in = read_json_file(cfg.input);
  if (file_is_f64(in) || cfg.field == "f64") return invariants_typed<double>(cfg, in);
  return invariants_typed<Rational>(cfg, in);
}

// ------------------------------------------------------------------- orbit --

struct OrbitRow {
  long step;
  long vertex;  // -1 marks the per-step invariant summary row
  double x = 0, y = 0;
  std::vector<double> invariants;
};

std::vector<double> orbit_invariants(const ClosedPolygon<double>& p) {
  auto iv = evaluate_invariants(extract_corners(p));
  std::vector<double> row;
  for (std::size_t k = 1; k < iv.O.size(); ++k) row.push_back(iv.O[k]);
  for (std::size_t k = 1; k < iv.E.size(); ++k) row.push_back(iv.E[k]);
  row.push_back(iv.On);
  row.push_back(iv.En);
  return row;
}

int cmd_orbit(const RunConfig& cfg) {
  ClosedPolygon<double> frame;
  if (!cfg.input.empty()) {
    json in = read_json_file(cfg.input);
    if (file_is_f64(in))
      frame = polygon_from_json<double>(in);
    else
      frame = to_double_polygon(polygon_from_json<Rational>(in));
  } else {
    frame = to_double_polygon(random_convex_polygon(cfg.n, cfg.seed));
  }
  long n = static_cast<long>(frame.size());
  double tol = cfg.tolerance > 0 ? cfg.tolerance : 1e-6;

  std::ostream* csv = &std::cout;
  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      std::cerr << "cannot open output file: " << cfg.output << "\n";
      return 2;
    }
    csv = &file;
  }

  long m = n % 2 == 0 ? n / 2 : (n - 1) / 2;
  *csv << "step,vertex,x,y";
  for (long k = 1; k <= m; ++k) *csv << ",O_" << k;
  for (long k = 1; k <= m; ++k) *csv << ",E_" << k;
  *csv << ",O_n,E_n\n";
  csv->precision(17);

  auto emit_frame = [&](long step, const ClosedPolygon<double>& f,
                        const std::vector<double>& inv) {
    for (long v = 0; v < n; ++v)
      *csv << step << "," << v << "," << f.v[static_cast<std::size_t>(v)][0] << ","
           << f.v[static_cast<std::size_t>(v)][1] << std::string(inv.size(), ',') << "\n";
    *csv << step << ",-1,,";
    for (double val : inv) *csv << "," << val;
    *csv << "\n";
  };

  long truncated_at = -1;
  double max_drift = 0, max_coord = 0;
  bool all_convex = true;
  std::vector<double> base;
  // The iteration runs in the whitened frame (raw orbits flatten onto a line
  // and lose all precision); emitted frames use the isotropic normalization.
  try {
    frame = affine_whiten(frame);
    ClosedPolygon<double> shown = affine_normalize(frame);
    base = orbit_invariants(frame);
    emit_frame(0, shown, base);
    all_convex = is_convex(shown);
    for (const auto& vtx : shown.v)
      max_coord = std::max({max_coord, std::fabs(vtx[0]), std::fabs(vtx[1])});
    for (long s = 1; s <= cfg.iters; ++s) {
      for (long rep = 0; rep < cfg.power; ++rep) frame = pentagram_map_geometric(frame);
      frame = affine_whiten(frame);
      shown = affine_normalize(frame);
      std::vector<double> inv = orbit_invariants(frame);
      for (std::size_t k = 0; k < inv.size(); ++k) {
        double scale = std::fabs(base[k]);
        double drift = scale > 0 ? std::fabs(inv[k] - base[k]) / scale : std::fabs(inv[k]);
        max_drift = std::max(max_drift, drift);
      }
      all_convex = all_convex && is_convex(shown);
      for (const auto& vtx : shown.v)
        max_coord = std::max({max_coord, std::fabs(vtx[0]), std::fabs(vtx[1])});
      emit_frame(s, shown, inv);
    }
  } catch (const std::domain_error& e) {
    truncated_at = truncated_at < 0 ? 0 : truncated_at;
    std::cerr << "orbit truncated: " << e.what() << "\n";
  }

  json summary{{"n", n},
               {"iters", cfg.iters},
               {"power", cfg.power},
               {"max_drift", max_drift},
               {"all_convex", all_convex},
               {"max_abs_coord", max_coord},
               {"tolerance", tol}};
  if (truncated_at >= 0) summary["truncated"] = true;
  std::cout << summary.dump(2) << "\n";
  return (truncated_at < 0 && max_drift <= tol) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pentagram map laboratory"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* orbit = app.add_subcommand("orbit", "iterate the map and emit a CSV orbit");
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  auto* rank_cmd = app.add_subcommand("rank", "independence ranks along the standard family");
  auto* reconstruct = app.add_subcommand("reconstruct", "corner vector -> polygon JSON");
  auto* pent = app.add_subcommand("pentagram", "apply the map to a polygon file");
  auto* random = app.add_subcommand("random", "emit a random convex polygon");
  auto* invariants = app.add_subcommand("invariants", "evaluate invariants of a file");
  for (CLI::App* c : {orbit, verify, rank_cmd, reconstruct, pent, random, invariants})
    add_common_flags(c, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (orbit->parsed()) return cmd_orbit(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (rank_cmd->parsed()) return cmd_rank(cfg);
    if (reconstruct->parsed()) return cmd_reconstruct(cfg);
    if (pent->parsed()) return cmd_pentagram(cfg);
    if (random->parsed()) return cmd_random(cfg);
    if (invariants->parsed()) return cmd_invariants(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
