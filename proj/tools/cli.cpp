#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cyclelsi/error.hpp"
#include "cyclelsi/inequalities.hpp"
#include "cyclelsi/optimize.hpp"
#include "cyclelsi/products.hpp"
#include "cyclelsi/random.hpp"
#include "cyclelsi/semigroup.hpp"
#include "cyclelsi/spectral.hpp"

#ifndef CYCLELSI_VERSION
#define CYCLELSI_VERSION "0.0.0"
#endif

namespace cyclelsi::cli {

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<std::monostate, bool, long long, double, std::string>;

struct Report {
  std::string command;
  json parameters = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
  bool violation = false;
  bool nonconverged = false;

  void row(std::vector<Cell> r) { rows.push_back(std::move(r)); }
};

Cell num(double v) { return v; }
Cell count(std::size_t v) { return static_cast<long long>(v); }
Cell none() { return std::monostate{}; }

// ---- parsing helpers -------------------------------------------------------

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

std::size_t parse_count(const std::string& text, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(v >= 0.0) || v != std::floor(v) || v > 1e15) {
    usage(std::string(what) + ": expected a nonnegative integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

/// "a..b" inclusive, or a single value.
std::vector<std::size_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_count(text, "--n")};
  const std::size_t lo = parse_count(text.substr(0, dots), "--n");
  const std::size_t hi = parse_count(text.substr(dots + 2), "--n");
  if (hi < lo) usage("--n: empty range '" + text + "'");
  if (hi - lo > 1000000) usage("--n: range too long");
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

double parse_real(const std::string& text, std::size_t pos, const std::string& whole) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    usage("product spec '" + whole + "': bad number at position " + std::to_string(pos));
  }
  return v;
}

/// "n1:c1,n2:c2,..."; the weight defaults to 1 when ":c" is omitted.
std::vector<Factor> parse_product(const std::string& spec) {
  std::vector<Factor> factors;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t end = std::min(spec.find(',', start), spec.size());
    const std::string item = spec.substr(start, end - start);
    if (item.empty()) usage("product spec '" + spec + "': empty factor at position " + std::to_string(start));
    const auto colon = item.find(':');
    const std::string ns = item.substr(0, colon);
    const double n = parse_real(ns, start, spec);
    if (n < 2 || n != std::floor(n)) {
      usage("product spec '" + spec + "': cycle length must be an integer >= 2 at position " + std::to_string(start));
    }
    double c = 1.0;
    if (colon != std::string::npos) c = parse_real(item.substr(colon + 1), start + colon + 1, spec);
    if (!(c > 0.0) || !std::isfinite(c)) {
      usage("product spec '" + spec + "': weight must be positive at position " + std::to_string(start + colon + 1));
    }
    factors.push_back({static_cast<std::size_t>(n), c});
    if (end == spec.size()) break;
    start = end + 1;
  }
  return factors;
}

// ---- output ----------------------------------------------------------------

json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          return std::isfinite(v) ? json(v) : json(nullptr);
        } else {
          return json(v);
        }
      },
      c);
}

std::string cell_text(const Cell& c, int digits) {
  return std::visit(
      [digits](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.*g", digits, v);
          return buf;
        } else {
          return v;
        }
      },
      c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void render_json(const Report& r, std::uint64_t seed, std::ostream& os) {
  json results = json::array();
  for (const auto& row : r.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < r.columns.size(); ++i) obj[r.columns[i]] = cell_json(row[i]);
    results.push_back(std::move(obj));
  }
  json doc = json::object();
  doc["command"] = r.command;
  doc["parameters"] = r.parameters;
  doc["seed"] = seed;
  doc["tool_version"] = CYCLELSI_VERSION;
  doc["timestamp"] = utc_now();
  doc["results"] = std::move(results);
  if (!r.notes.empty()) doc["notes"] = r.notes;
  os << doc.dump(2) << '\n';
}

void render_csv(const Report& r, std::ostream& os) {
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << csv_escape(r.columns[i]);
  os << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(row[i], 17));
    os << '\n';
  }
}

void render_table(const Report& r, std::uint64_t seed, std::ostream& os) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(r.columns.size());
  for (std::size_t i = 0; i < r.columns.size(); ++i) width[i] = r.columns[i].size();
  for (const auto& row : r.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(cell_text(row[i], 10));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << (i ? "  " : "") << line[i] << std::string(width[i] - line[i].size(), ' ');
    }
    os << '\n';
  };
  os << r.command << " (seed " << seed << ")\n";
  emit(r.columns);
  for (const auto& line : cells) emit(line);
  for (const auto& note : r.notes) os << "note: " << note << '\n';
}

// ---- commands --------------------------------------------------------------

Report cmd_constants(const std::vector<std::size_t>& ns) {
  Report r;
  r.columns = {"n", "lambda", "half_lambda", "two_thirds_lambda", "sigma", "sigma_sum", "sigma_rel_residual",
               "kappa", "kappa_direct", "kappa_residual", "in_hypothesis"};
  for (std::size_t n : ns) {
    if (n < 2) usage("constants: n must be >= 2");
    const double lambda = spectral_gap(n);
    if (n < 4) {
      r.row({count(n), num(lambda), num(lambda / 2), num(2 * lambda / 3), none(), none(), none(), none(), none(),
             none(), false});
      continue;
    }
    const double s = sup_norm_constant(n), ss = sup_norm_constant_sum(n);
    const double k = l2_coercivity_constant(n), kd = l2_coercivity_constant_direct(n);
    const double sres = std::abs(ss - s) / s, kres = std::abs(kd - k);
    if (sres > 1e-10 || kres > 1e-12) r.violation = true;
    r.row({count(n), num(lambda), num(lambda / 2), num(2 * lambda / 3), num(s), num(ss), num(sres), num(k), num(kd),
           num(kres), true});
  }
  if (std::any_of(ns.begin(), ns.end(), [](std::size_t n) { return n < 4; })) {
    r.notes.push_back("n < 4: only lambda is meaningful; the sharp constants are claimed for n >= 4");
  }
  return r;
}

struct VerifyOptions {
  std::string target;
  std::string grid = "1e6";
  double t_min = 1e-8;
  double t_max = 1e8;
  std::string points = "1e6";
  std::string n;
  std::string trials;
  std::string refine = "10";
};

void verify_row(Report& r, const std::string& check, std::optional<std::size_t> n, std::size_t samples, double worst,
                double tol, bool higher_is_better, const std::string& location) {
  const bool pass = higher_is_better ? worst >= -tol : worst <= tol;
  if (!pass) r.violation = true;
  r.row({check, n ? count(*n) : none(), count(samples), num(worst), num(higher_is_better ? -tol : tol), pass,
         location});
}

std::string triple_text(const ScalarTriple& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "a=%.6g r=%.6g t=%.6g", p.a, p.r, p.t);
  return buf;
}

std::string at_text(const char* name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.10g", name, v);
  return buf;
}

Report cmd_verify(const VerifyOptions& o, std::uint64_t seed) {
  Report r;
  r.columns = {"check", "n", "samples", "worst", "tolerance", "pass", "location"};
  const std::string& t = o.target;
  auto ns = [&](const char* fallback) { return parse_range(o.n.empty() ? fallback : o.n); };
  auto trials = [&](const char* fallback) { return parse_count(o.trials.empty() ? fallback : o.trials, "--trials"); };

  if (t == "scalar") {
    const auto scan = scan_scalar_bounds(parse_count(o.grid, "--grid"));
    static const char* names[] = {"scalar_general", "scalar_five_cycle", "scalar_four_cycle"};
    for (std::size_t i = 0; i < 3; ++i) {
      verify_row(r, names[i], std::nullopt, scan.points, scan.entries[i].worst, 1e-12, true,
                 triple_text(scan.entries[i].at));
    }
    double worst = -INFINITY, at = 0;
    std::size_t samples = 0;
    for (int i = 0; i <= 200000; ++i, ++samples) {
      const double s = i == 0 ? 0.0 : std::pow(10.0, -8.0 + 14.0 * (i - 1) / 199999.0);
      for (auto b : {ScalarBound::General, ScalarBound::FiveCycle, ScalarBound::FourCycle}) {
        const double d = normalized_discriminant(b, s);
        if (d > worst) worst = d, at = s;
      }
    }
    // Strictly negative is required; report the largest value against 0.
    const bool pass = worst < 0.0;
    if (!pass) r.violation = true;
    r.row({std::string("discriminant_max"), none(), count(samples), num(worst), num(0.0), pass, at_text("s", at)});
  } else if (t == "majorant") {
    if (!(o.t_min > 0.0) || !(o.t_max > o.t_min)) usage("verify majorant: need 0 < t-min < t-max");
    const std::size_t pts = std::max<std::size_t>(parse_count(o.points, "--points"), 2);
    double worst = INFINITY, at = 0;
    const double lo = std::log10(o.t_min), hi = std::log10(o.t_max);
    for (std::size_t i = 0; i < pts; ++i) {
      const double x = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(pts - 1));
      const double h = majorant_deficit(x);
      if (h < worst) worst = h, at = x;
    }
    verify_row(r, "majorant_nonnegative", std::nullopt, pts, worst, 1e-12, true, at_text("t", at));
    double fourth = 0, fourth_at = 0;
    for (int i = 0; i <= 200; ++i) {
      const double x = 0.1 * std::pow(100.0, i / 200.0);
      const double res = majorant_fourth_derivative_residual(x, 1e-2 * x);
      if (res > fourth) fourth = res, fourth_at = x;
    }
    verify_row(r, "fourth_derivative_rel", std::nullopt, 201, fourth, 1e-4, false, at_text("t", fourth_at));
    double p3 = 0, p3_at = 0;
    for (int i = 0; i <= 200000; ++i) {
      const double x = -1e3 + 1e-2 * i;
      const double res = std::abs(majorant_identity_residual(x)) / std::max(1.0, std::abs(x * x * x));
      if (res > p3) p3 = res, p3_at = x;
    }
    verify_row(r, "polynomial_identity_scaled", std::nullopt, 200001, p3, 1e-12, false, at_text("t", p3_at));
  } else if (t == "highfreq") {
    const std::size_t m = trials("1000");
    for (std::size_t n : ns("4..64")) {
      if (n < 4) usage("verify highfreq: n must be >= 4");
      Rng rng = Rng::stream(seed, n);
      double sup = INFINITY, coer = INFINITY;
      const double kappa = l2_coercivity_constant(n);
      for (std::size_t i = 0; i < m; ++i) {
        const auto z = random_high_frequency(n, rng, rng.uniform(0.01, 3.0));
        sup = std::min(sup, sup_norm_bound_check(z).slack());
        coer = std::min(coer, q_form(z) - kappa * inner(z.values(), z.values()));
      }
      verify_row(r, "sup_norm_bound", n, m, sup, 1e-10, true, "");
      verify_row(r, "l2_coercivity", n, m, coer, 1e-12, true, "");
    }
  } else if (t == "cubic") {
    const std::size_t m = trials("1e4"), keep = parse_count(o.refine, "--refine");
    for (std::size_t n : ns("4..32")) {
      if (n < 4) usage("verify cubic: n must be >= 4");
      std::vector<std::pair<double, std::size_t>> scored(m);
      for (std::size_t i = 0; i < m; ++i) {
        Rng rng = Rng::stream(seed + n, i);
        scored[i] = {cubic_deficit(random_admissible_function(n, rng)).deficit, i};
      }
      const std::size_t k = std::min(keep, m);
      std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(k, 1)),
                        scored.end());
      verify_row(r, "cubic_random", n, m, m ? scored[0].first : 0.0, 1e-10, true,
                 m ? "trial " + std::to_string(scored[0].second) : "");
      if (k > 0) {
        double refined = INFINITY;
        std::size_t from = 0;
        for (std::size_t j = 0; j < k; ++j) {
          Rng rng = Rng::stream(seed + n, scored[j].second);
          const double d = minimize_cubic_deficit(random_admissible_function(n, rng)).deficit;
          if (d < refined) refined = d, from = scored[j].second;
        }
        verify_row(r, "cubic_refined", n, k, refined, 1e-10, true, "from trial " + std::to_string(from));
      }
    }
  } else if (t == "cases") {
    const std::size_t m = trials("1e4");
    Rng rng(seed);
    double c4 = 0, slack4 = INFINITY, c5 = 0, c6 = INFINITY;
    for (std::size_t i = 0; i < m; ++i) {
      const auto f = four_cycle_cross_terms(rng.normal(), rng.normal(), rng.normal());
      c4 = std::max({c4, std::abs(f.v_cube), std::abs(f.v_z_squared), std::abs(f.z_cube),
                     std::abs(f.v_squared_z - f.v_squared_z_formula), std::abs(f.r_squared - f.r_squared_formula),
                     f.mode_residual});
      slack4 = std::min(slack4, f.bound_slack);
    }
    for (std::size_t i = 0; i < m; ++i) {
      const std::complex<double> a(rng.normal(), rng.normal()), b(rng.normal(), rng.normal());
      c5 = std::max(c5, five_cycle_cube(a, b).residual / std::max(1.0, std::pow(std::abs(a) + std::abs(b), 3)));
    }
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t n = 6 + rng.index(59);
      c6 = std::min(c6, general_cross_term_bounds(random_first_mode(n, rng, rng.uniform(0.0, 2.0)),
                                                  random_high_frequency(n, rng, rng.uniform(0.0, 2.0)))
                            .worst_slack());
    }
    double fq = INFINITY;
    std::string fq_at;
    for (std::size_t n = 6; n <= 100; ++n) {
      const double kappa = l2_coercivity_constant(n);
      for (int a = 0; a <= 100; ++a) {
        const double tt = a / 100.0, q0 = kappa * tt * tt;
        for (int b = 0; b <= 100; ++b) {
          const double q = q0 + (10.0 - q0) * b / 100.0;
          const double d = final_q_deficit(q, tt, n);
          if (d < fq) fq = d, fq_at = "n=" + std::to_string(n) + " " + at_text("t", tt) + " " + at_text("Q", q);
        }
      }
    }
    verify_row(r, "four_cycle_residual", 4, m, c4, 1e-12, false, "");
    verify_row(r, "four_cycle_bound", 4, m, slack4, 1e-12, true, "");
    verify_row(r, "five_cycle_identity", 5, m, c5, 1e-12, false, "");
    verify_row(r, "general_case_bounds", std::nullopt, m, c6, 1e-10, true, "n in 6..64");
    verify_row(r, "final_q_grid", std::nullopt, 95 * 101 * 101, fq, 1e-12, true, fq_at);
  } else if (t == "chain") {
    const std::size_t m = trials("1000");
    for (std::size_t n : ns("4..32")) {
      if (n < 4) usage("verify chain: n must be >= 4");
      Rng rng = Rng::stream(seed, n);
      double worst = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const auto x = random_admissible_function(n, rng);
        worst = std::max(worst, std::abs(split_deficit(x) - cubic_deficit(x).deficit));
      }
      verify_row(r, "split_vs_direct", n, m, worst, 1e-10, false, "");
    }
  } else {
    usage("verify: unknown target '" + t + "'");
  }
  return r;
}

struct EstimateOptions {
  std::string target;
  std::string n;
  int restarts = 64;
  int max_iters = 20000;
  unsigned threads = 1;
  std::string projection = "clamp";
  double entropy_floor = 1e-8;
};

OptimizerConfig optimizer_config(const EstimateOptions& o, std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.seed = seed;
  cfg.restarts = o.restarts;
  cfg.max_iters = o.max_iters;
  cfg.threads = std::max(1u, o.threads);
  cfg.entropy_floor = o.entropy_floor;
  if (o.projection == "clamp") {
    cfg.projection = Projection::ClampRenormalize;
  } else if (o.projection == "square") {
    cfg.projection = Projection::SquareReparam;
  } else {
    usage("--projection must be 'clamp' or 'square'");
  }
  cfg.validate();
  return cfg;
}

Report cmd_estimate(const EstimateOptions& o, std::uint64_t seed) {
  Report r;
  r.columns = {"n", "estimate", "interior", "reference", "abs_gap", "restarts", "iterations", "converged", "note"};
  const auto cfg = optimizer_config(o, seed);
  if (o.target == "alpha") {
    for (std::size_t n : parse_range(o.n.empty() ? "4..12" : o.n)) {
      if (n < 2) usage("estimate alpha: n must be >= 2");
      const auto res = estimate_alpha(n, cfg);
      const double ref = spectral_gap(n) / 2;
      std::string note;
      if (n == 3) {
        note = res.value < ref - 1e-3 ? "strict inequality: alpha_3 < lambda_3/2" : "expected alpha_3 < lambda_3/2";
      }
      if (!res.converged) {
        r.nonconverged = true;
        note += note.empty() ? "not converged" : "; not converged";
      }
      r.row({count(n), num(res.value), num(res.interior_value), num(ref), num(std::abs(res.value - ref)),
             count(static_cast<std::size_t>(res.restarts_used)), static_cast<long long>(res.iterations),
             res.converged, note});
    }
  } else if (o.target == "cubic-constant") {
    for (std::size_t n : parse_range(o.n.empty() ? "4..12" : o.n)) {
      if (n < 4) usage("estimate cubic-constant: n must be >= 4");
      const auto res = estimate_cubic_constant(n, cfg);
      const double ref = 2 * spectral_gap(n) / 3;
      if (!res.converged) r.nonconverged = true;
      r.row({count(n), num(res.value), num(res.interior_value), num(ref), num(std::abs(res.value - ref)),
             count(static_cast<std::size_t>(res.restarts_used)), static_cast<long long>(res.iterations),
             res.converged, std::string(res.converged ? "" : "not converged")});
    }
  } else if (o.target == "gap") {
    for (std::size_t n : parse_range(o.n.empty() ? "4..16" : o.n)) {
      if (n < 2) usage("estimate gap: n must be >= 2");
      const double ref = spectral_gap(n);
      try {
        const auto g = spectral_gap_numeric(n);
        const char* method = g.method == GapMethod::DenseEigen ? "dense eigensolve" : "inverse iteration";
        r.row({count(n), num(g.value), none(), num(ref), num(std::abs(g.value - ref)), none(),
               static_cast<long long>(g.iterations), true, std::string(method)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonConvergence) throw;
        r.nonconverged = true;
        r.row({count(n), none(), none(), num(ref), none(), none(), none(), false, std::string(e.what())});
      }
    }
  } else {
    usage("estimate: unknown target '" + o.target + "'");
  }
  return r;
}

Report cmd_product(const std::string& spec, const EstimateOptions& o, std::size_t limit, std::uint64_t seed) {
  Report r;
  r.columns = {"factors", "states", "sharp", "estimate", "interior", "abs_gap", "in_hypothesis", "note"};
  const ProductSpace space(parse_product(spec));
  const bool hyp = space.within_hypothesis();
  Cell sharp = none();
  std::string note;
  if (hyp) {
    sharp = sharp_constant(space);
  } else {
    note = "3-cycle factor: no closed form, numeric only";
  }
  Cell est = none(), interior = none(), gap = none();
  if (space.state_count() <= limit) {
    const auto res = estimate_alpha_product(space, optimizer_config(o, seed), limit);
    est = res.value;
    interior = res.interior_value;
    if (hyp) gap = std::abs(res.value - std::get<double>(sharp));
    if (!res.converged) r.nonconverged = true;
  } else {
    note += std::string(note.empty() ? "" : "; ") + "state count above " + std::to_string(limit) + ", formula only";
  }
  r.row({spec, count(space.state_count()), sharp, est, interior, gap, hyp, note});
  return r;
}

struct HyperOptions {
  std::size_t n = 8;
  double p = 2.0;
  double q = 4.0;
  std::optional<double> t;
  std::string trials = "1e4";
};

Report cmd_hypercontract(const HyperOptions& o, std::uint64_t seed) {
  Report r;
  r.columns = {"case", "n", "p", "q", "t", "trials", "worst_deficit", "pass"};
  const double tmin = minimal_admissible_time(o.n, o.p, o.q);
  SemigroupQuery query{o.n, o.t.value_or(tmin), o.p, o.q};
  query.validate();
  if (!query.admissible()) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "t = %.17g is not admissible; minimal admissible t = %.17g", query.t, tmin);
    throw Error(ErrorCode::InadmissibleQuery, buf);
  }
  const std::size_t m = parse_count(o.trials, "--trials");
  Rng rng(seed);
  double worst = INFINITY;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> v(o.n);
    for (double& x : v) x = rng.uniform(0.0, 2.0);
    worst = std::min(worst, hypercontractivity_check(CycleFunction(std::move(v)), query).deficit);
  }
  const bool pass = m == 0 || worst >= -1e-10;
  if (!pass) r.violation = true;
  r.row({std::string("random"), count(o.n), num(o.p), num(o.q), num(query.t), count(m), num(m ? worst : 0.0), pass});

  // Near-tight case: a small first-mode ripple at the boundary time.
  const auto f = CycleFunction::constant(o.n, 1.0) + CycleFunction::cosine_mode(o.n, 1, 0.01);
  const double boundary = hypercontractivity_check(f, {o.n, tmin, o.p, o.q}).deficit;
  const bool bpass = boundary >= -1e-10;
  if (!bpass) r.violation = true;
  r.row({std::string("boundary"), count(o.n), num(o.p), num(o.q), num(tmin), count(1), num(boundary), bpass});
  if (o.n < 4) r.notes.push_back("n < 4 lies outside the range where the bound is claimed");
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for sharp functional inequalities on discrete cycles", "cyclelsi"};
  app.set_version_flag("--version", CYCLELSI_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false, as_csv = false, strict = false;
  std::uint64_t seed = 0;
  std::string out_path;
  app.add_flag("--json", as_json, "JSON report");
  app.add_flag("--csv", as_csv, "CSV report");
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_flag("--strict", strict, "exit 3 when an estimate does not converge");
  app.add_option("--out", out_path, "write the report to FILE");

  std::string n_range;
  auto* constants = app.add_subcommand("constants", "closed-form constants and spectral cross-checks");
  constants->add_option("--n", n_range, "n or a..b")->default_str("4..16");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("target", vo.target, "scalar | majorant | highfreq | cubic | cases | chain")
      ->required()
      ->check(CLI::IsMember({"scalar", "majorant", "highfreq", "cubic", "cases", "chain"}));
  verify->add_option("--grid", vo.grid, "octant grid points (scalar)")->capture_default_str();
  verify->add_option("--t-min", vo.t_min, "smallest t (majorant)")->capture_default_str();
  verify->add_option("--t-max", vo.t_max, "largest t (majorant)")->capture_default_str();
  verify->add_option("--points", vo.points, "log-grid points (majorant)")->capture_default_str();
  verify->add_option("--n", vo.n, "n or a..b");
  verify->add_option("--trials", vo.trials, "random trials per n");
  verify->add_option("--refine", vo.refine, "worst samples refined by descent (cubic)")->capture_default_str();

  EstimateOptions eo;
  auto add_optimizer_flags = [&eo](CLI::App* cmd) {
    cmd->add_option("--restarts", eo.restarts)->capture_default_str();
    cmd->add_option("--max-iters", eo.max_iters)->capture_default_str();
    cmd->add_option("--threads", eo.threads)->capture_default_str();
    cmd->add_option("--projection", eo.projection, "clamp | square")->capture_default_str();
    cmd->add_option("--entropy-floor", eo.entropy_floor)->capture_default_str();
  };
  auto* estimate = app.add_subcommand("estimate", "numerical constants by optimisation");
  estimate->add_option("target", eo.target, "alpha | cubic-constant | gap")
      ->required()
      ->check(CLI::IsMember({"alpha", "cubic-constant", "gap"}));
  estimate->add_option("--n", eo.n, "n or a..b");
  add_optimizer_flags(estimate);

  std::string product_spec;
  std::size_t state_limit = ProductSpace::kDefaultStateLimit;
  auto* product = app.add_subcommand("product", "weighted products of cycles");
  product->add_option("spec", product_spec, "n1:c1,n2:c2,...")->required();
  product->add_option("--limit", state_limit, "largest state count optimised")->capture_default_str();
  add_optimizer_flags(product);

  HyperOptions ho;
  double t_value = 0.0;
  auto* hyper = app.add_subcommand("hypercontract", "random checks of the hypercontractive bound");
  hyper->add_option("--n", ho.n)->capture_default_str();
  hyper->add_option("--p", ho.p)->capture_default_str();
  hyper->add_option("--q", ho.q)->capture_default_str();
  auto* t_opt = hyper->add_option("--t", t_value, "time (default: smallest admissible)");
  hyper->add_option("--trials", ho.trials)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kOk : kUsage;
  }
  if (as_json && as_csv) {
    err << "error: --json and --csv are exclusive\n";
    return kUsage;
  }

  Report report;
  try {
    if (*constants) {
      report = cmd_constants(parse_range(n_range.empty() ? "4..16" : n_range));
      report.command = "constants";
      report.parameters["n"] = n_range.empty() ? "4..16" : n_range;
    } else if (*verify) {
      report = cmd_verify(vo, seed);
      report.command = "verify " + vo.target;
      report.parameters = {{"target", vo.target}, {"grid", vo.grid},     {"t_min", vo.t_min},
                           {"t_max", vo.t_max},   {"points", vo.points}, {"n", vo.n},
                           {"trials", vo.trials}, {"refine", vo.refine}};
    } else if (*estimate) {
      report = cmd_estimate(eo, seed);
      report.command = "estimate " + eo.target;
      report.parameters = {{"target", eo.target},       {"n", eo.n},
                           {"restarts", eo.restarts},   {"max_iters", eo.max_iters},
                           {"threads", eo.threads},     {"projection", eo.projection},
                           {"entropy_floor", eo.entropy_floor}};
    } else if (*product) {
      report = cmd_product(product_spec, eo, state_limit, seed);
      report.command = "product";
      report.parameters = {{"spec", product_spec},    {"limit", state_limit},       {"restarts", eo.restarts},
                           {"max_iters", eo.max_iters}, {"projection", eo.projection}};
    } else if (*hyper) {
      if (*t_opt) ho.t = t_value;
      report = cmd_hypercontract(ho, seed);
      report.command = "hypercontract";
      report.parameters = {{"n", ho.n}, {"p", ho.p}, {"q", ho.q}, {"trials", ho.trials}};
      report.parameters["t"] = ho.t ? json(*ho.t) : json(nullptr);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::NonConvergence ? (strict ? kNonConvergence : kViolation) : kUsage;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot write " << out_path << '\n';
      return kUsage;
    }
  }
  std::ostream& os = out_path.empty() ? out : file;
  if (as_json) {
    render_json(report, seed, os);
  } else if (as_csv) {
    render_csv(report, os);
  } else {
    render_table(report, seed, os);
  }

  if (report.violation) return kViolation;
  if (strict && report.nonconverged) return kNonConvergence;
  return kOk;
}

}  // namespace cyclelsi::cli
