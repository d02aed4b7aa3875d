#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hessbound/bounds.hpp"
#include "hessbound/io.hpp"
#include "hessbound/pderef.hpp"
#include "hessbound/radial.hpp"
#include "hessbound/sweep.hpp"
#include "hessbound/web.hpp"
#include "svg.hpp"

namespace hessbound::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

struct RunConfig {
  std::string body_path;
  std::vector<double> ball;
  std::string k = "1";
  int samples = 64;
  double h = 0.0;
  std::string eps = "0.2,0.1,0.05,0.025";
  std::string profile;
  std::optional<unsigned long long> seed;
  std::string out_dir;
  bool plot = false;
  int count = 100;
  int vertices = 8;
};

struct Artifact {
  std::string name;
  std::string content;
};

ConvexBody load(const RunConfig& c) {
  const bool has_body = !c.body_path.empty();
  const bool has_ball = !c.ball.empty();
  if (has_body == has_ball) throw InputError("give exactly one of --body PATH or --ball N R");
  if (has_body) return io::load_body(c.body_path);
  const double n = c.ball[0];
  if (n != std::floor(n) || n < 2 || n > 64) throw InputError("--ball: dimension must be an integer in [2, 64]");
  return Ball(static_cast<int>(n), c.ball[1]);
}

std::vector<int> orders(const RunConfig& c, int n) {
  if (c.k == "all") {
    std::vector<int> ks;
    for (int k = 1; k <= n; ++k) ks.push_back(k);
    return ks;
  }
  int k = 0;
  std::size_t pos = 0;
  try {
    k = std::stoi(c.k, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != c.k.size() || pos == 0) throw InputError("--k must be an integer or 'all'");
  if (k < 1 || k > n) throw InputError("--k must satisfy 1 <= k <= " + std::to_string(n));
  return {k};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size() || !(x > 0.0)) throw InputError("--eps: expected positive numbers, got '" + item + "'");
    v.push_back(x);
  }
  if (v.empty()) throw InputError("--eps: empty list");
  return v;
}

std::optional<ProfileFamily> parse_profile(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "radial") return RadialFamily{};
  if (text == "power") return PowerFamily{};
  if (text.rfind("power:", 0) == 0) {
    const auto rest = text.substr(6);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw InputError("--profile: expected power:LO:HI");
    try {
      PowerFamily f{std::stod(rest.substr(0, colon)), std::stod(rest.substr(colon + 1))};
      if (!(f.lo >= 1.0) || f.hi < f.lo) throw InputError("--profile: need 1 <= LO <= HI");
      return f;
    } catch (const std::invalid_argument&) {
      throw InputError("--profile: expected power:LO:HI");
    }
  }
  throw InputError("--profile: expected power:LO:HI or radial");
}

void check_common(const RunConfig& c) {
  if (c.samples < 16 || c.samples > 100000) throw InputError("--samples must be in [16, 100000]");
  if (c.h < 0.0) throw InputError("--h must be positive");
  if (c.count < 0 || c.count > 1000000) throw InputError("--count must be in [0, 1000000]");
  if (c.vertices < 3 || c.vertices > 10000) throw InputError("--vertices must be in [3, 10000]");
}

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HESSBOUND_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw InputError("HESSBOUND_THREADS must be a positive integer");
    n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

std::vector<Artifact> cmd_quermass(const RunConfig& c) {
  const auto body = load(c);
  return {{"quermass.json", io::dump(io::quermass_json(body))}};
}

std::vector<Artifact> cmd_sweep(const RunConfig& c) {
  const auto body = load(c);
  const auto sw = sweep(body, c.samples);
  std::ostringstream csv;
  io::write_sweep_csv(csv, sw);
  std::vector<Artifact> out{{"sweep.csv", csv.str()}};
  if (c.plot) {
    std::vector<Series> series;
    for (int i = 0; i < sw.dim(); ++i) {
      Series s{"W" + std::to_string(i) + "(t)/W" + std::to_string(i) + "(0)", {}, {}};
      const double w0 = sw.samples().front().w[i];
      for (const auto& smp : sw.samples()) {
        s.x.push_back(smp.t);
        s.y.push_back(smp.w[i] / w0);
      }
      series.push_back(std::move(s));
    }
    out.push_back({"sweep.svg", line_chart("Quermassintegrals of inner parallel bodies", "t", series)});
  }
  return out;
}

std::vector<Artifact> cmd_radial(const RunConfig& c) {
  if (c.ball.empty() || !c.body_path.empty()) throw InputError("radial: use --ball N R");
  const auto body = load(c);
  const auto& ball = std::get<Ball>(body);
  json results = json::array();
  std::vector<Artifact> out;
  for (int k : orders(c, ball.dim)) {
    const auto prof = solve_ball_eigenvalue(ball.dim, k, ball.radius);
    const auto norms = profile_norms(prof, k + 1.0);
    results.push_back({{"k", k},
                       {"lambda", io::round12(prof.lambda)},
                       {"lambda_unit_ball", io::round12(prof.lambda * std::pow(ball.radius, 2.0 * k))},
                       {"sup_norm", io::round12(norms.sup)},
                       {"p", k + 1},
                       {"lp_norm", io::round12(norms.norm)},
                       {"c_omega", io::round12(std::pow(norms.sup / norms.norm, k + 1.0))}});
    std::ostringstream csv;
    io::write_profile_csv(csv, prof);
    out.push_back({"profile_k" + std::to_string(k) + ".csv", csv.str()});
  }
  json j = {{"n", ball.dim}, {"radius", io::round12(ball.radius)}, {"results", results}};
  out.insert(out.begin(), Artifact{"radial.json", io::dump(j)});
  return out;
}

std::vector<Artifact> cmd_web(const RunConfig& c) {
  const auto body = load(c);
  const auto ks = orders(c, dimension(body));
  const auto family = parse_profile(c.profile);
  const auto sw = sweep(body, c.samples);
  json results = json::array();
  for (int k : ks) {
    json r;
    if (family) {
      r = io::rayleigh_json(optimize_profile(*family, sw, k));
    } else {
      r["power"] = io::rayleigh_json(optimize_profile(PowerFamily{}, sw, k));
      r["radial"] = io::rayleigh_json(optimize_profile(RadialFamily{}, sw, k));
    }
    results.push_back(r);
  }
  json lemd = json::array();
  for (int p = 1; p <= 3; ++p) {
    const auto l = lemd_verify(WebProfile::power(p), sw);
    lemd.push_back({{"f", "t^" + std::to_string(p)},
                    {"lhs", io::round12(l.lhs)},
                    {"rhs", io::round12(l.rhs)},
                    {"margin", io::round12(l.margin)}});
  }
  json j = {{"body", describe(body)}, {"inradius", io::round12(sw.inradius())}, {"results", results}, {"lemd", lemd}};
  return {{"web.json", io::dump(j)}};
}

std::vector<Artifact> cmd_deps(const RunConfig& c) {
  const auto body = load(c);
  const auto* poly = std::get_if<Polygon2D>(&body);
  if (!poly) throw InputError("deps: needs a polygon body");
  const auto eps = parse_list(c.eps);
  const double h = c.h > 0.0 ? c.h : std::min(poly->diameter() / 256.0, *std::min_element(eps.begin(), eps.end()) / 4.0);
  for (double e : eps) {
    if (h > e / 4.0 * (1.0 + 1e-12)) throw InputError("deps: h must not exceed eps/4 for every eps");
  }
  auto dom = std::make_shared<const GridDomain>(*poly, h);
  json rows = json::array();
  std::vector<Artifact> out;
  Series gap{"sup |d_eps - d|", {}, {}};
  for (double e : eps) {
    const auto r = solve_deps(dom, e);
    const auto d = diagnose_deps(r);
    rows.push_back({{"eps", io::round12(e)},
                    {"iterations", r.iterations},
                    {"residual", io::round12(r.residual)},
                    {"min_value", io::round12(d.min_value)},
                    {"max_excess", io::round12(d.max_excess)},
                    {"sup_gap", io::round12(d.sup_gap)},
                    {"max_gradient", io::round12(d.max_gradient)},
                    {"gradient_constant", io::round12(d.gradient_constant)},
                    {"max_second_difference", io::round12(d.max_second_difference)},
                    {"reconstruction_error", io::round12(d.reconstruction_error)}});
    gap.x.push_back(e);
    gap.y.push_back(d.sup_gap);
    if (!c.out_dir.empty()) {
      std::ostringstream csv, pgm;
      io::json::string_t tag = io::format12(e);
      write_csv(csv, r.w);
      write_pgm(pgm, r.w);
      out.push_back({"deps_eps" + tag + ".csv", csv.str()});
      out.push_back({"deps_eps" + tag + ".pgm", pgm.str()});
    }
  }
  json j = {{"body", describe(body)}, {"h", io::round12(h)}, {"unknowns", dom->unknowns()}, {"results", rows}};
  out.insert(out.begin(), Artifact{"deps.json", io::dump(j)});
  if (c.plot) out.push_back({"deps.svg", line_chart("Viscous distance error", "eps", {gap}, true)});
  return out;
}

ReportOptions report_options(const RunConfig& c) {
  ReportOptions o;
  o.samples = c.samples;
  o.h = c.h;
  o.family = parse_profile(c.profile);
  return o;
}

bool all_failed(const BoundReport& r) {
  return !r.faber_krahn.ok() && !r.makai.ok() && !r.web.ok() && !r.stability.ok();
}

std::vector<Artifact> cmd_report(const RunConfig& c, int& status) {
  const auto body = load(c);
  const auto ks = orders(c, dimension(body));
  const auto opts = report_options(c);
  json reports = json::array();
  std::vector<BarGroup> groups;
  bool every_failed = true;
  for (int k : ks) {
    const auto r = report(body, k, opts);
    every_failed = every_failed && all_failed(r);
    reports.push_back(io::report_json(r));
    BarGroup g{"k = " + std::to_string(k), {}};
    if (r.faber_krahn.ok()) g.bars.push_back({r.faber_krahn.value->conditional ? "lower*" : "lower", r.faber_krahn.value->value});
    if (r.reference.ok()) g.bars.push_back({"reference", r.reference.value->value});
    if (r.web.ok()) g.bars.push_back({"web", r.web.value->quotient});
    if (r.stability.ok() && r.stability.value->applicable) g.bars.push_back({"stability", r.stability.value->value});
    if (r.makai.ok()) g.bars.push_back({"makai", r.makai.value->value});
    groups.push_back(std::move(g));
  }
  if (every_failed) status = 3;
  json j = {{"schema", "hessbound/1"}, {"reports", reports}};
  std::vector<Artifact> out{{"report.json", io::dump(j)}};
  if (c.plot) out.push_back({"report.svg", bar_chart("Eigenvalue bounds: " + describe(body), groups)});
  return out;
}

std::vector<Artifact> cmd_corpus(const RunConfig& c) {
  if (!c.seed) throw InputError("corpus: --seed is required");
  if (!c.body_path.empty() || !c.ball.empty()) throw InputError("corpus: bodies are generated, drop --body/--ball");
  const auto ks = orders(c, 2);
  const auto opts = report_options(c);
  const unsigned threads = thread_cap();
  const std::size_t rows = static_cast<std::size_t>(c.count) * ks.size();
  std::vector<std::string> lines(rows);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < rows; job = next++) {
      const std::size_t i = job / ks.size();
      const int k = ks[job % ks.size()];
      const auto body_seed = corpus_body_seed(*c.seed, i);
      try {
        const auto poly = random_polygon(body_seed, c.vertices);
        const auto r = report(poly, k, opts);
        std::string errors;
        for (const auto* e : {&r.faber_krahn.error, &r.makai.error, &r.web.error, &r.stability.error,
                              &r.reference.error, &r.chain.error}) {
          if (!e->empty()) errors += (errors.empty() ? "" : "; ") + *e;
        }
        for (const auto& v : r.ordering.violations) errors += (errors.empty() ? "" : "; ") + v;
        lines[job] = io::report_csv_row(i, body_seed, r, errors);
      } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '"', '\'');
        lines[job] = std::to_string(i) + ',' + std::to_string(body_seed) + ",\"\"," + std::to_string(k) +
                     std::string(15, ',') + ",0,\"" + msg + "\"";
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(threads, rows); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::string csv = io::report_csv_header() + "\n";
  for (const auto& l : lines) csv += l + "\n";
  return {{"corpus.csv", csv}};
}

// Writes every artifact to a temporary name first, so a failure leaves no
// partial output behind.
void write_artifacts(const std::string& dir, const std::vector<Artifact>& arts) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir);
  std::vector<fs::path> temps;
  for (const auto& a : arts) {
    const fs::path tmp = fs::path(dir) / (a.name + ".tmp");
    std::ofstream f(tmp, std::ios::binary);
    f << a.content;
    if (!f) {
      for (const auto& t : temps) fs::remove(t, ec);
      fs::remove(tmp, ec);
      throw InputError("cannot write " + tmp.string());
    }
    temps.push_back(tmp);
  }
  for (std::size_t i = 0; i < arts.size(); ++i) fs::rename(temps[i], fs::path(dir) / arts[i].name);
}

}  // namespace

unsigned long long corpus_body_seed(unsigned long long seed, std::size_t i) {
  // splitmix64 of (seed, i)
  unsigned long long z = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounds for principal k-Hessian eigenvalues on convex bodies", "hessbound"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  RunConfig c;

  auto add_body = [&](CLI::App* s) {
    s->add_option("--body", c.body_path, "body JSON file");
    s->add_option("--ball", c.ball, "ball dimension and radius")->expected(2);
  };
  auto add_k = [&](CLI::App* s) { s->add_option("--k", c.k, "order k, or 'all'"); };
  auto add_out = [&](CLI::App* s) {
    s->add_option("--out", c.out_dir, "output directory");
    s->add_flag("--plot", c.plot, "also write an SVG chart");
  };

  auto* quer = app.add_subcommand("quermass", "quermassintegrals and Aleksandrov-Fenchel report");
  add_body(quer);
  add_out(quer);
  auto* swp = app.add_subcommand("sweep", "quermassintegrals of the inner parallel bodies");
  add_body(swp);
  swp->add_option("--samples", c.samples, "base sample count (>= 16)");
  add_out(swp);
  auto* rad = app.add_subcommand("radial", "radial eigenfunction on a ball");
  rad->add_option("--ball", c.ball, "ball dimension and radius")->expected(2)->required();
  add_k(rad);
  add_out(rad);
  auto* web = app.add_subcommand("web", "web-function Rayleigh quotients");
  add_body(web);
  add_k(web);
  web->add_option("--samples", c.samples, "sweep sample count");
  web->add_option("--profile", c.profile, "power:LO:HI or radial");
  add_out(web);
  auto* deps = app.add_subcommand("deps", "viscous approximation of the distance function");
  add_body(deps);
  deps->add_option("--h", c.h, "grid spacing");
  deps->add_option("--eps", c.eps, "comma-separated eps values");
  add_out(deps);
  auto* rep = app.add_subcommand("report", "all bounds for one body");
  add_body(rep);
  add_k(rep);
  rep->add_option("--samples", c.samples, "sweep sample count");
  rep->add_option("--h", c.h, "finite-difference spacing for the k = 1 reference");
  rep->add_option("--profile", c.profile, "power:LO:HI or radial");
  add_out(rep);
  auto* cor = app.add_subcommand("corpus", "bounds over seeded random polygons");
  cor->add_option("--seed", c.seed, "corpus seed")->required();
  cor->add_option("--count", c.count, "number of polygons");
  cor->add_option("--vertices", c.vertices, "vertices per polygon");
  add_k(cor);
  cor->add_option("--samples", c.samples, "sweep sample count");
  cor->add_option("--h", c.h, "finite-difference spacing");
  cor->add_option("--profile", c.profile, "power:LO:HI or radial");
  add_out(cor);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hessbound: " << e.what() << "\n";
    return 2;
  }

  int status = 0;
  try {
    check_common(c);
    std::vector<Artifact> arts;
    if (*quer) arts = cmd_quermass(c);
    else if (*swp) arts = cmd_sweep(c);
    else if (*rad) arts = cmd_radial(c);
    else if (*web) arts = cmd_web(c);
    else if (*deps) arts = cmd_deps(c);
    else if (*rep) arts = cmd_report(c, status);
    else if (*cor) arts = cmd_corpus(c);
    if (c.out_dir.empty()) {
      out << arts.front().content;
    } else {
      write_artifacts(c.out_dir, arts);
    }
  } catch (const InputError& e) {
    err << "hessbound: input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "hessbound: numerical failure: " << e.what() << "\n";
    return 3;
  }
  return status;
}

}  // namespace hessbound::cli
