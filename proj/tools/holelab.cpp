// holelab: command-line front end. Every subcommand writes CSV data plus a
// run.json summary to --out; see README for the subcommand reference.

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "holelab/holelab.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace holelab;

namespace {

// shortest round-trip decimal
std::string num(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

class Csv {
 public:
  Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    row_strings(header);
  }
  void row(std::initializer_list<double> v) {
    std::vector<std::string> s;
    for (double x : v) s.push_back(num(x));
    row_strings(s);
  }
  void row_strings(const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out_ << (i ? "," : "") << v[i];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

struct Run {
  std::string command;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::size_t threads = 1;
  json outputs = json::object();
  std::vector<std::string> files;

  fs::path file(const std::string& name) {
    files.push_back(name);
    return fs::path(out) / name;
  }
};

void write_points(Run& run, const std::string& name, const PointConfiguration& c) {
  Csv csv(run.file(name), {"re", "im"});
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Point z = c.unscaled(i);
    csv.row({z.real(), z.imag()});
  }
}

void write_profile(Run& run, const std::string& name, const RadialHistogram& h) {
  Csv csv(run.file(name), {"r", "value", "stderr"});
  for (std::size_t b = 0; b < h.intensity.size(); ++b) csv.row({h.center(b), h.intensity[b], h.std_error[b]});
}

// JSON with non-finite numbers as strings
json jnum(double x) { return std::isfinite(x) ? json(x) : json(num(x)); }

// Flat JSON config: global keys go to the top-level app, the rest to the
// active subcommand.
class JsonConfig : public CLI::Config {
 public:
  std::string section;

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config: expected a flat JSON object");
    static const std::set<std::string> global{"seed", "out", "threads"};
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.name = key;
      if (!global.count(key) && !section.empty()) item.parents = {section};
      auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
      if (value.is_array())
        for (const auto& v : value) item.inputs.push_back(text(v));
      else
        item.inputs.push_back(text(value));
      items.push_back(std::move(item));
    }
    return items;
  }
};

json parameters(const CLI::App* sub) {
  json p = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
    std::vector<std::string> vals = opt->results();
    if (vals.empty() && !opt->get_default_str().empty()) vals = {opt->get_default_str()};
    auto conv = [](const std::string& s) -> json {
      long long i;
      const auto ri = std::from_chars(s.data(), s.data() + s.size(), i);
      if (ri.ec == std::errc() && ri.ptr == s.data() + s.size()) return i;
      double d;
      const auto r = std::from_chars(s.data(), s.data() + s.size(), d);
      if (r.ec == std::errc() && r.ptr == s.data() + s.size()) return d;
      if (s == "true") return true;
      if (s == "false") return false;
      return s;
    };
    if (opt->get_expected_max() > 1) {
      json a = json::array();
      for (const auto& v : vals) a.push_back(conv(v));
      p[opt->get_lnames()[0]] = a;
    } else if (vals.empty()) {
      p[opt->get_lnames()[0]] = opt->get_type_size() == 0 ? json(false) : json(nullptr);
    } else {
      p[opt->get_lnames()[0]] = conv(vals.back());
    }
  }
  return p;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return x;
}

json measure_json(const RadialMeasure& mu) {
  json an = json::array(), at = json::array();
  for (const auto& a : mu.annuli()) an.push_back({{"r_lo", a.r_lo}, {"r_hi", jnum(a.r_hi)}, {"density", a.density}});
  for (const auto& c : mu.atoms()) at.push_back({{"radius", c.radius}, {"mass", c.mass}});
  return {{"annuli", an}, {"atoms", at}};
}

double measure_density(const RadialMeasure& mu, double r) {
  double d = 0.0;
  for (const auto& a : mu.annuli())
    if (r >= a.r_lo && r < a.r_hi) d += a.density;
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holelab: hole events, conditional measures and Coulomb-gas experiments"};
  app.require_subcommand(1);
  Run run;
  app.add_option("--seed", run.seed, "random seed (u64)")->capture_default_str();
  app.add_option("--out", run.out, "output directory")->capture_default_str();
  app.add_option("--threads", run.threads, "worker count (runs are sequential; accepted for compatibility)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto config = std::make_shared<JsonConfig>();
  app.config_formatter(config);
  app.set_config("--config", "", "flat JSON object of flag values; flags on the command line win");
  app.allow_config_extras(CLI::config_extras_mode::error);

  // sample
  auto* sample = app.add_subcommand("sample", "draw configurations from an exact sampler");
  std::string ensemble = "ginibre";
  std::size_t n = 100, replicas = 1;
  double R = 5.0, alpha = 0.0;
  sample->add_option("--ensemble", ensemble, "ginibre | kostlan | weyl | gef | gue")
      ->check(CLI::IsMember({"ginibre", "kostlan", "weyl", "gef", "gue"}))
      ->capture_default_str();
  sample->add_option("--n", n, "matrix size or polynomial degree")->capture_default_str();
  sample->add_option("--R", R, "GEF window radius")->capture_default_str();
  sample->add_option("--alpha", alpha, "GEF truncation factor (0 = minimum safe value)")->capture_default_str();
  sample->add_option("--replicas", replicas, "number of independent draws")->check(CLI::PositiveNumber)->capture_default_str();

  // holeprob
  auto* holeprob = app.add_subcommand("holeprob", "log-probability of an empty disk");
  std::string hp_ensemble = "ginibre";
  double r = 5.0, r_step = 1.0;
  bool infinite = false;
  std::size_t finite_n = 0;
  holeprob->add_option("--ensemble", hp_ensemble, "ginibre | gef")->check(CLI::IsMember({"ginibre", "gef"}))->capture_default_str();
  holeprob->add_option("--r", r, "hole radius")->capture_default_str();
  holeprob->add_option("--step", r_step, "radius step of the sweep written to CSV")->check(CLI::PositiveNumber)->capture_default_str();
  auto* inf_flag = holeprob->add_flag("--infinite", infinite, "infinite Ginibre ensemble (default)");
  holeprob->add_option("--n", finite_n, "finite Ginibre size")->excludes(inf_flag);

  // condintensity
  auto* cond = app.add_subcommand("condintensity", "Ginibre intensity conditioned on a hole");
  double r_max = 0.0;
  std::size_t grid = 200;
  cond->add_option("--R", R, "hole radius")->capture_default_str();
  cond->add_option("--r-max", r_max, "profile end (0 = 3R)")->capture_default_str();
  cond->add_option("--grid", grid, "profile points")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))->capture_default_str();

  // measures
  auto* measures = app.add_subcommand("measures", "constrained energy minimizers");
  double p = 0.0, beta = 2.0;
  measures->add_option("--p", p, "mass fraction in the unit disk")->capture_default_str();
  measures->add_option("--alpha", alpha, "external field strength (0 = 1)")->capture_default_str();
  measures->add_option("--beta", beta, "inverse temperature")->capture_default_str();
  measures->add_option("--grid", grid, "profile points")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))->capture_default_str();

  // mcmc
  auto* mcmc = app.add_subcommand("mcmc", "Metropolis-Hastings for beta-Ginibre or Weyl zeros");
  std::string chain_ensemble = "beta-ginibre";
  std::size_t N = 64, steps = 200000, burnin = 50000, thin = 1000, bins = 40;
  double hole_radius = 0.0;
  mcmc->add_option("--ensemble", chain_ensemble, "beta-ginibre | weyl")->check(CLI::IsMember({"beta-ginibre", "weyl"}))->capture_default_str();
  mcmc->add_option("--beta", beta, "inverse temperature")->capture_default_str();
  mcmc->add_option("--N", N, "particles")->capture_default_str();
  mcmc->add_option("--R", R, "Weyl coordinate scale")->capture_default_str();
  mcmc->add_option("--hole", hole_radius, "hole radius around the origin (0 = none)")->capture_default_str();
  mcmc->add_option("--steps", steps, "total updates")->capture_default_str();
  mcmc->add_option("--burnin", burnin, "adaptive updates discarded")->capture_default_str();
  mcmc->add_option("--thin", thin, "updates between stored samples")->capture_default_str();
  mcmc->add_option("--bins", bins, "radial profile bins")->capture_default_str();
  mcmc->add_option("--r-max", r_max, "radial profile end (0 = automatic)")->capture_default_str();

  // fekete
  auto* fekete = app.add_subcommand("fekete", "weighted Fekete and Leja points outside a hole");
  std::string hole_kind = "disk";
  double radius = 1.0, outer = 0.0;
  std::vector<double> vertices;
  std::vector<std::size_t> rate_ns;
  std::size_t restarts = 20, leja_grid = 0;
  fekete->add_option("--n", n, "number of points")->capture_default_str();
  fekete->add_option("--hole", hole_kind, "none | disk | polygon")->check(CLI::IsMember({"none", "disk", "polygon"}))->capture_default_str();
  fekete->add_option("--radius", radius, "disk hole radius")->capture_default_str();
  fekete->add_option("--vertices", vertices, "polygon vertices x1,y1,x2,y2,...")->delimiter(',');
  fekete->add_option("--outer", outer, "outer radius of the domain (0 = unbounded)")->capture_default_str();
  fekete->add_option("--restarts", restarts, "optimizer restarts")->check(CLI::PositiveNumber)->capture_default_str();
  fekete->add_option("--leja", leja_grid, "also compute Leja points on a grid of this resolution");
  fekete->add_option("--rate", rate_ns, "estimate the hole rate from these sizes, e.g. 50,80,120")->delimiter(',');

  // gefhole
  auto* gefhole = app.add_subcommand("gefhole", "GEF zeros conditioned on a coefficient event");
  std::size_t samples = 100;
  gefhole->add_option("--R", R, "hole radius")->capture_default_str();
  gefhole->add_option("--p", p, "fraction of the R^2 zeros kept inside (0 = hole)")->capture_default_str();
  gefhole->add_option("--samples", samples, "conditional draws")->check(CLI::PositiveNumber)->capture_default_str();
  gefhole->add_option("--bins", bins, "radial profile bins")->capture_default_str();

  // jlm
  auto* jlm = app.add_subcommand("jlm", "large count-deviation exponents and prefactors");
  double a = 1.5, b = 1.0;
  std::optional<double> c_beta;
  jlm->add_option("--a", a, "deviation exponent")->capture_default_str();
  jlm->add_option("--b", b, "deviation amplitude")->capture_default_str();
  jlm->add_option("--beta", beta, "inverse temperature")->capture_default_str();
  jlm->add_option("--R", R, "disk radius")->capture_default_str();
  jlm->add_option("--c-beta", c_beta, "variance constant for a < 1 (unknown by default)");

  // oned
  auto* oned = app.add_subcommand("oned", "1D equilibrium density with a symmetric gap");
  double w = 0.0;
  oned->add_option("--w", w, "gap half-width")->capture_default_str();
  oned->add_option("--grid", grid, "density points")->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  std::vector<int> criteria;
  verify->add_option("--criteria", criteria, "subset of criteria 1..12")->delimiter(',')->check(CLI::Range(1, 12));

  // the config file feeds the subcommand named on the command line
  for (int i = 1; i < argc; ++i)
    for (const auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
      if (sub->get_name() == argv[i] && config->section.empty()) config->section = argv[i];

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  run.command = sub->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  int status = 0;
  try {
    fs::create_directories(run.out);
    Rng rng(run.seed);
    json& o = run.outputs;

    if (run.command == "sample") {
      for (std::size_t k = 0; k < replicas; ++k) {
        const std::string suffix = replicas == 1 ? "" : "_" + std::to_string(k);
        if (ensemble == "kostlan" || ensemble == "gue") {
          const auto v = ensemble == "kostlan" ? sample_ginibre_radii(n, rng) : sample_gue(n, rng);
          Csv csv(run.file((ensemble == "kostlan" ? "radii" : "eigenvalues") + suffix + ".csv"), {ensemble == "kostlan" ? "r" : "x"});
          for (double x : v) csv.row({x});
          continue;
        }
        PointConfiguration c;
        if (ensemble == "ginibre") {
          // unit density: multiply the spectrum of the normalized matrix by sqrt(n)
          const auto m = sample_ginibre_matrix(n, rng);
          c = PointConfiguration(m.points(), std::sqrt(static_cast<double>(n)), "ginibre");
        } else if (ensemble == "weyl") {
          c = sample_weyl_zeros(n, rng);
        } else {
          c = sample_gef_zeros(R, alpha > 0.0 ? alpha : gef_alpha_min(R), rng);
        }
        if (c.degraded) o["degraded"] = true;
        o["points"].push_back(c.size());
        write_points(run, "points" + suffix + ".csv", c);
      }
      o["ensemble"] = ensemble;
    } else if (run.command == "holeprob") {
      require(r > 0.0, "holeprob: r must be positive");
      std::optional<std::size_t> fin;
      if (finite_n > 0) fin = finite_n;
      auto eval = [&](double x) {
        if (hp_ensemble == "ginibre") return hole_log_prob_ginibre(x, fin);
        return event_log_prob(hole_event_constraints(x, 0.0));
      };
      Csv csv(run.file("holeprob.csv"), {"r", "log_p", "log_p_over_r4"});
      const double start = hp_ensemble == "gef" ? 2.0 : r_step;
      for (double x = start; x < r - 1e-12; x += r_step) {
        const double lp = eval(x);
        csv.row({x, lp, lp / std::pow(x, 4)});
      }
      const double lp = eval(r);
      csv.row({r, lp, lp / std::pow(r, 4)});
      o["log_p"] = lp;
      o["log_p_over_r4"] = lp / std::pow(r, 4);
      if (hp_ensemble == "ginibre") {
        const auto d = hole_log_prob_ginibre_detail(r, fin);
        o["terms"] = d.terms;
        o["tail_bound"] = d.tail_bound;
        o["limit"] = -0.25;
      } else {
        // a coefficient event inside the hole event: a lower bound on log P
        o["bound"] = "lower";
        o["limit"] = -kE * kE / 4.0;
      }
    } else if (run.command == "condintensity") {
      require(R > 0.0, "condintensity: R must be positive");
      const double hi = r_max > 0.0 ? r_max : 3.0 * R;
      require(hi > R, "condintensity: r-max must exceed R");
      Csv csv(run.file("profile.csv"), {"r", "value", "stderr"});
      for (double x : linspace(R, hi, grid)) csv.row({x, cond_intensity(x, R), 0.0});
      o["edge_intensity"] = cond_intensity(R, R);
      o["edge_constant"] = cond_intensity(R, R) * 2.0 * kPi / (R * R);
      o["annulus_count_R_2R"] = annulus_expected_count(R, 1.0, 2.0);
      o["annulus_count_2R_4R"] = annulus_expected_count(R, 2.0, 4.0);
    } else if (run.command == "measures") {
      const double al = alpha > 0.0 ? alpha : 1.0;
      const FunctionalParams fp{al, beta};
      fp.validate();
      const auto mu = p <= 1.0 ? constrained_minimizer_ginibre(p, al) : overcrowding_minimizer_ginibre(p, al);
      const auto eq = equilibrium_measure(al);
      const double i_mu = coulomb_functional(mu, fp), i_eq = coulomb_functional(eq, fp);
      o["minimizer"] = measure_json(mu);
      o["functional"] = i_mu;
      o["functional_equilibrium"] = i_eq;
      o["excess"] = i_mu - i_eq;
      if (beta == 2.0) o["excess_closed_form"] = excess_energy_closed_form(p, al);
      o["count_deviation_bracket"] = count_deviation_bracket(p);
      const double hi = std::max(2.0, 1.5 * mu.support_radius());
      Csv dens(run.file("density.csv"), {"r", "value", "stderr"});
      Csv pot(run.file("potential.csv"), {"r", "potential"});
      for (double x : linspace(0.0, hi, grid)) {
        dens.row({x, measure_density(mu, x), 0.0});
        pot.row({x, log_potential(mu, x)});
      }
    } else if (run.command == "mcmc") {
      require(N >= 2, "mcmc: N must be >= 2");
      require(hole_radius >= 0.0, "mcmc: hole radius must be >= 0");
      const Ensemble e = chain_ensemble == "weyl" ? Ensemble(WeylZeros{R, N}) : Ensemble(BetaGinibre{beta, N});
      const auto constraint = hole_radius > 0.0 ? ConstraintSpec::hole(HoleRegion::disk(0.0, hole_radius)) : ConstraintSpec::none();
      auto c = init_chain(e, constraint, rng);
      std::vector<PointConfiguration> kept;
      const auto s = run_chain(c, steps, burnin, thin, {[&](const PointConfiguration& x) { kept.push_back(x); }});
      const double extent = chain_ensemble == "weyl" ? 2.0 * R : 2.0 * std::sqrt(static_cast<double>(N) / beta * 2.0);
      const auto h = radial_profile(kept, bins, r_max > 0.0 ? r_max : std::max(extent, 1.5 * hole_radius));
      write_profile(run, "profile.csv", h);
      if (!kept.empty()) write_points(run, "points.csv", kept.back());
      o["samples"] = s.samples;
      o["acceptance_rate"] = s.acceptance_rate;
      o["sigma"] = s.sigma;
      o["max_drift"] = s.max_drift;
      o["proposed"] = s.counters.proposed;
      o["accepted"] = s.counters.accepted;
      o["constraint_rejected"] = s.counters.constraint_rejected;
      o["flagged"] = s.counters.flagged;
    } else if (run.command == "fekete") {
      std::optional<HoleRegion> hole;
      if (hole_kind == "disk") hole = HoleRegion::disk(0.0, radius);
      if (hole_kind == "polygon") {
        require(vertices.size() >= 6 && vertices.size() % 2 == 0, "fekete: polygon needs at least 3 x,y vertex pairs");
        std::vector<Point> v;
        for (std::size_t i = 0; i < vertices.size(); i += 2) v.emplace_back(vertices[i], vertices[i + 1]);
        hole = HoleRegion::polygon(v);
      }
      const double out_r = outer > 0.0 ? outer : kInf;
      const FeketeDomain e = hole ? FeketeDomain::outside(*hole, out_r) : FeketeDomain{std::nullopt, out_r};
      e.validate();
      FeketeOptions opt;
      opt.restarts = restarts;
      const auto f = optimize_fekete(n, e, rng, opt);
      write_points(run, "points.csv", f.config);
      o["objective"] = f.objective;
      o["delta"] = f.delta;
      o["log_delta"] = f.log_delta;
      o["stationarity"] = f.stationarity;
      o["converged_restarts"] = f.converged_restarts;
      o["flagged"] = f.flagged;
      if (leja_grid > 0) {
        const auto l = leja_points(n, e, leja_grid);
        write_points(run, "leja.csv", l);
        o["leja_objective"] = fekete_objective(l);
        o["leja_degraded"] = l.degraded;
      }
      if (!rate_ns.empty()) {
        const auto est = hole_rate_general(hole, rate_ns, rng, opt);
        o["rate"] = est.rate;
        o["limit_hole"] = est.limit_hole;
        o["limit_free"] = est.limit_free;
        o["calibration_offset"] = est.calibration_offset;
        o["rate_flagged"] = est.flagged;
        Csv csv(run.file("rate.csv"), {"n", "log_delta_hole", "log_delta_free"});
        for (std::size_t i = 0; i < est.n.size(); ++i)
          csv.row({static_cast<double>(est.n[i]), est.log_delta_hole[i], est.log_delta_free[i]});
      }
    } else if (run.command == "gefhole") {
      const auto spec = hole_event_constraints(R, p);
      std::vector<PointConfiguration> draws;
      std::size_t certified = 0;
      for (std::size_t i = 0; i < samples; ++i) {
        draws.push_back(sample_conditional_gef(spec, rng));
        certified += draws.back().certificate && draws.back().certificate->holds();
      }
      write_points(run, "points.csv", draws.front());
      write_profile(run, "profile.csv", radial_profile(draws, bins, 0.9 * std::sqrt(spec.q + 2.0) * R));
      o["log_p_event"] = event_log_prob(spec);
      o["log_p_over_r4"] = event_log_prob(spec) / std::pow(R, 4);
      o["k0"] = spec.k0;
      o["k_cut"] = spec.k_cut;
      o["n_trunc"] = spec.n_trunc();
      o["q"] = spec.q;
      o["certified"] = certified;
      o["samples"] = samples;
    } else if (run.command == "jlm") {
      JlmParams jp{a, b, beta, c_beta};
      const auto rate = jlm_rate(jp, R);
      o["exponent"] = rate.exponent;
      // log P ~ -prefactor R^exponent with prefactor = beta psi
      o["prefactor"] = rate.prefactor ? json(*rate.prefactor) : json(nullptr);
      o["psi"] = rate.prefactor ? json(*rate.prefactor / beta) : json(nullptr);
      const auto lp = rate.log_probability(R);
      o["log_p"] = lp ? json(*lp) : json(nullptr);
      Csv csv(run.file("exponent.csv"), {"a", "exponent"});
      for (int i = 11; i <= 60; ++i) csv.row({0.05 * i, jlm_exponent(0.05 * i)});
    } else if (run.command == "oned") {
      require(w >= 0.0, "oned: w must be >= 0");
      const double L = gap_edge(w);
      Csv csv(run.file("density.csv"), {"x", "value"});
      for (double x : linspace(-L, L, grid)) csv.row({x, gap_density(w, x)});
      o["edge"] = L;
      o["mass"] = gap_density_mass(w, -L, L);
    } else if (run.command == "verify") {
      json list = json::array();
      bool all = true;
      run_acceptance(criteria, run.seed, [&](const CriterionResult& c) {
        all = all && c.pass;
        std::cerr << "C" << c.id << (c.pass ? " PASS " : " FAIL ") << c.detail << "\n";
        list.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"seconds", c.seconds}, {"detail", c.detail}});
      });
      o["criteria"] = list;
      o["all_pass"] = all;
      std::ofstream(run.file("verify.json")) << list.dump(2) << "\n";
      status = all ? 0 : 1;
    }
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }

  json summary = {{"command", run.command},
                  {"seed", run.seed},
                  {"threads", run.threads},
                  {"parameters", parameters(sub)},
                  {"wall_time_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                  {"outputs", run.outputs},
                  {"files", run.files}};
  std::ofstream(fs::path(run.out) / "run.json") << summary.dump(2) << "\n";
  std::cout << summary.dump(2) << "\n";
  return status;
}
