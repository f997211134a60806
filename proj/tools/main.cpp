#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diqkd/attacks.hpp"
#include "diqkd/bias_envelope.hpp"
#include "diqkd/correlation.hpp"
#include "diqkd/errors.hpp"
#include "diqkd/keyrate.hpp"
#include "diqkd/report.hpp"
#include "svg.hpp"

using namespace diqkd;

namespace {

enum Exit { kOk = 0, kUsage = 2, kDomain = 3, kSearch = 4, kRefuted = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The only place where percentages become fractions: "0.5%" -> 0.005.
double parse_fraction(const std::string& text) {
  std::string s = text;
  double scale = 1.0;
  if (!s.empty() && s.back() == '%') {
    s.pop_back();
    scale = 0.01;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + text + "'");
  return v * scale;
}

double percent(double fraction) { return 100.0 * fraction; }

// start:stop:steps, both ends included.
std::vector<double> parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("range must be start:stop:steps, got '" + text + "'");
  const double a = parse_fraction(parts[0]);
  const double b = parse_fraction(parts[1]);
  const double n = parse_fraction(parts[2]);
  if (!(n >= 1.0) || n != std::floor(n)) throw UsageError("range steps must be a positive integer");
  const int steps = static_cast<int>(n);
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) out.push_back(steps == 1 ? a : a + (b - a) * i / (steps - 1));
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Output {
  std::string path;
  std::string svg;
  int threads = 1;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    f << text;
  }
  void write_svg(const std::vector<cli::Series>& s, const std::string& xl,
                 const std::string& yl) const {
    if (svg.empty()) return;
    std::ofstream f(svg);
    if (!f) throw UsageError("cannot open " + svg);
    f << cli::render_svg(s, xl, yl);
  }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("-o,--output", out.path, "Output file (default stdout)");
  cmd->add_option("--svg", out.svg, "Also render the sweep as an SVG chart");
  cmd->add_option("--threads", out.threads, "Worker cap; computations are serial, so 1 is used")
      ->check(CLI::PositiveNumber);
}

// ---------------------------------------------------------------- entropy

struct EntropyArgs {
  std::string bound = "chsh";
  std::string q = "0";
  std::string p = "0.5";
  double alpha = 1.0;
  double a1 = 0.0;
  std::optional<double> s;
  std::string s_range;
  Output out;
};

int run_entropy(const EntropyArgs& a) {
  const NoiseParam q(parse_fraction(a.q));
  const double p = parse_fraction(a.p);
  std::vector<double> grid;
  if (a.s) grid.push_back(*a.s);
  if (!a.s_range.empty()) {
    const auto r = parse_range(a.s_range);
    grid.insert(grid.end(), r.begin(), r.end());
  }
  if (grid.empty()) throw UsageError("entropy: give --s or --s-range");

  std::ostringstream csv;
  csv << "# diqkd entropy v1 bound=" << a.bound << "\n";
  cli::Series series{a.bound, {}, {}};
  if (a.bound == "bias") {
    csv << "a1,S,bound\n";
  } else if (a.bound == "two-basis") {
    csv << "S,bound,certified\n";
  } else {
    csv << "S,bound\n";
  }
  for (const double S : grid) {
    double v = 0.0;
    if (a.bound == "chsh") {
      v = qubit_bound_chsh(S);
    } else if (a.bound == "asym") {
      v = qubit_bound_asym(q, a.alpha, S);
    } else if (a.bound == "bias") {
      v = qubit_bound_bias(q, {S, a.a1});
      csv << fmt(a.a1) << ',';
    } else {
      const TwoBasisValue tb = qubit_bound_two_basis(q, p, S);
      csv << fmt(S) << ',' << fmt(tb.entropy) << ',' << (tb.certified ? 1 : 0) << '\n';
      series.x.push_back(S);
      series.y.push_back(tb.entropy);
      continue;
    }
    csv << fmt(S) << ',' << fmt(v) << '\n';
    series.x.push_back(S);
    series.y.push_back(v);
  }
  a.out.write(csv.str());
  a.out.write_svg({series}, "S", "H(A|E) bound [bits]");
  return kOk;
}

// ---------------------------------------------------------------- keyrate

struct RateArgs {
  std::string variant = "two-basis";
  std::string q = "0";
  std::string p_prime = "0.5";
  bool optimize_q = false;
  std::string delta_range = "0:0.1:101";
  std::string eta_range = "0.95:0.80:31";
  std::string delta = "0";
  std::string mode = "certified";
  int resolution = kDefaultCurveResolution;
  double epsilon = 1e-15;
  std::uint64_t leaf_budget = 10'000'000;
  std::uint64_t seed = 2021;
  Output out;
};

RateMode parse_mode(const std::string& m) {
  if (m == "certified") return RateMode::certified;
  if (m == "conjectured") return RateMode::conjectured;
  throw UsageError("mode must be certified or conjectured");
}

std::vector<double> q_grid() {
  std::vector<double> g;
  for (int i = 0; i < 50; ++i) g.push_back(0.01 * i);
  g.push_back(0.499999);
  return g;
}

CertifyOptions cert_options(double epsilon, std::uint64_t budget) {
  CertifyOptions c;
  c.epsilon = epsilon;
  c.limits.leaf_budget = budget;
  return c;
}

std::string rate_row(double param, const RateResult& r) {
  return fmt(param) + ',' + fmt(r.rate) + ',' + fmt(r.entropy_bound) + ',' + fmt(r.H_cond) + ',' +
         (r.certified ? "1" : "0") + ',' + fmt(r.achieved_epsilon) + '\n';
}

int run_keyrate(const RateArgs& a) {
  std::ostringstream csv;
  cli::Series series{a.variant, {}, {}};
  if (a.variant == "two-basis") {
    const double pp = parse_fraction(a.p_prime);
    const double p = sifted_basis_weight(pp);
    csv << "# diqkd keyrate v1 variant=two-basis parameter=delta_percent p_prime=" << fmt(pp)
        << (a.optimize_q ? " q=optimized" : " q=" + a.q) << "\n";
    csv << "parameter,rate,entropy_bound,H_cond,certified,epsilon\n";
    const auto deltas = parse_range(a.delta_range);
    if (a.optimize_q) {
      for (const double d : deltas) {
        const auto rate_at = [&](double qq) {
          return rate_two_basis(d, {Variant::two_basis, NoiseParam(qq), pp}, a.resolution).rate;
        };
        const QOptimum best = optimize_q(rate_at, q_grid());
        const RateResult r = rate_two_basis(d, {Variant::two_basis, NoiseParam(best.q), pp}, a.resolution);
        csv << rate_row(percent(d), r);
        series.x.push_back(percent(d));
        series.y.push_back(r.rate);
      }
    } else {
      const ProtocolConfig cfg{Variant::two_basis, NoiseParam(parse_fraction(a.q)), pp};
      const TwoBasisCurve curve = two_basis_curve(cfg.q, p, a.resolution);
      for (const double d : deltas) {
        const RateResult r = rate_two_basis(d, cfg, curve);
        csv << rate_row(percent(d), r);
        series.x.push_back(percent(d));
        series.y.push_back(r.rate);
      }
    }
    a.out.write(csv.str());
    a.out.write_svg({series}, "delta [%]", "key rate [bits]");
    return kOk;
  }
  if (a.variant != "bias") throw UsageError("variant must be two-basis or bias");
  const NoiseParam q(parse_fraction(a.q));
  const double delta = parse_fraction(a.delta);
  const RateMode mode = parse_mode(a.mode);
  csv << "# diqkd keyrate v1 variant=bias parameter=eta_percent q=" << fmt(q.value())
      << " delta=" << fmt(delta) << " mode=" << a.mode << "\n";
  csv << "parameter,rate,entropy_bound,H_cond,certified,epsilon\n";
  std::optional<Implementation> warm;
  for (const double eta : parse_range(a.eta_range)) {
    OptimizeOptions o;
    o.seed = a.seed;
    o.warm_start = warm;
    const OptimizedRate r =
        optimize_implementation(eta, delta, q, mode, o, cert_options(a.epsilon, a.leaf_budget));
    if (r.result.rate > 0.0) warm = r.impl;
    csv << rate_row(percent(eta), r.result);
    series.x.push_back(percent(eta));
    series.y.push_back(r.result.rate);
  }
  a.out.write(csv.str());
  a.out.write_svg({series}, "eta [%]", "key rate [bits]");
  return kOk;
}

// -------------------------------------------------------------- threshold

struct ThresholdArgs {
  std::string variant = "two-basis";
  std::string q = "0";
  std::optional<std::string> p;
  std::string p_prime = "0.5";
  std::string delta = "0";
  std::string mode = "certified";
  int resolution = 20000;
  std::optional<std::string> tol;
  std::string eta_lo = "0.75";
  std::string eta_hi = "0.97";
  double rate_floor = kRateFloor;
  double epsilon = 1e-15;
  std::uint64_t leaf_budget = 10'000'000;
  std::uint64_t seed = 2021;
  Output out;
};

int run_threshold(const ThresholdArgs& a) {
  const NoiseParam q(parse_fraction(a.q));
  ThresholdOptions topts;
  topts.rate_floor = a.rate_floor;
  Json j;
  j["variant"] = a.variant;
  j["q"] = q.value();
  if (a.variant == "two-basis") {
    double p = 0.0;
    double pp = parse_fraction(a.p_prime);
    if (a.p) {
      p = parse_fraction(*a.p);
      if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p outside [0, 1]");
      pp = std::sqrt(p) / (std::sqrt(p) + std::sqrt(1.0 - p));
    } else {
      p = sifted_basis_weight(pp);
    }
    topts.tol = a.tol ? parse_fraction(*a.tol) : 1e-7;
    const TwoBasisCurve curve = two_basis_curve(q, p, a.resolution);
    const ProtocolConfig cfg{Variant::two_basis, q, pp};
    const double d = threshold_search(
        [&](double delta) { return rate_two_basis(delta, cfg, curve).rate; }, 0.0, 0.25, topts);
    j["p"] = p;
    j["p_prime"] = pp;
    j["mode"] = curve.certified ? "certified" : "numeric";
    j["parameter"] = "delta";
    j["threshold_percent"] = percent(d);
    j["tol_percent"] = percent(topts.tol);
    j["rate_floor"] = topts.rate_floor;
    j["curve_resolution"] = a.resolution;
    j["curve_breakpoints"] = curve.curve.breakpoints().size();
  } else if (a.variant == "bias" && a.mode == "budgeted") {
    const double delta = parse_fraction(a.delta);
    topts.tol = a.tol ? parse_fraction(*a.tol) : 1e-6;
    OptimizeOptions o;
    o.seed = a.seed;
    CertifyLimits limits;
    limits.split = SplitRule::dominant;
    limits.max_depth = 100;
    limits.leaf_budget = a.leaf_budget;
    const BudgetedThreshold t = budgeted_certified_threshold(
        q, delta, parse_fraction(a.eta_lo), parse_fraction(a.eta_hi), limits, topts, o);
    const RateResult& r = t.at_threshold.result;
    j["delta"] = delta;
    j["mode"] = a.mode;
    j["parameter"] = "eta";
    j["threshold_percent"] = percent(t.eta);
    j["tol_percent"] = percent(topts.tol);
    j["rate_floor"] = 1.5 * t.epsilon;
    j["rate_at_threshold"] = to_json(r);
    j["covering"] = {{"epsilon", r.achieved_epsilon},
                     {"covering_size", r.covering_size},
                     {"covering_constant", t.covering_constant},
                     {"leaf_budget", a.leaf_budget}};
    j["implementation"] = to_json(t.at_threshold.impl);
    j["optimizations"] = t.rate_evaluations;
    a.out.write(j.dump(2) + "\n");
    return r.certified && r.rate > 0.0 ? kOk : kSearch;
  } else if (a.variant == "bias") {
    const RateMode mode = parse_mode(a.mode);
    const double delta = parse_fraction(a.delta);
    topts.tol = a.tol ? parse_fraction(*a.tol) : 1e-6;
    OptimizeOptions o;
    o.seed = a.seed;
    const BiasThreshold t = bias_threshold(q, delta, mode, parse_fraction(a.eta_lo),
                                           parse_fraction(a.eta_hi), topts, o,
                                           cert_options(a.epsilon, a.leaf_budget));
    j["delta"] = delta;
    j["mode"] = a.mode;
    j["parameter"] = "eta";
    j["threshold_percent"] = percent(t.eta);
    j["tol_percent"] = percent(topts.tol);
    j["rate_floor"] = topts.rate_floor;
    j["rate_at_threshold"] = to_json(t.at_threshold.result);
    j["covering"] = {{"epsilon", t.at_threshold.result.achieved_epsilon},
                     {"covering_size", t.at_threshold.result.covering_size},
                     {"leaf_budget", a.leaf_budget}};
    j["implementation"] = to_json(t.at_threshold.impl);
    j["optimizations"] = t.rate_evaluations;
  } else {
    throw UsageError("variant must be two-basis or bias");
  }
  a.out.write(j.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- certify

struct CertifyArgs {
  std::string q = "0";
  std::string tangent_at;
  std::optional<double> beta;
  std::string alpha = "0,0";
  std::optional<double> constant;
  double epsilon = 1e-8;
  std::uint64_t leaf_budget = 10'000'000;
  int max_depth = 40;
  std::string split = "quad";
  Output out;
};

std::pair<double, double> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("expected x,y, got '" + text + "'");
  return {parse_fraction(text.substr(0, comma)), parse_fraction(text.substr(comma + 1))};
}

int run_certify(const CertifyArgs& a) {
  CertifyLimits limits;
  limits.leaf_budget = a.leaf_budget;
  limits.max_depth = a.max_depth;
  if (a.split == "dominant") {
    limits.split = SplitRule::dominant;
  } else if (a.split != "quad") {
    throw UsageError("split must be quad or dominant");
  }
  Json j;
  AffineBound result;
  if (a.constant) {
    const double c = *a.constant;
    AffineBound cand;
    cand.beta = c;
    cand.epsilon = a.epsilon;
    result = certify_affine([c](double, double) { return std::optional<double>(c); },
                            bias_domain(), cand, limits);
    j["bound"] = "constant";
  } else {
    const NoiseParam q(parse_fraction(a.q));
    AffineBound cand;
    if (!a.tangent_at.empty()) {
      const auto [a1, S] = parse_pair(a.tangent_at);
      const EnvelopeValue env = conjectured_envelope_bias(q, {S, a1});
      cand = env.tangent;
      j["point"] = {{"a1", a1}, {"S", S}};
      j["conjectured_envelope"] = env.value;
      j["partner"] = {{"a1", env.partner.a1}, {"S", env.partner.S}, {"t", env.t}};
    } else if (a.beta) {
      const auto [a0, a1] = parse_pair(a.alpha);
      cand.beta = *a.beta;
      cand.alpha = {a0, a1};
    } else {
      throw UsageError("certify: give --tangent-at, --beta or --constant");
    }
    cand.epsilon = a.epsilon;
    result = certify_bias_plane(q, cand, limits);
    j["bound"] = "bias";
    j["q"] = q.value();
  }
  j["report"] = to_json(result);
  a.out.write(j.dump(2) + "\n");
  if (result.status == CertStatus::refuted) return kRefuted;
  if (result.status == CertStatus::limit_exceeded) return kSearch;
  return kOk;
}

// --------------------------------------------------------- attack-compare

struct AttackArgs {
  std::string q = "0";
  bool optimize_q = false;
  std::string delta_range = "0:0.1:100";
  int resolution = kDefaultCurveResolution;
  Output out;
};

int run_attack_compare(const AttackArgs& a) {
  std::ostringstream csv;
  csv << "# diqkd attack-compare v1 variant=two-basis p_prime=0.5"
      << (a.optimize_q ? " q=optimized" : " q=" + a.q) << "\n";
  csv << "delta_percent,attack_rate,certified_rate\n";
  cli::Series upper{"attack", {}, {}};
  cli::Series lower{"certified", {}, {}};
  const auto deltas = parse_range(a.delta_range);
  std::optional<TwoBasisCurve> fixed;
  if (!a.optimize_q) fixed = two_basis_curve(NoiseParam(parse_fraction(a.q)), 0.5, a.resolution);
  for (const double d : deltas) {
    double up = 0.0;
    double lo = 0.0;
    if (a.optimize_q) {
      up = optimize_q(
               [&](double qq) {
                 return conjectured_rate_upper_bound(d, {Variant::two_basis, NoiseParam(qq), 0.5});
               },
               q_grid())
               .rate;
      lo = optimize_q(
               [&](double qq) {
                 return rate_two_basis(d, {Variant::two_basis, NoiseParam(qq), 0.5}, a.resolution).rate;
               },
               q_grid())
               .rate;
    } else {
      const ProtocolConfig cfg{Variant::two_basis, NoiseParam(parse_fraction(a.q)), 0.5};
      up = conjectured_rate_upper_bound(d, cfg);
      lo = rate_two_basis(d, cfg, *fixed).rate;
    }
    csv << fmt(percent(d)) << ',' << fmt(up) << ',' << fmt(lo) << '\n';
    upper.x.push_back(percent(d));
    upper.y.push_back(up);
    lower.x.push_back(percent(d));
    lower.y.push_back(lo);
  }
  a.out.write(csv.str());
  a.out.write_svg({upper, lower}, "delta [%]", "key rate [bits]");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Device-independent QKD entropy bounds, key rates and thresholds.\n"
      "Probabilities are fractions (0.005) or percentages with a suffix (0.5%).\n"
      "CSV output starts with a '# diqkd <command> v1 ...' schema line, then a header row.\n"
      "Exit codes: 0 ok, 2 usage, 3 domain error, 4 search failure or limit exceeded,\n"
      "5 certification refuted."};
  app.require_subcommand(1);

  EntropyArgs ea;
  auto* entropy = app.add_subcommand("entropy", "Qubit entropy bounds as functions of S (CSV)");
  entropy->add_option("--bound", ea.bound, "chsh | asym | bias | two-basis")
      ->check(CLI::IsMember({"chsh", "asym", "bias", "two-basis"}));
  entropy->add_option("--q", ea.q, "Noisy preprocessing flip probability");
  entropy->add_option("--p", ea.p, "Basis weight p of the two-basis bound");
  entropy->add_option("--alpha", ea.alpha, "Weight of the asymmetric CHSH bound");
  entropy->add_option("--a1", ea.a1, "<A1> for the bias bound");
  entropy->add_option("--s", ea.s, "Single S value");
  entropy->add_option("--s-range", ea.s_range, "start:stop:steps");
  add_output_flags(entropy, ea.out);

  RateArgs ra;
  auto* keyrate = app.add_subcommand("keyrate", "Key-rate sweeps (CSV: parameter,rate,entropy_bound,H_cond,certified,epsilon)");
  keyrate->add_option("--variant", ra.variant, "two-basis | bias");
  keyrate->add_option("--q", ra.q, "Noisy preprocessing flip probability");
  keyrate->add_flag("--optimize-q", ra.optimize_q, "Optimize q at every point (two-basis)");
  keyrate->add_option("--p-prime", ra.p_prime, "Alice's basis-1 probability (two-basis)");
  keyrate->add_option("--delta-range", ra.delta_range, "start:stop:steps of the error rate (two-basis)");
  keyrate->add_option("--eta-range", ra.eta_range, "start:stop:steps of the detection efficiency (bias)");
  keyrate->add_option("--delta", ra.delta, "Channel error rate (bias)");
  keyrate->add_option("--mode", ra.mode, "certified | conjectured (bias)");
  keyrate->add_option("--resolution", ra.resolution, "Curve subdivisions (two-basis)")->check(CLI::PositiveNumber);
  keyrate->add_option("--epsilon", ra.epsilon, "Target certification precision");
  keyrate->add_option("--leaf-budget", ra.leaf_budget, "Certification leaf budget");
  keyrate->add_option("--seed", ra.seed, "Seed of the multistart optimizer");
  add_output_flags(keyrate, ra.out);

  ThresholdArgs ta;
  auto* threshold = app.add_subcommand("threshold", "Threshold search (JSON)");
  threshold->add_option("--variant", ta.variant, "two-basis | bias");
  threshold->add_option("--q", ta.q, "Noisy preprocessing flip probability");
  threshold->add_option("--p", ta.p, "Sifted basis weight p (two-basis)");
  threshold->add_option("--p-prime", ta.p_prime, "Alice's basis-1 probability (two-basis)");
  threshold->add_option("--delta", ta.delta, "Channel error rate (bias)");
  threshold->add_option("--mode", ta.mode,
                        "certified | conjectured | budgeted (bias; budgeted fits the "
                        "precision to --leaf-budget and certifies once)");
  threshold->add_option("--resolution", ta.resolution, "Curve subdivisions (two-basis)")->check(CLI::PositiveNumber);
  threshold->add_option("--tol", ta.tol, "Absolute tolerance on the threshold");
  threshold->add_option("--eta-lo", ta.eta_lo, "Lower end of the efficiency bracket (bias)");
  threshold->add_option("--eta-hi", ta.eta_hi, "Upper end of the efficiency bracket (bias)");
  threshold->add_option("--rate-floor", ta.rate_floor, "Rates at or below this count as zero");
  threshold->add_option("--epsilon", ta.epsilon, "Target certification precision");
  threshold->add_option("--leaf-budget", ta.leaf_budget, "Certification leaf budget");
  threshold->add_option("--seed", ta.seed, "Seed of the multistart optimizer");
  add_output_flags(threshold, ta.out);

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Certify an affine bound on the bias bound (JSON)");
  certify->add_option("--q", ca.q, "Noisy preprocessing flip probability");
  certify->add_option("--tangent-at", ca.tangent_at, "a1,S: use the conjectured tangent there");
  certify->add_option("--beta", ca.beta, "Explicit plane offset");
  certify->add_option("--alpha", ca.alpha, "Explicit plane slopes a,S");
  certify->add_option("--constant", ca.constant, "Self test: constant bound and plane");
  certify->add_option("--epsilon", ca.epsilon, "Precision");
  certify->add_option("--leaf-budget", ca.leaf_budget, "Leaf budget");
  certify->add_option("--max-depth", ca.max_depth, "Maximum subdivision depth");
  certify->add_option("--split", ca.split, "quad | dominant");
  add_output_flags(certify, ca.out);

  AttackArgs aa;
  auto* attack = app.add_subcommand("attack-compare", "Two-basis attack rate against the certified rate (CSV)");
  attack->add_option("--q", aa.q, "Noisy preprocessing flip probability");
  attack->add_flag("--optimize-q", aa.optimize_q, "Optimize q separately for both curves");
  attack->add_option("--delta-range", aa.delta_range, "start:stop:steps");
  attack->add_option("--resolution", aa.resolution, "Curve subdivisions")->check(CLI::PositiveNumber);
  add_output_flags(attack, aa.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (app.got_subcommand(entropy)) return run_entropy(ea);
    if (app.got_subcommand(keyrate)) return run_keyrate(ra);
    if (app.got_subcommand(threshold)) return run_threshold(ta);
    if (app.got_subcommand(certify)) return run_certify(ca);
    if (app.got_subcommand(attack)) return run_attack_compare(aa);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const SearchError& e) {
    std::cerr << "search failure: " << e.what() << "\n";
    return kSearch;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kSearch;
  }
  return kUsage;
}
