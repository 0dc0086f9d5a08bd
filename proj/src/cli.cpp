#include "dlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dlab/arith.hpp"
#include "dlab/bands.hpp"
#include "dlab/dickman.hpp"
#include "dlab/errors.hpp"
#include "dlab/experiments.hpp"
#include "dlab/models.hpp"
#include "dlab/report.hpp"

namespace dlab::cli {

namespace {

struct Options {
  std::string subset = "all";
  std::string n;
  std::string primes;
  std::optional<unsigned> k;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> theta;
  double h = kDefaultDickmanStep;
  double xmax = kDefaultDickmanXMax;
  std::string format = "csv";
  std::string out;
  std::string exact = "auto";
  std::string variant = "thm1i";
  std::string cut = "n";
  int model = 1;
  bool check = false;
  std::optional<double> tol;
  bool list = false;
  bool companion = false;
  bool fixed_n = false;
  bool bx = false;
  bool show_value = false;
  bool points = false;
  std::size_t every = 1;
};

struct Outcome {
  Document doc;
  bool passed = true;
};

std::uint64_t parse_u64(std::string_view s, const std::string& flag) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw usage_error(fmt::format("{}: '{}' is not a non-negative integer", flag, s));
  return v;
}

std::uint64_t parse_n_value(std::string_view s, const std::string& flag) {
  if (const auto caret = s.find('^'); caret != std::string_view::npos) {
    const auto base = parse_u64(s.substr(0, caret), flag);
    const auto exp = parse_u64(s.substr(caret + 1), flag);
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
      if (base != 0 && v > UINT64_MAX / base)
        throw usage_error(fmt::format("{}: '{}' overflows", flag, s));
      v *= base;
    }
    return v;
  }
  if (s.find_first_of("eE") != std::string_view::npos) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !(v >= 0.0) || v > 9.0e15 ||
        v != std::floor(v))
      throw usage_error(fmt::format("{}: '{}' is not an integer", flag, s));
    return static_cast<std::uint64_t>(v);
  }
  return parse_u64(s, flag);
}

Exactness parse_exactness(const std::string& s) {
  if (s == "on") return Exactness::Exact;
  if (s == "off") return Exactness::Float;
  return Exactness::Auto;
}

std::string join(std::span<const std::uint64_t> v) {
  return fmt::format("{}", fmt::join(v, ","));
}

const std::string& require_n(const Options& o) {
  if (o.n.empty()) throw usage_error("--n is required");
  return o.n;
}

std::uint64_t single_n(const Options& o) {
  const auto list = parse_n_list(require_n(o), "--n");
  if (list.size() != 1) throw usage_error("--n takes a single value here");
  return list.front();
}

unsigned require_k(const Options& o, const std::string& why) {
  if (!o.k) throw usage_error(fmt::format("--k is required {}", why));
  if (*o.k < 2) throw usage_error(fmt::format("--k must be >= 2, got {}", *o.k));
  return *o.k;
}

SubsetSpec subset_of(const Options& o) {
  return parse_subset(o.subset, "--subset", o.theta.value_or(0.0));
}

ExponentLaw law_of(const Options& o) {
  if (o.model == 1) {
    if (o.k) throw usage_error("--k has no effect with --model 1");
    return ExponentLaw::geometric();
  }
  return ExponentLaw::for_model(o.model, require_k(o, "for --model 2 and 3"));
}

// ---------------------------------------------------------------------------

Outcome cmd_primes(const Options& o) {
  const auto n_list = parse_n_list(require_n(o), "--n");
  std::uint64_t max_n = 0;
  for (auto n : n_list) max_n = std::max(max_n, n);
  const auto spec = subset_of(o);
  const auto subset = subset_up_to(spec, max_n);

  Outcome res;
  auto& doc = res.doc;
  doc.command = "primes";
  doc.set("subset", describe(spec));
  doc.set("theta", subset.theta());
  if (o.list) {
    doc.columns = {"index", "prime"};
    const auto primes = subset.up_to(max_n);
    for (std::size_t i = 0; i < primes.size(); ++i)
      doc.rows.push_back({static_cast<std::uint64_t>(i + 1), primes[i]});
    return res;
  }
  doc.columns = {"N", "count", "all_primes", "density", "largest"};
  for (auto n : n_list) {
    const auto a = subset.up_to(n);
    const auto all = subset.table().count_up_to(n);
    Cell largest = a.empty() ? Cell{} : Cell{a.back()};
    Cell density = all == 0 ? Cell{} : Cell{empirical_density(subset, n)};
    doc.rows.push_back({n, static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(all),
                        density, largest});
  }
  return res;
}

Outcome cmd_dickman_table(const Options& o) {
  const auto sol = solve_rho(o.theta.value_or(1.0), o.xmax, o.h);
  return {dickman_table_document(sol, o.every), true};
}

Outcome cmd_dickman_constant(const Options& o) {
  const double theta = o.theta.value_or(1.0);
  const auto sol = solve_rho(theta, o.xmax, o.h);
  Outcome res;
  auto& doc = res.doc;
  doc.command = "dickman constant";
  const double mass = gd_cdf(sol, sol.x_max());
  const double cdf1 = gd_cdf(sol, 1.0);
  const double cdf1_closed = std::exp(-kEulerGamma * theta) / std::tgamma(theta + 1.0);
  const double mean = gd_mean(sol);
  doc.set("theta", theta);
  doc.set("h", sol.step());
  doc.set("x_max", sol.x_max());
  doc.set("mertens_constant", mertens_constant(theta));
  doc.set("norm_const", sol.norm_const());
  doc.set("total_mass", mass);
  doc.set("tail_estimate", gd_tail_estimate(sol));
  doc.set("cdf_at_1", cdf1);
  doc.set("cdf_at_1_closed_form", cdf1_closed);
  doc.set("mean", mean);
  if (o.check) {
    const double tol = o.tol.value_or(1e-3);
    res.passed = std::abs(mass - 1.0) <= 1e-4 && std::abs(cdf1 - cdf1_closed) <= 1e-6 &&
                 std::abs(mean - theta) <= tol;
    doc.set("mean_tolerance", tol);
    doc.set("passed", res.passed);
  }
  return res;
}

Outcome cmd_mertens_ratio(const Options& o) {
  const auto n_list = parse_n_list(require_n(o), "--n");
  RatioVariant variant;
  if (o.variant == "classic") {
    variant.kind = MertensVariant::ClassicMertens;
  } else if (o.variant == "thm1i") {
    variant.kind = MertensVariant::Thm1i;
  } else if (o.variant == "thm1ii") {
    variant = {MertensVariant::Thm1ii, require_k(o, "for --variant thm1ii")};
  } else {
    variant = {MertensVariant::Thm3, require_k(o, "for --variant thm3")};
  }
  if (o.k && variant.k == 0)
    throw usage_error(fmt::format("--k has no effect with --variant {}", o.variant));
  const auto spec = subset_of(o);
  if (variant.kind == MertensVariant::ClassicMertens && !std::holds_alternative<AllPrimes>(spec))
    throw usage_error("--variant classic needs --subset all");
  std::uint64_t max_n = 0;
  for (auto n : n_list) max_n = std::max(max_n, n);
  const auto subset = subset_up_to(spec, max_n);
  const auto cut = o.cut == "prime" ? DenominatorCut::AtLargestSubsetPrime : DenominatorCut::AtN;
  const auto rows = mertens_ratio_table(subset, variant, n_list, cut, parse_exactness(o.exact));

  Outcome res{convergence_document("mertens ratio", rows), true};
  auto& doc = res.doc;
  doc.set("variant", o.variant);
  if (variant.k) doc.set("k", static_cast<std::uint64_t>(variant.k));
  doc.set("subset", describe(spec));
  doc.set("theta", subset.theta());
  doc.set("cut", o.cut);
  if (o.check) {
    const double tol = o.tol.value_or(subset.theta() == 1.0 ? bands::kClassicMertensRel
                                                             : bands::kSubsetMertensRel);
    res.passed = rows.back().relative_gap() <= tol &&
                 (rows.size() < 2 || rows.back().gap < rows.front().gap);
    doc.set("tolerance", tol);
    doc.set("passed", res.passed);
  }
  return res;
}

Outcome cmd_identity(const Options& o, bool subset_given) {
  const unsigned k = require_k(o, "for identity");
  std::vector<std::uint64_t> primes;
  if (!o.primes.empty()) {
    if (subset_given || !o.n.empty())
      throw usage_error("--primes cannot be combined with --subset or --n");
    primes = parse_n_list(o.primes, "--primes");
    for (auto p : primes)
      if (!is_prime_trial(p)) throw usage_error(fmt::format("--primes: {} is not prime", p));
    for (std::size_t i = 1; i < primes.size(); ++i)
      if (primes[i] <= primes[i - 1])
        throw usage_error("--primes must be strictly increasing");
  } else {
    const auto count = single_n(o);
    const auto subset = subset_with_count(subset_of(o), count);
    const auto prefix = subset.prefix(count);
    primes.assign(prefix.begin(), prefix.end());
  }
  const auto result = identity_check(primes, k);

  Outcome res;
  auto& doc = res.doc;
  doc.command = "identity";
  doc.set("k", static_cast<std::uint64_t>(k));
  doc.set("primes", join(primes));
  doc.set("lhs", to_fraction_string(result.lhs));
  doc.set("rhs", to_fraction_string(result.rhs));
  doc.set("equal", result.equal);
  res.passed = result.equal;
  return res;
}

Outcome cmd_phi_fixed_n(const Options& o, const std::vector<std::uint64_t>& n_list) {
  const unsigned k = require_k(o, "for --fixed-n");
  const double tol = o.tol.value_or(bands::kFixedNRel);
  Outcome res;
  auto& doc = res.doc;
  doc.command = "phi-ratio";
  doc.set("mode", std::string("fixed-n"));
  doc.set("k", static_cast<std::uint64_t>(k));
  doc.columns = {"N",      "lhs",      "rhs",          "ratio",        "target",
                 "gap",    "assessed", "identity_lhs", "identity_rhs", "identity_equal"};
  for (auto n : n_list) {
    const auto c = corollary_fixed_n_check(n, k);
    const auto& r = c.asymptotic;
    std::vector<Cell> row{r.n, quantity_cell(r.lhs), quantity_cell(r.rhs), r.ratio, r.target, r.gap,
                          c.assessed};
    if (c.exact) {
      row.insert(row.end(), {to_fraction_string(c.exact->lhs), to_fraction_string(c.exact->rhs),
                             c.exact->equal});
      if (!c.exact->equal) res.passed = false;
    } else {
      row.insert(row.end(), {Cell{}, Cell{}, Cell{}});
    }
    if (o.check && c.assessed && r.relative_gap() > tol) res.passed = false;
    doc.rows.push_back(std::move(row));
  }
  if (o.check) doc.set("tolerance", tol);
  doc.set("passed", res.passed);
  return res;
}

Outcome cmd_phi_ratio(const Options& o) {
  const auto n_list = parse_n_list(require_n(o), "--n");
  if (o.fixed_n) {
    if (o.companion) throw usage_error("--companion cannot be combined with --fixed-n");
    return cmd_phi_fixed_n(o, n_list);
  }
  const auto mode = o.companion ? TotientMode::AllTotient : TotientMode::KFreeWeighted;
  unsigned k = 0;
  if (o.companion) {
    if (o.k) throw usage_error("--k has no effect with --companion");
  } else {
    k = require_k(o, "for the totient-weighted sum");
  }
  const auto spec = subset_of(o);
  std::vector<ConvergenceRow> rows;
  for (auto n : n_list)
    rows.push_back(totient_harmonic_ratio(n, k, mode, spec, parse_exactness(o.exact)));

  Outcome res{convergence_document("phi-ratio", rows), true};
  auto& doc = res.doc;
  doc.set("mode", std::string(o.companion ? "companion" : "k-free"));
  if (k) doc.set("k", static_cast<std::uint64_t>(k));
  doc.set("subset", describe(spec));
  if (o.check) {
    const double tol = o.tol.value_or(bands::kTotientRel);
    const auto largest = std::max_element(
        rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
    res.passed = largest->relative_gap() <= tol;
    doc.set("tolerance", tol);
    doc.set("passed", res.passed);
  }
  return res;
}

Outcome cmd_williams(const Options& o) {
  const auto spec = subset_of(o);
  std::uint64_t modulus = 1, residue = 0;
  if (const auto* r = std::get_if<ResidueClass>(&spec)) {
    modulus = r->modulus;
    residue = r->residue;
  } else if (!std::holds_alternative<AllPrimes>(spec)) {
    throw usage_error("--subset must be all or residue:L:J for williams");
  }
  const auto n_list = o.n.empty() ? williams_default_grid() : parse_n_list(o.n, "--n");
  const auto fit = williams_slope(modulus, residue, n_list);

  Outcome res;
  auto& doc = res.doc;
  doc.command = "williams";
  doc.set("modulus", fit.modulus);
  doc.set("residue", fit.residue);
  doc.set("slope", fit.slope);
  doc.set("intercept", fit.intercept);
  doc.set("target", fit.target);
  if (o.check) {
    const double tol = o.tol.value_or(bands::kWilliamsAbs);
    res.passed = std::abs(fit.slope - fit.target) <= tol;
    doc.set("tolerance", tol);
    doc.set("passed", res.passed);
  }
  if (o.points) {
    doc.columns = {"N", "log_log_N", "log_product"};
    for (const auto& p : fit.points) doc.rows.push_back({p.n, p.log_log_n, p.log_product});
  }
  return res;
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv(kSeedEnv)) return parse_u64(env, kSeedEnv);
  return kDefaultSeed;
}

Outcome cmd_sample(const Options& o) {
  const auto n = single_n(o);
  const auto law = law_of(o);
  if (o.show_value && o.bx) throw usage_error("--show-value cannot be combined with --bx");
  const auto spec = subset_of(o);
  const auto model = RandomIntegerModel::make(spec, n, law);
  const auto seed = resolve_seed(o);
  const std::size_t count = o.samples.value_or(10);
  if (count == 0) throw usage_error("--samples must be positive");
  const ModelSampler sampler(model, seed);

  Outcome res;
  auto& doc = res.doc;
  doc.command = "sample";
  doc.set("model_id", static_cast<std::int64_t>(model.model_id()));
  if (o.k) doc.set("k", static_cast<std::uint64_t>(*o.k));
  doc.set("subset", describe(spec));
  doc.set("theta", model.theta());
  doc.set("N", n);
  doc.set("seed", seed);
  doc.set("sample_count", static_cast<std::uint64_t>(count));
  doc.set("bx", o.bx);
  doc.set("expected_log", sampler.expected_log());
  doc.columns = {"draw_index", "log_value", "normalized_log"};
  if (o.show_value) doc.columns.push_back("value");
  for (std::size_t i = 0; i < count; ++i) {
    const double lv = o.bx ? sampler.draw_log_bx(i) : sampler.draw_log(i);
    std::vector<Cell> row{static_cast<std::uint64_t>(i), lv, lv / sampler.expected_log()};
    if (o.show_value) row.push_back(sampler.draw(i).value(model.primes()).get_str());
    doc.rows.push_back(std::move(row));
  }
  return res;
}

Outcome cmd_ks(const Options& o) {
  const auto n = single_n(o);
  const auto law = law_of(o);
  const auto spec = subset_of(o);
  const auto model = RandomIntegerModel::make(spec, n, law);
  const auto sol = solve_rho(o.theta.value_or(model.theta()), o.xmax, o.h);
  const auto report = ks_test(model, sol, o.samples.value_or(10'000), resolve_seed(o));

  Outcome res{ks_document(report), true};
  if (o.check) {
    const double band = model.model_id() == 1   ? bands::kKsModel1
                        : model.model_id() == 2 ? bands::kKsModel2
                                                : bands::kKsModel3;
    const double tol = o.tol.value_or(band);
    res.passed = report.ks_statistic < tol;
    res.doc.set("tolerance", tol);
    res.doc.set("passed", res.passed);
  }
  return res;
}

// ---------------------------------------------------------------------------

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "write to PATH instead of stdout");
}

void add_subset(CLI::App* sub, Options& o) {
  sub->add_option("--subset", o.subset, "all | residue:L:J | file:PATH");
  sub->add_option("--theta", o.theta, "declared density for file subsets");
}

void add_check(CLI::App* sub, Options& o) {
  sub->add_flag("--check", o.check, "exit 2 when the result is outside its band");
  sub->add_option("--tol", o.tol, "band override for --check");
}

void add_model(CLI::App* sub, Options& o) {
  sub->add_option("--model", o.model, "1, 2 or 3")->check(CLI::Range(1, 3));
  sub->add_option("--k", o.k, "k for models 2 and 3");
  sub->add_option("--n", o.n, "number of primes N");
  sub->add_option("--seed", o.seed, fmt::format("default {} or ${}", kDefaultSeed, kSeedEnv));
  sub->add_option("--samples", o.samples, "number of draws");
}

void add_grid(CLI::App* sub, Options& o) {
  sub->add_option("--h", o.h, "grid step, 1/h an integer");
  sub->add_option("--xmax", o.xmax, "table end");
}

}  // namespace

std::vector<std::uint64_t> parse_n_list(const std::string& text, const std::string& flag) {
  std::vector<std::uint64_t> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    auto token = rest.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token.empty()) throw usage_error(fmt::format("{}: empty entry in '{}'", flag, text));
    const auto v = parse_n_value(token, flag);
    if (v == 0) throw usage_error(fmt::format("{}: values must be positive", flag));
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

SubsetSpec parse_subset(const std::string& text, const std::string& flag, double theta) {
  if (text == "all") return AllPrimes{};
  if (text.rfind("residue:", 0) == 0) {
    const std::string_view body = std::string_view(text).substr(8);
    const auto colon = body.find(':');
    if (colon == std::string_view::npos)
      throw usage_error(fmt::format("{}: expected residue:L:J, got '{}'", flag, text));
    return ResidueClass{parse_u64(body.substr(0, colon), flag), parse_u64(body.substr(colon + 1), flag)};
  }
  if (text.rfind("file:", 0) == 0) {
    const std::string path = text.substr(5);
    if (!(theta > 0.0)) throw usage_error(fmt::format("--theta is required with {} file:PATH", flag));
    std::ifstream in(path);
    if (!in) throw usage_error(fmt::format("{}: cannot read '{}'", flag, path));
    std::vector<std::uint64_t> primes;
    std::string token;
    while (in >> token) {
      std::string_view t = token;
      while (!t.empty()) {
        const auto comma = t.find(',');
        const auto part = t.substr(0, comma);
        if (!part.empty()) primes.push_back(parse_u64(part, flag));
        if (comma == std::string_view::npos) break;
        t.remove_prefix(comma + 1);
      }
    }
    if (primes.empty()) throw usage_error(fmt::format("{}: '{}' lists no primes", flag, path));
    return ExplicitPrimes{std::move(primes), theta};
  }
  throw usage_error(fmt::format("{}: expected all, residue:L:J or file:PATH, got '{}'", flag, text));
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Generalized Mertens formulas and Dickman distributions", "dickman_lab"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  auto* primes = app.add_subcommand("primes", "count and list primes of a subset");
  add_subset(primes, o);
  primes->add_option("--n", o.n, "bounds N");
  primes->add_flag("--list", o.list, "list the subset primes up to max N");
  add_output(primes, o);

  auto* dickman = app.add_subcommand("dickman", "generalized Dickman function");
  dickman->require_subcommand(1);
  auto* table = dickman->add_subcommand("table", "tabulate rho, density and cdf");
  table->add_option("--theta", o.theta, "theta in (0, 1]");
  add_grid(table, o);
  table->add_option("--every", o.every, "emit every M-th grid point");
  add_output(table, o);
  auto* constant = dickman->add_subcommand("constant", "limit constant and GD summary");
  constant->add_option("--theta", o.theta, "theta in (0, 1]");
  add_grid(constant, o);
  add_check(constant, o);
  add_output(constant, o);

  auto* mertens = app.add_subcommand("mertens", "generalized Mertens ratios");
  mertens->require_subcommand(1);
  auto* ratio = mertens->add_subcommand("ratio", "finite-N ratio table");
  add_subset(ratio, o);
  ratio->add_option("--variant", o.variant, "classic | thm1i | thm1ii | thm3")
      ->check(CLI::IsMember({"classic", "thm1i", "thm1ii", "thm3"}));
  ratio->add_option("--k", o.k, "k for thm1ii and thm3");
  ratio->add_option("--n", o.n, "increasing bounds N");
  ratio->add_option("--cut", o.cut, "denominator cut: n or prime")
      ->check(CLI::IsMember({"n", "prime"}));
  ratio->add_option("--exact", o.exact, "auto | on | off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  add_check(ratio, o);
  add_output(ratio, o);

  auto* identity = app.add_subcommand("identity", "exact totient-weighted identity");
  identity->add_option("--primes", o.primes, "explicit prime list");
  identity->add_option("--subset", o.subset, "all | residue:L:J | file:PATH");
  identity->add_option("--theta", o.theta, "declared density for file subsets");
  identity->add_option("--n", o.n, "prefix length of the subset");
  identity->add_option("--k", o.k, "k >= 2");
  add_output(identity, o);

  auto* phi = app.add_subcommand("phi-ratio", "totient harmonic sums against log N");
  add_subset(phi, o);
  phi->add_option("--k", o.k, "k >= 2");
  phi->add_option("--n", o.n, "bounds N");
  phi->add_flag("--companion", o.companion, "sum 1/phi(n) over all n");
  phi->add_flag("--fixed-n", o.fixed_n, "fixed-N corollary: exact identity and Mertens legs");
  phi->add_option("--exact", o.exact, "auto | on | off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  add_check(phi, o);
  add_output(phi, o);

  auto* williams = app.add_subcommand("williams", "exponent of log N in residue-class products");
  williams->add_option("--subset", o.subset, "all | residue:L:J");
  williams->add_option("--n", o.n, "bounds N (default 10^2..10^6 in quarter decades)");
  williams->add_flag("--points", o.points, "emit the fitted points");
  add_check(williams, o);
  add_output(williams, o);

  auto* sample = app.add_subcommand("sample", "draw from a random-integer model");
  add_subset(sample, o);
  add_model(sample, o);
  sample->add_flag("--bx", o.bx, "draw log I as a sum of B_j X_j");
  sample->add_flag("--show-value", o.show_value, "render each integer");
  add_output(sample, o);

  auto* ks = app.add_subcommand("ks", "KS distance of normalized log I to (1/theta) D_theta");
  add_subset(ks, o);
  add_model(ks, o);
  add_grid(ks, o);
  add_check(ks, o);
  add_output(ks, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Outcome res;
    if (primes->parsed()) res = cmd_primes(o);
    else if (table->parsed()) res = cmd_dickman_table(o);
    else if (constant->parsed()) res = cmd_dickman_constant(o);
    else if (ratio->parsed()) res = cmd_mertens_ratio(o);
    else if (identity->parsed()) res = cmd_identity(o, identity->count("--subset") > 0);
    else if (phi->parsed()) res = cmd_phi_ratio(o);
    else if (williams->parsed()) res = cmd_williams(o);
    else if (sample->parsed()) res = cmd_sample(o);
    else res = cmd_ks(o);

    std::ostringstream buf;
    write_document(res.doc, o.format == "json" ? Format::Json : Format::Csv, buf);
    if (o.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
      f << buf.str();
      if (!f) throw usage_error(fmt::format("--out: cannot write '{}'", o.out));
    }
    if (!res.passed) {
      err << "check failed\n";
      return 2;
    }
    return 0;
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const resource_error& e) {
    err << "resource error: " << e.what() << '\n';
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << '\n';
  } catch (const std::out_of_range& e) {
    err << "range error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

}  // namespace dlab::cli
