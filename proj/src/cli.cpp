#include "entropic/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "entropic/explorer.hpp"
#include "entropic/laws.hpp"

namespace entropic::cli {

namespace {

using OJson = nlohmann::ordered_json;
using explorer::Report;

struct Config {
  double tol = kDefaultTolerance;
  std::string base = "bits";
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format;

  bool nats() const { return base == "nats"; }
  double scale() const { return nats() ? kLn2 : 1.0; }
  std::string format_or(const char* fallback) const { return format.empty() ? fallback : format; }
};

// A finished report body plus the exit status it implies.
struct Outcome {
  std::string body;
  int status = kExitOk;
};

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0 ? 0.0 : v);
  return buf;
}

std::string plain(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string render(const Report& r, const Config& cfg, const std::string& format) {
  const std::string unit = cfg.base;
  if (format == "json") {
    OJson values = OJson::object();
    for (const auto& e : r.entries) {
      switch (e.kind) {
        case Report::Entry::Kind::Bits: values[e.key] = e.value * cfg.scale(); break;
        case Report::Entry::Kind::Number:
          if (std::floor(e.value) == e.value && std::abs(e.value) < 9e15) {
            values[e.key] = static_cast<std::int64_t>(e.value);
          } else {
            values[e.key] = e.value;
          }
          break;
        case Report::Entry::Kind::Flag: values[e.key] = e.flag; break;
        case Report::Entry::Kind::Text: values[e.key] = e.text; break;
      }
    }
    OJson doc = {{"report", r.title}, {"base", unit}, {"values", values}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == "csv") out << "key,value,unit\n";
  for (const auto& e : r.entries) {
    std::string value;
    std::string u;
    switch (e.kind) {
      case Report::Entry::Kind::Bits:
        value = fixed6(e.value * cfg.scale());
        u = unit;
        break;
      case Report::Entry::Kind::Number: value = plain(e.value); break;
      case Report::Entry::Kind::Flag: value = e.flag ? "true" : "false"; break;
      case Report::Entry::Kind::Text: value = e.text; break;
    }
    if (format == "csv") {
      out << '"' << e.key << "\"," << '"' << value << "\"," << u << '\n';
    } else {
      out << e.key << " = " << value << (u.empty() ? "" : " " + u) << '\n';
    }
  }
  return out.str();
}

void require_format(const std::string& format) {
  if (format != "json" && format != "csv" && format != "text") {
    throw Error(ErrorCode::InvalidConfig, "unknown format '" + format + "'");
  }
}

std::string resolve(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  const fs::path bundled = fs::path(ENTROPIC_DATA_DIR) / path;
  if (fs::exists(bundled)) return bundled.string();
  return path;
}

Joint load(const std::string& path) { return read_distribution_file(resolve(path)); }

Dist load_dist(const std::string& path) {
  const Joint j = load(path);
  if (j.arity() != 1) {
    throw Error(ErrorCode::ArityMismatch, path + ": expected a single variable, got arity " + std::to_string(j.arity()));
  }
  return j.as_dist();
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_entropy(const Config& cfg, const std::string& file) {
  const Joint j = load(file);
  Report r;
  r.title = "entropy";
  r.bits("H", entropy(j));
  return {render(r, cfg, cfg.format_or("text"))};
}

Joint pair_from(const std::vector<std::string>& files, const std::string& joint_file) {
  if (!joint_file.empty()) {
    if (!files.empty()) throw Error(ErrorCode::InvalidConfig, "give either two files or --joint, not both");
    Joint j = load(joint_file);
    if (j.arity() != 2) {
      throw Error(ErrorCode::ArityMismatch, joint_file + ": expected arity 2, got " + std::to_string(j.arity()));
    }
    return j;
  }
  if (files.size() != 2) throw Error(ErrorCode::InvalidConfig, "expected two distribution files or --joint");
  return independent_join(Joint(load_dist(files[0])), Joint(load_dist(files[1])));
}

Outcome cmd_energy(const Config& cfg, const std::string& kind, const std::vector<std::string>& files,
                   const std::string& joint_file) {
  Report r;
  r.title = "energy " + kind;
  auto add_energy = [&](const std::string& name, const EnergyReport& e) {
    r.bits(name, e.value).bits("via_formula", e.via_formula).bits("via_construction", e.via_construction);
    r.text("inputs_digest", e.inputs_digest);
  };
  if (kind == "add" || kind == "mul") {
    const Joint j = pair_from(files, joint_file);
    add_energy(kind == "add" ? "A{X,Y}" : "M{X,Y}", kind == "add" ? additive_energy(j, cfg.tol) : mult_energy(j, cfg.tol));
  } else {
    if (files.size() != 1 || !joint_file.empty()) {
      throw Error(ErrorCode::InvalidConfig, "energy " + kind + " takes exactly one distribution file");
    }
    const Dist d = load_dist(files[0]);
    r.bits("H{X}", entropy(d));
    if (kind == "self") {
      add_energy("A{X}", self_energy(d, cfg.tol));
      r.bits("s{X}", doubling(d));
      if (d.carrier().is_ring() || d.carrier().has_product()) r.bits("M{X}", mult_self_energy(d, cfg.tol).value);
    } else {
      r.bits("H{X+X'}", entropy(combine_independent(d, d, words::sum01()))).bits("s{X}", doubling(d));
    }
  }
  return {render(r, cfg, cfg.format_or("text"))};
}

std::vector<laws::LawId> parse_suite(const std::string& suite) {
  std::vector<laws::LawId> ids;
  if (suite == "all") return ids;
  std::stringstream ss(suite);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto id = laws::law_from_name(item);
    if (!id) throw Error(ErrorCode::InvalidConfig, "unknown law '" + item + "'");
    ids.push_back(*id);
  }
  if (ids.empty()) throw Error(ErrorCode::InvalidConfig, "empty --suite");
  return ids;
}

Outcome cmd_verify(const Config& cfg, const std::string& suite, std::size_t trials, bool battery_only) {
  laws::SuiteConfig sc;
  sc.seed = cfg.seed;
  sc.trials = trials;
  sc.tol = cfg.tol;
  sc.laws = parse_suite(suite);
  sc.random_trials = !battery_only;
  const laws::SuiteReport rep = laws::run_suite(sc);
  const std::string format = cfg.format_or("json");
  std::ostringstream out;
  if (format == "json") {
    out << rep.to_json().dump(2) << '\n';
  } else {
    const double s = cfg.scale();
    if (format == "csv") out << "id,theorem,trials,failures,minSlack\n";
    for (const auto& l : rep.laws) {
      const bool theorem = laws::info(l.id).theorem;
      if (format == "csv") {
        out << laws::name(l.id) << ',' << (theorem ? "true" : "false") << ',' << l.trials << ',' << l.failures << ','
            << fixed6(l.min_slack * s) << '\n';
      } else {
        out << laws::name(l.id) << (theorem ? "" : " (probe)") << ": trials = " << l.trials
            << ", failures = " << l.failures << ", min slack = " << fixed6(l.min_slack * s) << ' ' << cfg.base
            << '\n';
      }
    }
  }
  return {out.str(), rep.theorem_failures() == 0 ? kExitOk : kExitFailure};
}

// Appends a pass/fail flag for a reproduced value and tracks the outcome.
struct Checks {
  Report& report;
  bool ok = true;

  void near(const std::string& what, double got, double want, double tol) {
    const bool pass = std::abs(got - want) <= tol;
    report.flag("check " + what + " = " + plain(want) + " +/- " + plain(tol), pass);
    ok = ok && pass;
  }
  void is(const std::string& what, bool got, bool want) {
    report.flag(std::string("check ") + what + " is " + (want ? "true" : "false"), got == want);
    ok = ok && got == want;
  }
};

Outcome cmd_reproduce(const Config& cfg, const std::string& target, long q) {
  Report r;
  bool ok = true;
  if (target == "hegarty") {
    const auto h = explorer::reproduce_hegarty(cfg.tol);
    r = h.to_report();
    Checks c{r};
    c.near("H{X}", h.h_x, 3, cfg.tol);
    c.near("H{Y}", h.h_y, 3, cfg.tol);
    c.near("H{X+Y}", h.h_sum, 4.507, 0.001);
    c.near("H{X+X'}", h.h_double, 4.513, 0.001);
    c.near("A{X,Y}", h.a_xy, 7.493, 0.001);
    c.near("A{X}", h.a_x, 7.487, 0.001);
    c.is("A{X,Y} > A{X}/2 + A{Y}/2", h.violation, true);
    ok = c.ok;
  } else if (target == "sidon012") {
    const auto s = explorer::reproduce_sidon012(cfg.tol);
    r = s.to_report();
    r.number("s{X} in nats", bits_to_nats(s.doubling));
    Checks c{r};
    c.near("s{X} in nats", bits_to_nats(s.doubling), 0.4244, 0.0005);
    c.is("sidon random variable", s.sidon_rv, true);
    c.is("sidon set", s.sidon_set, false);
    ok = c.ok;
  } else if (target == "subfield") {
    const auto s = explorer::subfield_example(q, cfg.tol);
    r = s.to_report();
    Checks c{r};
    c.near("H{X+X'} - closed form", s.h_double - s.h_double_closed_form, 0, cfg.tol);
    c.near("M{X} - 3H{X}", s.m_x - 3 * s.h_x, 0, cfg.tol);
    ok = c.ok;
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown reproduce target '" + target + "'");
  }
  return {render(r, cfg, cfg.format_or("text")), ok ? kExitOk : kExitFailure};
}

std::vector<explorer::ScanRecord> scaled(std::vector<explorer::ScanRecord> records, const Config& cfg) {
  for (auto& rec : records) {
    rec.h *= cfg.scale();
    rec.a *= cfg.scale();
    rec.m *= cfg.scale();
  }
  return records;
}

std::string records_body(const Report& summary, const std::vector<explorer::ScanRecord>& records, const Config& cfg,
                         const std::string& format) {
  const auto shown = scaled(records, cfg);
  if (format == "csv") return explorer::records_to_csv(shown);
  if (format == "json") {
    OJson doc = OJson::parse(render(summary, cfg, "json"));
    OJson rs = OJson::array();
    for (const auto& rec : shown) rs.push_back(OJson::parse(rec.to_json().dump()));
    doc["records"] = rs;
    return doc.dump(2) + "\n";
  }
  return render(summary, cfg, "text") + explorer::records_to_csv(shown);
}

struct ScanParams {
  long p = 11;
  std::size_t max_support = 5;
  std::string mode = "exhaustive";
  std::size_t trials = 200;
  double delta = 0.1;
  std::size_t k = 1;
  std::string dist_file;
  std::vector<long> uniform;
  long lo = -7;
  long hi = 7;
  std::size_t size = 8;
  std::string family = "arith";
  std::size_t max_size = 8;
};

Outcome cmd_scan(const Config& cfg, const std::string& target, const ScanParams& sp) {
  const std::string format = cfg.format_or("csv");
  if (target == "sumproduct") {
    explorer::SumproductConfig c;
    c.p = sp.p;
    c.max_support = sp.max_support;
    if (sp.mode != "exhaustive" && sp.mode != "random") {
      throw Error(ErrorCode::InvalidConfig, "unknown mode '" + sp.mode + "'");
    }
    c.mode = sp.mode == "random" ? explorer::SumproductConfig::Mode::Random : explorer::SumproductConfig::Mode::Exhaustive;
    c.seed = cfg.seed;
    c.trials = sp.trials;
    c.delta = sp.delta;
    c.tol = cfg.tol;
    const auto res = explorer::sumproduct_scan(c);
    return {records_body(res.summary(), res.records, cfg, format)};
  }
  if (target == "gk") {
    Dist d = Dist::point_mass(RingSpec::fp(sp.p), Element::scalar(0));
    if (!sp.dist_file.empty()) {
      d = load_dist(sp.dist_file);
    } else if (!sp.uniform.empty()) {
      if (!is_prime(BigInt(sp.p))) throw Error(ErrorCode::InvalidPrime, std::to_string(sp.p) + " is not prime");
      std::vector<Element> support;
      for (long v : sp.uniform) support.push_back(Element::scalar(v));
      d = uniform_on(RingSpec::fp(sp.p), support);
    } else {
      throw Error(ErrorCode::InvalidConfig, "gk needs --dist FILE or --uniform LIST");
    }
    return {render(explorer::gk_scan(sp.p, sp.k, d).to_report(), cfg, format)};
  }
  if (target == "cs") {
    const auto res = explorer::cs_search(sp.lo, sp.hi, sp.size, explorer::default_budget(), cfg.tol);
    if (format == "csv") {
      std::ostringstream out;
      out.precision(12);
      out << "set,margin,H{X+X'},H{X-X'}\n";
      for (const auto& f : res.violations) {
        out << '"';
        for (std::size_t i = 0; i < f.set.size(); ++i) out << (i ? " " : "") << f.set[i];
        out << "\"," << f.margin * cfg.scale() << ',' << f.h_sum * cfg.scale() << ',' << f.h_diff * cfg.scale()
            << '\n';
      }
      return {out.str()};
    }
    if (format == "json") {
      OJson doc = OJson::parse(render(res.summary(), cfg, "json"));
      OJson vs = OJson::array();
      for (const auto& f : res.violations) {
        vs.push_back({{"set", f.set},
                      {"margin", f.margin * cfg.scale()},
                      {"H{X+X'}", f.h_sum * cfg.scale()},
                      {"H{X-X'}", f.h_diff * cfg.scale()}});
      }
      doc["violations"] = vs;
      return {doc.dump(2) + "\n"};
    }
    std::string body = render(res.summary(), cfg, "text");
    for (const auto& f : res.violations) {
      std::string set;
      for (std::size_t i = 0; i < f.set.size(); ++i) set += (i ? " " : "") + std::to_string(f.set[i]);
      body += "{" + set + "} margin = " + fixed6(f.margin * cfg.scale()) + " " + cfg.base + "\n";
    }
    return {body};
  }
  if (target == "real") {
    const auto family = explorer::real_line_family(sp.family, sp.max_size, cfg.seed, sp.trials);
    const auto res = explorer::real_line_probe(family);
    if (format == "csv") {
      // The standard record columns plus the running maximum of the ratio.
      std::istringstream base(explorer::records_to_csv(scaled(res.records, cfg)));
      std::ostringstream out;
      out.precision(12);
      std::string line;
      std::getline(base, line);
      out << "# " << res.note << '\n' << line << ",running_max\n";
      for (std::size_t i = 0; std::getline(base, line); ++i) {
        out << line << ',';
        if (res.running_max[i]) out << *res.running_max[i];
        out << '\n';
      }
      return {out.str()};
    }
    return {records_body(res.summary(), res.records, cfg, format)};
  }
  throw Error(ErrorCode::InvalidConfig, "unknown scan target '" + target + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropic additive and multiplicative energy toolkit", "entropic-energy"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--tol", cfg.tol, "Tolerance in bits")->check(CLI::PositiveNumber);
  app.add_option("--base", cfg.base, "Logarithm base for printed values")->check(CLI::IsMember({"bits", "nats"}));
  app.add_option("--seed", cfg.seed, "Seed for randomized runs");
  app.add_option("--out", cfg.out_path, "Write the report to this file");
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));

  std::string file;
  auto* entropy_cmd = app.add_subcommand("entropy", "Entropy of a distribution file");
  entropy_cmd->add_option("file", file, "Distribution JSON")->required();

  std::string kind;
  std::vector<std::string> files;
  std::string joint_file;
  auto* energy_cmd = app.add_subcommand("energy", "Entropic energies and doubling");
  energy_cmd->add_option("kind", kind, "add | mul | self | doubling")
      ->required()
      ->check(CLI::IsMember({"add", "mul", "self", "doubling"}));
  energy_cmd->add_option("files", files, "Distribution files");
  energy_cmd->add_option("--joint", joint_file, "Joint distribution of (X, Y)");

  std::string suite = "all";
  std::size_t trials = 100;
  bool battery_only = false;
  auto* verify_cmd = app.add_subcommand("verify", "Randomized law suite");
  verify_cmd->add_option("--suite", suite, "all or a comma-separated list of law ids");
  verify_cmd->add_option("--trials", trials, "Random trials per law");
  verify_cmd->add_flag("--battery-only", battery_only, "Only the fixed battery of named instances");

  std::string target;
  long q = 5;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Reproduce a worked example");
  reproduce_cmd->add_option("target", target, "hegarty | sidon012 | subfield")
      ->required()
      ->check(CLI::IsMember({"hegarty", "sidon012", "subfield"}));
  reproduce_cmd->add_option("--q", q, "Field size for subfield");

  ScanParams sp;
  std::string scan_target;
  auto* scan_cmd = app.add_subcommand("scan", "Exploratory scans (never assert)");
  scan_cmd->add_option("target", scan_target, "sumproduct | gk | cs | real")
      ->required()
      ->check(CLI::IsMember({"sumproduct", "gk", "cs", "real"}));
  scan_cmd->add_option("--p", sp.p, "Prime");
  scan_cmd->add_option("--max-support", sp.max_support, "Largest support size");
  scan_cmd->add_option("--mode", sp.mode, "exhaustive | random");
  scan_cmd->add_option("--trials", sp.trials, "Random trials");
  scan_cmd->add_option("--delta", sp.delta, "Entropy window parameter");
  scan_cmd->add_option("--k", sp.k, "Number of product terms");
  scan_cmd->add_option("--dist", sp.dist_file, "Distribution file over F_p");
  scan_cmd->add_option("--uniform", sp.uniform, "Uniform support over F_p")->delimiter(',');
  scan_cmd->add_option("--lo", sp.lo, "Window start");
  scan_cmd->add_option("--hi", sp.hi, "Window end");
  scan_cmd->add_option("--size", sp.size, "Set size");
  scan_cmd->add_option("--family", sp.family, "arith | geom | random");
  scan_cmd->add_option("--max-size", sp.max_size, "Largest family member");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  Outcome outcome;
  try {
    if (!cfg.format.empty()) require_format(cfg.format);
    if (*entropy_cmd) {
      outcome = cmd_entropy(cfg, file);
    } else if (*energy_cmd) {
      outcome = cmd_energy(cfg, kind, files, joint_file);
    } else if (*verify_cmd) {
      outcome = cmd_verify(cfg, suite, trials, battery_only);
    } else if (*reproduce_cmd) {
      outcome = cmd_reproduce(cfg, target, q);
    } else {
      outcome = cmd_scan(cfg, scan_target, sp);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (cfg.out_path.empty()) {
    out << outcome.body;
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f || !(f << outcome.body)) {
      err << "error: cannot write '" << cfg.out_path << "'\n";
      return kExitUsage;
    }
  }
  if (outcome.status == kExitFailure) err << "one or more checks failed\n";
  return outcome.status;
}

}  // namespace entropic::cli
