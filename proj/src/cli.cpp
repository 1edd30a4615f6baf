#include "qhyper/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "qhyper/characters.hpp"
#include "qhyper/contfrac.hpp"
#include "qhyper/detail/parallel.hpp"
#include "qhyper/fourier.hpp"
#include "qhyper/hypergroup.hpp"
#include "qhyper/idempotents.hpp"

namespace qhyper::cli {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// configuration

void RunConfig::validate() const {
  try {
    (void)QParam::parse(q);
  } catch (const std::exception& e) {
    throw ConfigError("invalid q '" + q + "': " + e.what());
  }
  auto nonneg = [](long v, const char* name) {
    if (v < 0) throw ConfigError(std::string(name) + " must be >= 0");
  };
  if (n_max) nonneg(*n_max, "n-max");
  nonneg(k_extra, "k-extra");
  nonneg(series_n, "series-n");
  if (depth < 1) throw ConfigError("depth must be >= 1");
  if (digits < 1 || digits > 50) throw ConfigError("digits must lie in [1, 50]");
  if (threads == 0) throw ConfigError("thread count must be positive");
}

QParam RunConfig::q_param() const { return QParam::parse(q); }

std::size_t RunConfig::n_max_for_command() const {
  if (n_max) return static_cast<std::size_t>(*n_max);
  return command == Command::Fig1 ? 19 : 9;
}

std::optional<Command> parse_command(const std::string& name) {
  if (name == "fig1") return Command::Fig1;
  if (name == "fig2") return Command::Fig2;
  if (name == "fig3") return Command::Fig3;
  if (name == "verify") return Command::Verify;
  if (name == "report") return Command::Report;
  return std::nullopt;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::Fig1: return "fig1";
    case Command::Fig2: return "fig2";
    case Command::Fig3: return "fig3";
    case Command::Verify: return "verify";
    case Command::Report: return "report";
  }
  return "?";
}

namespace {

std::string trim(std::string s) {
  const auto ws = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

long parse_long(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not an integer: '" + value + "'");
  }
  if (used != value.size()) throw ConfigError("config key '" + key + "': not an integer: '" + value + "'");
  return v;
}

}  // namespace

void apply_config_file(RunConfig& config, const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "q") config.q = value;
    else if (key == "n-max") config.n_max = parse_long(key, value);
    else if (key == "k-extra") config.k_extra = parse_long(key, value);
    else if (key == "depth") config.depth = parse_long(key, value);
    else if (key == "series-n") config.series_n = parse_long(key, value);
    else if (key == "digits") config.digits = static_cast<int>(parse_long(key, value));
    else if (key == "out") config.out_dir = value;
    else throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

unsigned threads_from_env() {
  const char* raw = std::getenv("QHYPER_THREADS");
  if (raw == nullptr || *raw == '\0') return 1;
  const std::string s(raw);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("QHYPER_THREADS must be a positive integer, got '" + s + "'");
  }
  if (used != s.size() || v <= 0) throw ConfigError("QHYPER_THREADS must be a positive integer, got '" + s + "'");
  return static_cast<unsigned>(v);
}

// ---------------------------------------------------------------------------
// tables

std::string Table::csv(int digits) const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      const Cell& c = row[i];
      if (!c.value) os << "nan";
      else if (c.integer) os << c.value->numerator().get_str();
      else os << c.value->to_decimal(digits);
    }
    os << '\n';
  }
  return os.str();
}

std::string Table::exact() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << (row[i].value ? row[i].value->str() : "nan");
    }
    os << '\n';
  }
  return os.str();
}

void write_table(const Table& t, const fs::path& dir, const std::string& name, int digits) {
  fs::create_directories(dir);
  auto put = [&](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << text;
  };
  put(dir / (name + ".csv"), t.csv(digits));
  put(dir / (name + ".exact"), t.exact());
}

// ---------------------------------------------------------------------------
// commands

namespace {

struct Check {
  explicit Check(std::string n) : name(std::move(n)) {}
  std::string name;
  bool ok = true;
  std::string detail;
};

struct Fig1 {
  Table table;
  Enclosure C;
  Check check{"norm ratio chain ||a||_2^2 < ||a||_1 < C ||a||_2^2"};
};

Fig1 fig1(const Hypergroup& hg, std::size_t n_max, unsigned threads) {
  Fig1 out;
  out.C = bound_C(hg.q());
  std::vector<Enclosure> l1(n_max + 1);
  detail::parallel_for(n_max + 1, threads, [&](std::size_t n) { l1[n] = l1_norm(hg, n); });
  out.table.header = {"n", "l1_lo", "l1_hi", "l2sq", "ratio_lo", "ratio_hi", "C_lo", "C_hi"};
  for (std::size_t n = 0; n <= n_max; ++n) {
    const Rational l2 = l2_norm_sq(hg.q(), n);
    const Rational r_lo = l1[n].lo() / l2;
    const Rational r_hi = l1[n].hi() / l2;
    out.table.rows.push_back({Table::index(static_cast<long>(n)), Table::number(l1[n].lo()),
                              Table::number(l1[n].hi()), Table::number(l2), Table::number(r_lo),
                              Table::number(r_hi), Table::number(out.C.lo()), Table::number(out.C.hi())});
    if (out.check.ok && !(l2 < l1[n].lo() && r_hi < out.C.hi())) {
      out.check.ok = false;
      out.check.detail = "n=" + std::to_string(n) + ": l2sq=" + l2.to_decimal(12) + " l1=[" +
                         l1[n].lo().to_decimal(12) + ", " + l1[n].hi().to_decimal(12) +
                         "] C_hi=" + out.C.hi().to_decimal(12);
    }
  }
  return out;
}

struct Fig2 {
  Table table;
  DecayReport report;
  Check check{"character decay (nonvanishing, ratio < 4, alternation, decrease, envelope)"};
};

Fig2 fig2(const Hypergroup& hg, std::size_t n_max, std::size_t k_extra, unsigned threads) {
  Fig2 out;
  out.report = verify_decay(hg, n_max, k_extra, threads);
  const long K = static_cast<long>(out.report.K.value);
  out.table.header = {"n", "k", "ratio_abs", "envelope", "sign", "abs_alpha", "K"};
  for (const auto& r : out.report.rows) {
    out.table.rows.push_back(
        {Table::index(static_cast<long>(r.n)), Table::index(static_cast<long>(r.k)),
         r.ratio_abs ? Table::number(*r.ratio_abs) : Table::missing(), Table::number(r.envelope),
         r.sign ? Table::index(*r.sign) : Table::missing(), Table::number(r.alpha.abs()),
         Table::index(K)});
  }
  if (const auto& v = out.report.first_violation) {
    out.check.ok = false;
    out.check.detail = "n=" + std::to_string(v->n) + " k=" + std::to_string(v->k) + ": " + v->what;
  }
  return out;
}

struct Fig3 {
  Table table;
  std::vector<ResidualPoint> points;
  Check check{"idempotent approximation residuals strictly decreasing"};
};

Fig3 fig3(const Hypergroup& hg, std::size_t series_n, unsigned threads) {
  Fig3 out;
  out.points = approx_epsilon_series(hg, 1, series_n, 40, threads);
  out.table.header = {"N", "residual_lo", "residual_hi"};
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    const auto& p = out.points[i];
    out.table.rows.push_back({Table::index(static_cast<long>(p.N)), Table::number(p.residual.lo()),
                              Table::number(p.residual.hi())});
    if (i > 0 && out.check.ok && !(p.residual.hi() < out.points[i - 1].residual.hi())) {
      out.check.ok = false;
      out.check.detail = "N=" + std::to_string(p.N) + ": residual_hi does not decrease";
    }
  }
  return out;
}

std::vector<Check> extra_checks(const Hypergroup& hg, const RunConfig& cfg, unsigned threads) {
  std::vector<Check> checks;
  const std::size_t n_max = cfg.n_max_for_command();
  const std::size_t K = k_threshold(hg.q()).value;
  const std::size_t k_extra = static_cast<std::size_t>(cfg.k_extra);

  {
    Check c{"coefficient bounds A_n(n+k) > 4, B_n(k) > 1/(2q)"};
    const CoefficientBoundReport r = verify_coefficient_bounds(hg, n_max, K + k_extra + 3, threads);
    if (const auto& v = r.first_violation) {
      c.ok = false;
      c.detail = "n=" + std::to_string(v->n) + " k=" + std::to_string(v->k) + ": " + v->what;
    }
    checks.push_back(std::move(c));
  }
  {
    Check c{"continued fraction psi encloses the character ratio"};
    const PsiIdentityReport r =
        psi_identity_check(hg, n_max, k_extra + 1, static_cast<std::size_t>(cfg.depth), threads);
    for (const auto& row : r.rows) {
      if (!(row.contained && row.in_disk && row.bounded && row.psi.disk_certified)) {
        c.ok = false;
        c.detail = "n=" + std::to_string(row.n) + " k=" + std::to_string(row.k) +
                   ": phi=" + row.phi.to_decimal(15);
        break;
      }
    }
    checks.push_back(std::move(c));
  }
  {
    Check c{"linearization coefficients nonnegative"};
    if (const auto v = check_property_P(hg.linearization(), 3 * n_max + 3)) {
      c.ok = false;
      c.detail = "g(" + std::to_string(v->m) + "," + std::to_string(v->n) + ";" + std::to_string(v->k) +
                 ") = " + v->value.str();
    }
    checks.push_back(std::move(c));
  }
  {
    Check c{"idempotent Fourier transforms are point indicators"};
    const std::size_t top = std::min<std::size_t>(n_max, 6);
    std::vector<std::string> failures(top + 1);
    detail::parallel_for(top + 1, threads, [&](std::size_t n) {
      const IdempotentApprox e = idempotent(hg, n);
      for (std::size_t m = 0; m <= top; ++m) {
        const Enclosure v = fourier_enclosure(hg, e, SpectrumPoint::at(m));
        if (!v.contains(Rational(m == n ? 1 : 0)) || !(v.width() < Rational(1, 10000000000L))) {
          failures[n] = "n=" + std::to_string(n) + " m=" + std::to_string(m);
          return;
        }
      }
    });
    for (const auto& f : failures) {
      if (!f.empty()) {
        c.ok = false;
        c.detail = f;
        break;
      }
    }
    checks.push_back(std::move(c));
  }
  {
    Check c{"finite q-Pochhammer identities for P_n(1-q^n)"};
    const QParam& q = hg.q();
    for (std::size_t n = 0; n <= 12 && c.ok; ++n) {
      bool ok = finite_identity_product_sum(q, n) && finite_identity_gamma_sum(q, n);
      for (std::size_t k = 0; k <= n; ++k) ok = ok && finite_identity_pochhammer(q, n, k);
      if (!ok) {
        c.ok = false;
        c.detail = "n=" + std::to_string(n);
      }
    }
    checks.push_back(std::move(c));
  }
  return checks;
}

int summarize(const std::vector<Check>& checks, std::ostream& out, std::ostream& err) {
  int status = 0;
  for (const auto& c : checks) {
    out << (c.ok ? "PASS  " : "FAIL  ") << c.name << '\n';
    if (!c.ok) {
      err << "witness (" << c.name << "): " << c.detail << '\n';
      status = 1;
    }
  }
  return status;
}

nlohmann::json enclosure_json(const Enclosure& e, int digits) {
  return {{"lo", e.lo().to_decimal(digits)},
          {"hi", e.hi().to_decimal(digits)},
          {"lo_exact", e.lo().str()},
          {"hi_exact", e.hi().str()}};
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  const Hypergroup hg = Hypergroup::little_q_legendre(cfg.q_param());
  const std::size_t n_max = cfg.n_max_for_command();
  const auto k_extra = static_cast<std::size_t>(cfg.k_extra);
  const auto series_n = static_cast<std::size_t>(cfg.series_n);
  const unsigned threads = cfg.threads;

  switch (cfg.command) {
    case Command::Fig1: {
      const Fig1 f = fig1(hg, n_max, threads);
      write_table(f.table, cfg.out_dir, "fig1", cfg.digits);
      return summarize({f.check}, out, err);
    }
    case Command::Fig2: {
      const Fig2 f = fig2(hg, n_max, k_extra, threads);
      write_table(f.table, cfg.out_dir, "fig2", cfg.digits);
      return summarize({f.check}, out, err);
    }
    case Command::Fig3: {
      const Fig3 f = fig3(hg, series_n, threads);
      write_table(f.table, cfg.out_dir, "fig3", cfg.digits);
      return summarize({f.check}, out, err);
    }
    case Command::Verify:
    case Command::Report: {
      RunConfig fig1_cfg = cfg;
      fig1_cfg.command = Command::Fig1;
      const Fig1 f1 = fig1(hg, fig1_cfg.n_max_for_command(), threads);
      const Fig2 f2 = fig2(hg, n_max, k_extra, threads);
      const Fig3 f3 = fig3(hg, series_n, threads);
      std::vector<Check> checks{f1.check, f2.check, f3.check};
      for (auto& c : extra_checks(hg, cfg, threads)) checks.push_back(std::move(c));
      const int status = summarize(checks, out, err);
      if (cfg.command == Command::Verify) return status;

      write_table(f1.table, cfg.out_dir, "fig1", cfg.digits);
      write_table(f2.table, cfg.out_dir, "fig2", cfg.digits);
      write_table(f3.table, cfg.out_dir, "fig3", cfg.digits);
      nlohmann::json j;
      j["q"] = cfg.q_param().value().str();
      j["K"] = k_threshold(hg.q()).value;
      j["C"] = enclosure_json(f1.C, cfg.digits);
      j["decay_checks"] = f2.report.checks;
      auto& zeros = j["zeros_below_K"] = nlohmann::json::array();
      for (const auto& [n, k] : f2.report.zeros_below_K) zeros.push_back({{"n", n}, {"k", k}});
      const QLimitResult ql = qlimit_identity(hg.q(), 30);
      j["limit"] = {{"rule", ql.rule == TailRule::Leibniz ? "leibniz" : "absolute_tail"},
                    {"rhs", enclosure_json(ql.rhs, cfg.digits)},
                    {"P_30(1-q^30)", ql.lhs.back().to_decimal(cfg.digits)},
                    {"drift_upper", (Enclosure::point(ql.lhs.back()) - ql.rhs).magnitude().to_decimal(cfg.digits)}};
      auto& arr = j["checks"] = nlohmann::json::array();
      for (const auto& c : checks) arr.push_back({{"name", c.name}, {"pass", c.ok}, {"witness", c.detail}});
      j["pass"] = status == 0;
      std::ofstream f(cfg.out_dir / "report.json", std::ios::binary);
      if (!f) throw std::runtime_error("cannot write report.json");
      f << j.dump(2) << '\n';
      return status;
    }
  }
  return 2;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic analysis of little q-Legendre hypergroups"};
  app.require_subcommand(1);

  std::string q, out_dir, config_path;
  long n_max = 0, k_extra = 0, depth = 0, series_n = 0;
  int digits = 0;
  auto* o_q = app.add_option("--q", q, "deformation parameter p/r with 0 < p < r");
  auto* o_n = app.add_option("--n-max", n_max, "largest spectral index n");
  auto* o_k = app.add_option("--k-extra", k_extra, "decay window beyond K");
  auto* o_d = app.add_option("--depth", depth, "continued fraction depth");
  auto* o_s = app.add_option("--series-n", series_n, "last N of the idempotent series");
  auto* o_g = app.add_option("--digits", digits, "decimals in CSV output");
  auto* o_o = app.add_option("--out", out_dir, "output directory");
  app.add_option("--config", config_path, "key=value config file");
  const std::pair<const char*, const char*> subcommands[] = {
      {"fig1", "l1 norms of characters against the l2 norm and the constant C"},
      {"fig2", "decay ratios, envelopes and signs of the characters"},
      {"fig3", "residuals of the idempotent approximation of epsilon_1"},
      {"verify", "run every certified check, print PASS/FAIL"},
      {"report", "figure data plus report.json"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  RunConfig cfg;
  try {
    cfg.command = *parse_command(app.get_subcommands().front()->get_name());
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (o_q->count()) cfg.q = q;
    if (o_n->count()) cfg.n_max = n_max;
    if (o_k->count()) cfg.k_extra = k_extra;
    if (o_d->count()) cfg.depth = depth;
    if (o_s->count()) cfg.series_n = series_n;
    if (o_g->count()) cfg.digits = digits;
    if (o_o->count()) cfg.out_dir = out_dir;
    cfg.threads = threads_from_env();
    cfg.validate();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    return run(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qhyper::cli
